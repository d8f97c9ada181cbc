//! Decomposing a finitely generated graded `F2[tau]`-module into cyclic pieces.
//!
//! The module is presented one weight at a time as a subquotient `Z_w / B_w`
//! of a fixed ambient space, with `tau` acting as the map `Z_w/B_w ->
//! Z_(w-1)/B_(w-1)` induced by the inclusions `Z_w ⊆ Z_(w-1)`,
//! `B_w ⊆ B_(w-1)`. Weight decreases along `tau`. Below the window the module
//! is taken to be constant, so pieces reaching the bottom are free.

use crate::f2::Subspace;

/// A cyclic summand: generated in weight `top`, killed by `tau^length`, or
/// free when `length` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub top: i32,
    pub length: Option<u32>,
}

/// Cycles and boundaries in one weight.
#[derive(Debug, Clone)]
pub struct Slice {
    pub weight: i32,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

impl Slice {
    pub fn dim(&self) -> usize {
        self.cycles.dim() - self.boundaries.dim()
    }
}

fn sum_dim(a: &Subspace, b: &Subspace) -> usize {
    let mut s = b.clone();
    s.extend(a.basis());
    s.dim()
}

/// `rank(tau^j : M_w -> M_(w-j))` given the two slices.
pub fn tau_power_rank(from: &Slice, to: &Slice) -> usize {
    sum_dim(&from.cycles, &to.boundaries) - to.boundaries.dim()
}

/// The module described by consecutive weights, highest first.
#[derive(Debug, Clone)]
pub struct TauModule {
    slices: Vec<Slice>,
}

impl TauModule {
    /// `slices` must be consecutive in weight, in decreasing order.
    pub fn new(slices: Vec<Slice>) -> Self {
        for pair in slices.windows(2) {
            assert_eq!(pair[0].weight, pair[1].weight + 1, "slices must be consecutive");
        }
        TauModule { slices }
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn dim(&self, w: i32) -> usize {
        match self.position(w) {
            Some(i) => self.slices[i].dim(),
            None if self.slices.last().is_some_and(|s| w < s.weight) => self.slices.last().unwrap().dim(),
            None => 0,
        }
    }

    fn position(&self, w: i32) -> Option<usize> {
        let top = self.slices.first()?.weight;
        let i = top - w;
        (i >= 0 && (i as usize) < self.slices.len()).then_some(i as usize)
    }

    /// `rank(tau^j : M_w -> M_(w-j))`, zero above the window.
    pub fn rank(&self, w: i32, j: u32) -> usize {
        let Some(bottom) = self.slices.last().map(|s| s.weight) else {
            return 0;
        };
        if w < bottom {
            return self.dim(bottom);
        }
        let Some(a) = self.position(w) else {
            return 0;
        };
        if j == 0 {
            return self.slices[a].dim();
        }
        let b = self.position((w - j as i32).max(bottom)).unwrap();
        tau_power_rank(&self.slices[a], &self.slices[b])
    }

    /// Cyclic summands, sorted.
    pub fn summands(&self) -> Vec<Summand> {
        let Some(bottom) = self.slices.last().map(|s| s.weight) else {
            return Vec::new();
        };
        let top = self.slices[0].weight;
        let r = |w: i32, j: i32| -> i64 {
            if w > top || j < 0 {
                return 0;
            }
            self.rank(w, j as u32) as i64
        };
        let mut out = Vec::new();
        for w in (bottom..=top).rev() {
            let span = w - bottom;
            // N(w, >= L) = r_(L-1)(w) - r_L(w+1): summands generated at w reaching w-L+1
            let at_least = |len: i32| r(w, len - 1) - r(w + 1, len);
            for len in 1..=span {
                let exact = at_least(len) - at_least(len + 1);
                for _ in 0..exact {
                    out.push(Summand {
                        top: w,
                        length: Some(len as u32),
                    });
                }
            }
            for _ in 0..at_least(span + 1) {
                out.push(Summand { top: w, length: None });
            }
        }
        out.sort();
        out
    }
}
