//! Ext from the reduced cobar complex, as an independent check on the
//! resolution.
//!
//! `C^f` is free over `F2[tau]` on tuples `[a_1 | ... | a_f]` of tau-free
//! positive-stem basis monomials, with
//! `d[a_1|...|a_f] = Σ_i [a_1|...|Δ'(a_i)|...|a_f]` for the reduced coproduct
//! `Δ'`. A tuple of total weight `W` contributes `tau^(W - w)` to the slice
//! of weight `w <= W`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::{make_algebra, AlgebraKind, TriDegree};
use crate::f2::{F2Vector, Subspace};
use crate::hopf::Coalgebra;

use super::ResolutionError;

/// Largest number of tuples allowed in one `(t, f)` block.
pub const DEFAULT_COBAR_CAP: usize = 250_000;

type Tuple = Vec<u8>;

struct Cobar {
    stems: Vec<i32>,
    weights: Vec<i32>,
    /// Reduced coproduct terms `(left, right)` of each positive monomial.
    reduced: Vec<Vec<(u8, u8)>>,
    /// `tuples[f][t]`.
    tuples: Vec<Vec<Vec<Tuple>>>,
    lookup: Vec<Vec<HashMap<Tuple, usize>>>,
}

impl Cobar {
    fn new(kind: AlgebraKind, stem_max: i32, f_top: u32, cap: usize) -> Result<Self, ResolutionError> {
        if !kind.is_finite() {
            return Err(ResolutionError::Unsupported(kind.to_string()));
        }
        let p = make_algebra(kind, 0);
        let coalgebra = Coalgebra::new(&p).map_err(|_| ResolutionError::Unsupported(kind.to_string()))?;
        let mut positive = Vec::new();
        for s in 1..=stem_max.max(0) {
            positive.extend(p.tau_free_basis_in_stem(s)?);
        }
        let index: HashMap<_, u8> = positive
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), u8::try_from(i).expect("at most 255 basis monomials")))
            .collect();
        let stems: Vec<i32> = positive.iter().map(|m| p.degree(m).stem).collect();
        let weights: Vec<i32> = positive.iter().map(|m| p.degree(m).weight).collect();
        let reduced = positive
            .iter()
            .map(|m| {
                coalgebra
                    .monomial_coproduct(m)
                    .iter()
                    .filter(|(l, r)| !l.tau_free().is_one() && !r.is_one())
                    .map(|(l, r)| (index[&l.tau_free()], index[r]))
                    .collect()
            })
            .collect();

        let width = stem_max.max(0) as usize + 1;
        let mut counts = vec![vec![0usize; width]; f_top as usize + 1];
        counts[0][0] = 1;
        for f in 1..=f_top as usize {
            for t in 0..width {
                let mut n = 0usize;
                for &s in &stems {
                    if s as usize <= t {
                        n = n.saturating_add(counts[f - 1][t - s as usize]);
                    }
                }
                if n > cap {
                    return Err(ResolutionError::CobarTooLarge {
                        stem: t as i32,
                        f: f as u32,
                        size: n,
                        cap,
                    });
                }
                counts[f][t] = n;
            }
        }

        let mut tuples: Vec<Vec<Vec<Tuple>>> = vec![vec![Vec::new(); width]; f_top as usize + 1];
        tuples[0][0].push(Vec::new());
        for f in 1..=f_top as usize {
            for t in 0..width {
                let mut here = Vec::with_capacity(counts[f][t]);
                for (a, &s) in stems.iter().enumerate() {
                    if s as usize > t {
                        continue;
                    }
                    for prefix in &tuples[f - 1][t - s as usize] {
                        let mut x = prefix.clone();
                        x.push(a as u8);
                        here.push(x);
                    }
                }
                here.sort();
                tuples[f][t] = here;
            }
        }
        let lookup = tuples
            .iter()
            .map(|row| {
                row.iter()
                    .map(|ts| ts.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
                    .collect()
            })
            .collect();
        Ok(Cobar {
            stems,
            weights,
            reduced,
            tuples,
            lookup,
        })
    }

    fn weight(&self, x: &Tuple) -> i32 {
        x.iter().map(|&a| self.weights[a as usize]).sum()
    }

    fn differential(&self, f: usize, t: usize, x: &Tuple) -> F2Vector {
        let target = &self.lookup[f + 1][t];
        let mut v = F2Vector::zeros(target.len());
        for (i, &a) in x.iter().enumerate() {
            for &(l, r) in &self.reduced[a as usize] {
                let mut y = Vec::with_capacity(x.len() + 1);
                y.extend_from_slice(&x[..i]);
                y.push(l);
                y.push(r);
                y.extend_from_slice(&x[i + 1..]);
                v.flip(target[&y]);
            }
        }
        v
    }

    /// `rank(d_f)` on the slice of each weight `0..=t/2`.
    fn ranks(&self, f: usize, t: usize) -> Vec<usize> {
        let top = t as i32 / 2;
        let mut out = vec![0; top as usize + 1];
        let Some(source) = self.tuples.get(f).map(|r| &r[t]) else {
            return out;
        };
        if f + 1 >= self.tuples.len() {
            return out;
        }
        let mut order: Vec<(i32, usize)> = source.iter().enumerate().map(|(i, x)| (self.weight(x), i)).collect();
        order.sort_by(|a, b| b.cmp(a));
        let mut image = Subspace::new(self.lookup[f + 1][t].len());
        let mut next = 0;
        for w in (0..=top).rev() {
            while next < order.len() && order[next].0 >= w {
                image.add(&self.differential(f, t, &source[order[next].1]));
                next += 1;
            }
            out[w as usize] = image.dim();
        }
        out
    }

    fn check_square_zero(&self, f: usize, t: usize) -> bool {
        if f + 2 >= self.tuples.len() {
            return true;
        }
        self.tuples[f][t].iter().all(|x| {
            let dx = self.differential(f, t, x);
            let mut total = F2Vector::zeros(self.lookup[f + 2][t].len());
            for j in dx.ones() {
                total.add_assign(&self.differential(f + 1, t, &self.tuples[f + 1][t][j]));
            }
            total.is_zero()
        })
    }
}

/// `F2`-dimensions of Ext for `t <= stem_max`, `f <= f_max`, weights
/// `0..=t/2`, keyed by `(t - f, f, w)`. Zero entries are omitted.
pub fn cobar_ext(
    kind: AlgebraKind,
    stem_max: i32,
    f_max: u32,
    cap: usize,
) -> Result<BTreeMap<TriDegree, usize>, ResolutionError> {
    let cobar = Cobar::new(kind, stem_max, f_max + 1, cap)?;
    let blocks: Vec<(usize, usize)> = (0..=f_max as usize + 1)
        .flat_map(|f| (0..=stem_max.max(0) as usize).map(move |t| (f, t)))
        .collect();
    let ranks: HashMap<(usize, usize), Vec<usize>> =
        blocks.par_iter().map(|&(f, t)| ((f, t), cobar.ranks(f, t))).collect();
    let mut out = BTreeMap::new();
    for f in 0..=f_max as usize {
        for t in 0..=stem_max.max(0) as usize {
            let tuples = &cobar.tuples[f][t];
            if tuples.is_empty() {
                continue;
            }
            for w in 0..=(t as i32 / 2) {
                let cochains = tuples.iter().filter(|x| cobar.weight(x) >= w).count();
                let kernel = cochains - ranks[&(f, t)][w as usize];
                let boundaries = if f > 0 { ranks[&(f - 1, t)][w as usize] } else { 0 };
                let dim = kernel - boundaries;
                if dim > 0 {
                    out.insert(TriDegree::new(t as i32 - f as i32, f as u32, w), dim);
                }
            }
        }
    }
    Ok(out)
}

/// Checks `d ∘ d = 0` on every block in range.
pub fn cobar_square_zero(kind: AlgebraKind, stem_max: i32, f_max: u32) -> Result<bool, ResolutionError> {
    let cobar = Cobar::new(kind, stem_max, f_max + 2, DEFAULT_COBAR_CAP)?;
    let _ = &cobar.stems;
    Ok((0..=f_max as usize).all(|f| (0..=stem_max.max(0) as usize).all(|t| cobar.check_square_zero(f, t))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e0_tower() {
        let ext = cobar_ext(AlgebraKind::E(0), 6, 6, DEFAULT_COBAR_CAP).unwrap();
        let expected: BTreeMap<TriDegree, usize> = (0..=6).map(|f| (TriDegree::new(0, f, 0), 1)).collect();
        assert_eq!(ext, expected);
    }

    #[test]
    fn bottom_row_is_the_unit() {
        let ext = cobar_ext(AlgebraKind::A(1), 8, 2, DEFAULT_COBAR_CAP).unwrap();
        assert!(ext.keys().filter(|d| d.filtration == 0).eq([&TriDegree::new(0, 0, 0)]));
        assert!(ext[&TriDegree::new(0, 1, 0)] >= 1);
    }

    #[test]
    fn differential_squares_to_zero() {
        for kind in [AlgebraKind::A(1), AlgebraKind::E(2), AlgebraKind::G] {
            assert!(cobar_square_zero(kind, 10, 3).unwrap(), "{kind}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            cobar_ext(AlgebraKind::A(2), 20, 12, 1000),
            Err(ResolutionError::CobarTooLarge { .. })
        ));
    }
}
