use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{AlgebraKind, BiDegree};
use crate::f2::{F2Matrix, F2Vector, Subspace};

use super::ground::GroundAlgebra;
use super::ResolutionError;

/// `d(h) = Σ m^ g`: pairs (target generator, ground basis monomial), sorted.
pub type ModuleElement = Vec<(usize, usize)>;

/// The `F2`-basis of a free module in one degree: pairs `(generator, monomial)`.
struct SliceBasis {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl SliceBasis {
    fn new(ground: &GroundAlgebra, gens: &[BiDegree], d: BiDegree) -> Self {
        let mut pairs = Vec::new();
        for (g, gd) in gens.iter().enumerate() {
            if gd.stem > d.stem || gd.weight > d.weight {
                continue;
            }
            for &m in ground.in_stem(d.stem - gd.stem) {
                if ground.degree(m).weight + gd.weight <= d.weight {
                    pairs.push((g, m));
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        SliceBasis { pairs, index }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    /// `m^ · x` as a vector over this basis.
    fn act(&self, ground: &GroundAlgebra, m: usize, x: &ModuleElement) -> F2Vector {
        let mut v = F2Vector::zeros(self.len());
        for &(g, n) in x {
            for &p in ground.product(m, n) {
                v.flip(self.index[&(g, p)]);
            }
        }
        v
    }

    fn element(&self, v: &F2Vector) -> ModuleElement {
        let mut out: ModuleElement = v.ones().map(|i| self.pairs[i]).collect();
        out.sort();
        out
    }
}

/// Bookkeeping for one degree of one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRecord {
    pub f: u32,
    pub degree: BiDegree,
    pub kernel: usize,
    pub old_image: usize,
    pub new_generators: usize,
}

/// A minimal free resolution `F_0 <- F_1 <- ...` of `F2[tau]` over the dual
/// of a finite quotient, through internal stem `stem_max`.
///
/// Generators are listed in the order they were created: by internal stem,
/// then weight. Degrees are cohomological `(t, w)`, with `tau` raising
/// weight.
#[derive(Debug, Clone)]
pub struct Resolution {
    ground: Arc<GroundAlgebra>,
    stem_max: i32,
    f_max: u32,
    generators: Vec<Vec<BiDegree>>,
    /// `differentials[f][h]` for generators `h` of `F_f`; empty for `f = 0`.
    differentials: Vec<Vec<ModuleElement>>,
    records: Vec<StepRecord>,
}

impl Resolution {
    /// An empty resolution containing only `F_0`; call [`Resolution::step`]
    /// or [`Resolution::run`] to extend it.
    pub fn new(kind: AlgebraKind, stem_max: i32, f_max: u32) -> Result<Self, ResolutionError> {
        let ground = Arc::new(GroundAlgebra::new(kind)?);
        Ok(Self::with_ground(ground, stem_max, f_max))
    }

    pub(crate) fn with_ground(ground: Arc<GroundAlgebra>, stem_max: i32, f_max: u32) -> Self {
        Resolution {
            ground,
            stem_max,
            f_max,
            generators: vec![vec![BiDegree::ZERO]],
            differentials: vec![Vec::new()],
            records: Vec::new(),
        }
    }

    pub(crate) fn from_parts(
        ground: Arc<GroundAlgebra>,
        stem_max: i32,
        f_max: u32,
        generators: Vec<Vec<BiDegree>>,
        differentials: Vec<Vec<ModuleElement>>,
    ) -> Self {
        Resolution {
            ground,
            stem_max,
            f_max,
            generators,
            differentials,
            records: Vec::new(),
        }
    }

    pub fn ground(&self) -> &GroundAlgebra {
        &self.ground
    }

    pub fn kind(&self) -> AlgebraKind {
        self.ground.kind()
    }

    pub fn stem_max(&self) -> i32 {
        self.stem_max
    }

    pub fn f_max(&self) -> u32 {
        self.f_max
    }

    /// Number of maps `d_1 .. d_k` built so far.
    pub fn maps_built(&self) -> u32 {
        self.generators.len() as u32 - 1
    }

    /// Ext through `f_max` needs `F_(f_max + 1)`.
    pub fn is_complete(&self) -> bool {
        self.maps_built() > self.f_max
    }

    pub fn generators(&self, f: u32) -> &[BiDegree] {
        self.generators.get(f as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn differential(&self, f: u32, h: usize) -> &ModuleElement {
        &self.differentials[f as usize][h]
    }

    pub fn records(&self) -> &[StepRecord] {
        &self.records
    }

    fn degrees(&self) -> Vec<BiDegree> {
        (0..=self.stem_max)
            .flat_map(|t| (0..=t / 2).map(move |w| BiDegree::new(t, w)))
            .collect()
    }

    /// `ker(d_f)` in degree `d`, as vectors over the basis of `F_f`.
    fn kernel(&self, f: usize, d: BiDegree) -> (SliceBasis, Vec<F2Vector>) {
        let ground = &*self.ground;
        let source = SliceBasis::new(ground, &self.generators[f], d);
        if f == 0 {
            // the augmentation kills exactly the positive stems
            let kernel = if d.stem > 0 {
                (0..source.len()).map(|i| F2Vector::unit(source.len(), i)).collect()
            } else {
                Vec::new()
            };
            return (source, kernel);
        }
        let target = SliceBasis::new(ground, &self.generators[f - 1], d);
        let mut m = F2Matrix::zeros(target.len(), source.len());
        for (j, &(h, mono)) in source.pairs.iter().enumerate() {
            let image = target.act(ground, mono, &self.differentials[f][h]);
            for i in image.ones() {
                m.set(i, j, true);
            }
        }
        let kernel = m.kernel_basis();
        (source, kernel)
    }

    /// Builds `F_(k+1)` and `d_(k+1)` where `k` is the number of maps so far.
    pub fn step(&mut self) {
        let f = self.maps_built() as usize;
        let degrees = self.degrees();
        let kernels: Vec<(SliceBasis, Vec<F2Vector>)> = degrees.par_iter().map(|&d| self.kernel(f, d)).collect();
        let ground = Arc::clone(&self.ground);
        let mut new_gens: Vec<BiDegree> = Vec::new();
        let mut new_diffs: Vec<ModuleElement> = Vec::new();
        for (d, (basis, kernel)) in degrees.into_iter().zip(kernels) {
            let mut image = Subspace::new(basis.len());
            for (h, hd) in new_gens.iter().enumerate() {
                if hd.stem > d.stem || hd.weight > d.weight {
                    continue;
                }
                for &m in ground.in_stem(d.stem - hd.stem) {
                    if ground.degree(m).weight + hd.weight <= d.weight {
                        image.add(&basis.act(&ground, m, &new_diffs[h]));
                    }
                }
            }
            let old_image = image.dim();
            let mut added = 0;
            for v in &kernel {
                if image.add(v) {
                    new_gens.push(d);
                    new_diffs.push(basis.element(v));
                    added += 1;
                }
            }
            self.records.push(StepRecord {
                f: f as u32,
                degree: d,
                kernel: kernel.len(),
                old_image,
                new_generators: added,
            });
        }
        self.generators.push(new_gens);
        self.differentials.push(new_diffs);
    }

    /// Steps until complete, calling `after_step` after each new map.
    pub fn run<E>(&mut self, mut after_step: impl FnMut(&Resolution) -> Result<(), E>) -> Result<(), E> {
        while !self.is_complete() {
            self.step();
            after_step(self)?;
        }
        Ok(())
    }

    /// No differential entry is a unit: every coefficient of `d(h)` on a
    /// generator of the same degree would be `1 · g`.
    pub fn is_minimal(&self) -> bool {
        let unit = self.ground.unit();
        (1..self.generators.len()).all(|f| {
            self.differentials[f].iter().zip(&self.generators[f]).all(|(dh, hd)| {
                dh.iter()
                    .all(|&(g, m)| !(m == unit && self.generators[f - 1][g] == *hd))
            })
        })
    }

    /// Recomputes, in every degree, that `d_f ∘ d_(f+1) = 0` and that the
    /// image of `d_(f+1)` is all of `ker d_f`.
    pub fn check_exactness(&self) -> Vec<(u32, BiDegree)> {
        let ground = &*self.ground;
        let mut failures = Vec::new();
        for f in 0..self.maps_built() as usize {
            for d in self.degrees() {
                let (basis, kernel) = self.kernel(f, d);
                let mut kernel_space = Subspace::new(basis.len());
                kernel_space.extend(&kernel);
                let mut image = Subspace::new(basis.len());
                for (h, hd) in self.generators[f + 1].iter().enumerate() {
                    if hd.stem > d.stem || hd.weight > d.weight {
                        continue;
                    }
                    for &m in ground.in_stem(d.stem - hd.stem) {
                        if ground.degree(m).weight + hd.weight <= d.weight {
                            image.add(&basis.act(ground, m, &self.differentials[f + 1][h]));
                        }
                    }
                }
                let inside = image.basis().iter().all(|v| kernel_space.contains(v));
                if !inside || image.dim() != kernel_space.dim() {
                    failures.push((f as u32, d));
                }
            }
        }
        failures
    }
}

/// Builds the resolution through `F_(f_max + 1)`.
pub fn minimal_resolution(kind: AlgebraKind, stem_max: i32, f_max: u32) -> Result<Resolution, ResolutionError> {
    let mut r = Resolution::new(kind, stem_max, f_max)?;
    r.run::<std::convert::Infallible>(|_| Ok(())).unwrap();
    Ok(r)
}
