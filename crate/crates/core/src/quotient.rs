//! Quotient modules `A//B` and the cofiber ladders that climb from `A//E(2)`
//! to `A//A(2)` (and from `A` to `A//A(1)`).
//!
//! Everything here is a statement about tau-free rank tables: `A//B` is free
//! over `F2[tau]`, with ranks obtained by dividing the Poincaré series of `A`
//! by that of `B`. A cofiber sequence `Σ^d A//B'' -> A//B' -> A//B''` shows up
//! as `rank(A//B') = (1 + x^d) rank(A//B'')`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{make_algebra, AlgebraError, AlgebraKind, BiDegree, Monomial, Presentation, RankTable};
use crate::dual::{DualError, NamedGenerator};
use crate::f2::F2Matrix;
use crate::hopf::Coalgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error("{0} is not a finite quotient Hopf algebra")]
    Unsupported(String),
    #[error("Poincaré division leaves rank {value} at {degree}; A is not free over {sub} in range")]
    NegativeRank { sub: String, degree: BiDegree, value: i64 },
    #[error("unknown ladder step `{0}`")]
    UnknownStep(String),
}

/// `A//B` as a tau-free rank table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientModule {
    pub sub: AlgebraKind,
    pub ranks: RankTable,
}

impl QuotientModule {
    pub fn name(&self) -> String {
        quotient_name(self.sub)
    }

    pub fn rank(&self, d: BiDegree) -> u64 {
        self.ranks.get(d)
    }

    /// F2-dimension in cohomological degree `d` (tau raises weight).
    pub fn dim(&self, d: BiDegree) -> u64 {
        self.ranks.cohomological_dim(d)
    }
}

fn quotient_name(sub: AlgebraKind) -> String {
    match sub {
        AlgebraKind::Steenrod => "A//A".to_string(),
        AlgebraKind::Unit => "A".to_string(),
        k => format!("A//{k}"),
    }
}

fn supported(kind: AlgebraKind) -> bool {
    kind == AlgebraKind::Steenrod || (kind.is_finite())
}

/// Poincaré series product, truncated at `stem_max`.
pub fn series_product(a: &RankTable, b: &RankTable, stem_max: i32) -> RankTable {
    let mut out = RankTable::new(stem_max);
    for (da, ra) in a.iter() {
        for (db, rb) in b.iter() {
            let d = da + db;
            if d.stem <= stem_max {
                out.increment(d, ra * rb);
            }
        }
    }
    out
}

/// `a * (1 + x^shift)`.
pub fn with_cell(a: &RankTable, shift: BiDegree, stem_max: i32) -> RankTable {
    let mut cell = RankTable::new(stem_max);
    cell.increment(BiDegree::ZERO, 1);
    cell.increment(shift, 1);
    series_product(a, &cell, stem_max)
}

/// Exact division `a / b`, where `b` has constant term 1. Fails on a
/// negative coefficient.
pub fn series_divide(a: &RankTable, b: &RankTable, stem_max: i32, sub: &str) -> Result<RankTable, QuotientError> {
    assert_eq!(b.get(BiDegree::ZERO), 1, "divisor must have constant term 1");
    let mut q: HashMap<BiDegree, i64> = HashMap::new();
    let mut out = RankTable::new(stem_max);
    let weight_lo = |s: i32| -> i32 { a.weight_range(s).map_or(0, |r| r.0).min(0) };
    for s in 0..=stem_max {
        // a's weights bound the quotient's from above; b has nonnegative weights
        let (lo, hi) = (weight_lo(s) - s, s);
        for w in lo..=hi {
            let d = BiDegree::new(s, w);
            let mut v = a.get(d) as i64;
            for (db, rb) in b.iter() {
                if db == BiDegree::ZERO || db.stem > s {
                    continue;
                }
                if let Some(x) = q.get(&(d - db)) {
                    v -= rb as i64 * x;
                }
            }
            if v < 0 {
                return Err(QuotientError::NegativeRank {
                    sub: sub.to_string(),
                    degree: d,
                    value: v,
                });
            }
            if v > 0 {
                q.insert(d, v);
                out.increment(d, v as u64);
            }
        }
    }
    Ok(out)
}

/// `A//B` through `stem_max`.
pub fn quotient_dims(sub: AlgebraKind, stem_max: i32) -> Result<QuotientModule, QuotientError> {
    if !supported(sub) {
        return Err(QuotientError::Unsupported(sub.to_string()));
    }
    let a = make_algebra(AlgebraKind::Steenrod, stem_max.max(1)).poincare(stem_max)?;
    let b = if sub == AlgebraKind::Steenrod {
        a.clone()
    } else {
        make_algebra(sub, 0).poincare(stem_max)?
    };
    let ranks = series_divide(&a, &b, stem_max, &sub.to_string())?;
    Ok(QuotientModule { sub, ranks })
}

/// Classical degree `n` of a cell in an even-cell complex, moved to its
/// motivic bidegree: `2k -> (2k, k)`, `2k+1 -> (2k+1, k)`.
pub fn motivic_shift(n: i32) -> BiDegree {
    BiDegree::new(n, n.div_euclid(2))
}

/// One cofiber sequence `Σ^shift A//target -> A//source -> A//target`, whose
/// first map sends the bottom cell to `operator * 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderStep {
    pub source: AlgebraKind,
    pub target: AlgebraKind,
    pub shift: BiDegree,
    pub operator: NamedGenerator,
}

impl LadderStep {
    pub fn name(&self) -> String {
        format!("{}-{}", self.source.tag(), self.target.tag())
    }
}

impl fmt::Display for LadderStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} shift {} via {}",
            quotient_name(self.source),
            quotient_name(self.target),
            self.shift,
            self.operator
        )
    }
}

/// The three steps from `A//E(2)` to `A//A(2)`.
pub fn tmf_steps() -> [LadderStep; 3] {
    [
        LadderStep {
            source: AlgebraKind::E(2),
            target: AlgebraKind::F,
            shift: BiDegree::new(6, 3),
            operator: NamedGenerator::P { j: 2, i: 1 },
        },
        LadderStep {
            source: AlgebraKind::F,
            target: AlgebraKind::G,
            shift: BiDegree::new(2, 1),
            operator: NamedGenerator::Sq(1),
        },
        LadderStep {
            source: AlgebraKind::G,
            target: AlgebraKind::A(2),
            shift: BiDegree::new(4, 2),
            operator: NamedGenerator::Sq(2),
        },
    ]
}

/// `A -> A//E(0) -> A//E(1) -> A//A(1)`.
pub fn ko_steps() -> [LadderStep; 3] {
    [
        LadderStep {
            source: AlgebraKind::Unit,
            target: AlgebraKind::E(0),
            shift: BiDegree::new(1, 0),
            operator: NamedGenerator::Q(0),
        },
        LadderStep {
            source: AlgebraKind::E(0),
            target: AlgebraKind::E(1),
            shift: BiDegree::new(3, 1),
            operator: NamedGenerator::Q(1),
        },
        LadderStep {
            source: AlgebraKind::E(1),
            target: AlgebraKind::A(1),
            shift: BiDegree::new(2, 1),
            operator: NamedGenerator::Sq(1),
        },
    ]
}

/// Looks a step up by `source-target` tag, e.g. `E2-F`, `G-A2`, `E1-A1`.
pub fn step_by_name(name: &str) -> Result<LadderStep, QuotientError> {
    tmf_steps()
        .into_iter()
        .chain(ko_steps())
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| QuotientError::UnknownStep(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRow {
    pub degree: BiDegree,
    pub lhs: u64,
    pub rhs: u64,
}

impl LadderRow {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct LadderReport {
    pub step: LadderStep,
    pub stem_max: i32,
    pub rows: Vec<LadderRow>,
    /// Whether `operator * 1` is nonzero in `A//source`.
    pub operator_nonzero: bool,
}

impl LadderReport {
    pub fn failures(&self) -> impl Iterator<Item = &LadderRow> + '_ {
        self.rows.iter().filter(|r| !r.ok())
    }

    pub fn ok(&self) -> bool {
        self.operator_nonzero && self.rows.iter().all(LadderRow::ok)
    }

    /// Rows `s, w, lhs, rhs, status`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tw\tlhs\trhs\tstatus\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.degree.stem,
                r.degree.weight,
                r.lhs,
                r.rhs,
                if r.ok() { "ok" } else { "FAIL" }
            ));
        }
        out
    }
}

/// Checks `dim A//source (s,w) = dim A//target (s,w) + dim A//target (s,w) - shift)`
/// at every `s <= stem_max`, `0 <= w <= s/2` (dimensions are constant above
/// that weight), and that the connecting operator survives in `A//source`.
pub fn ladder_verify(step: &LadderStep, stem_max: i32) -> Result<LadderReport, QuotientError> {
    let source = quotient_dims(step.source, stem_max)?;
    let target = quotient_dims(step.target, stem_max)?;
    let mut rows = Vec::new();
    for s in 0..=stem_max {
        for w in 0..=s / 2 {
            let d = BiDegree::new(s, w);
            let lhs = source.dim(d);
            let rhs = target.dim(d) + target.dim(d - step.shift);
            rows.push(LadderRow { degree: d, lhs, rhs });
        }
    }
    let operator_nonzero = operator_survives(step.source, step.operator)?;
    Ok(LadderReport {
        step: *step,
        stem_max,
        rows,
        operator_nonzero,
    })
}

/// Runs the three `A(2)` steps; all must pass for the certificate.
pub fn tmf_ladder(stem_max: i32) -> Result<Vec<LadderReport>, QuotientError> {
    tmf_steps().iter().map(|s| ladder_verify(s, stem_max)).collect()
}

pub fn ko_ladder(stem_max: i32) -> Result<Vec<LadderReport>, QuotientError> {
    ko_steps().iter().map(|s| ladder_verify(s, stem_max)).collect()
}

/// The homological slice of `A_* box_{B_*} F2[tau]` at `(stem, weight)`:
/// elements `x` with `(id ⊗ π) Δx = x ⊗ 1`, as vectors over `basis`.
pub struct CotensorSlice {
    pub degree: BiDegree,
    pub basis: Vec<Monomial>,
    pub kernel: Vec<crate::f2::F2Vector>,
}

pub fn cotensor_slice(
    coalgebra: &Coalgebra,
    sub: &Presentation,
    degree: BiDegree,
) -> Result<CotensorSlice, QuotientError> {
    let a = coalgebra.presentation();
    let basis = a.basis(degree)?;
    let one = sub.one();
    let mut term_index: HashMap<(Monomial, Monomial), usize> = HashMap::new();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut col = Vec::new();
        let mut toggle = |key: (Monomial, Monomial), col: &mut Vec<usize>| {
            let next = term_index.len();
            let i = *term_index.entry(key).or_insert(next);
            if let Some(pos) = col.iter().position(|&j| j == i) {
                col.swap_remove(pos);
            } else {
                col.push(i);
            }
        };
        for (l, r) in coalgebra.monomial_coproduct(x).iter() {
            if let Some(pr) = sub.project_from(a, r) {
                // projection can only lower weight of the right factor through tau
                let mut l = l.clone();
                l.tau += pr.tau;
                toggle((l, pr.tau_free()), &mut col);
            }
        }
        toggle((x.clone(), one.clone()), &mut col);
        columns.push(col);
    }
    let mut m = F2Matrix::zeros(term_index.len(), basis.len());
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            m.set(i, j, true);
        }
    }
    Ok(CotensorSlice {
        degree,
        basis,
        kernel: m.kernel_basis(),
    })
}

/// F2-dimension of the cotensor slice, computed directly.
pub fn cotensor_dim(sub: AlgebraKind, degree: BiDegree) -> Result<usize, QuotientError> {
    if !supported(sub) {
        return Err(QuotientError::Unsupported(sub.to_string()));
    }
    let a = make_algebra(AlgebraKind::Steenrod, degree.stem.max(1));
    let c = Coalgebra::new(&a).expect("full algebra");
    let b = if sub == AlgebraKind::Steenrod {
        a.clone()
    } else {
        make_algebra(sub, 0)
    };
    Ok(cotensor_slice(&c, &b, degree)?.kernel.len())
}

/// Whether the named operation acts nontrivially on the unit of `A//sub`:
/// some cotensor element in its degree has a nonzero coefficient on the
/// operation's dual monomial.
pub fn operator_survives(sub: AlgebraKind, op: NamedGenerator) -> Result<bool, QuotientError> {
    let od = op.degree()?;
    let a = make_algebra(AlgebraKind::Steenrod, od.stem.max(1));
    let (kind, e) = op.dual_generator()?;
    let mut m = a
        .generator(kind)
        .ok_or_else(|| QuotientError::Unsupported(op.to_string()))?;
    m.exps[a.generator_index(kind).unwrap()] = e;
    let lowest = a
        .tau_free_basis_in_stem(od.stem)?
        .iter()
        .map(|x| a.degree(x).weight)
        .min()
        .unwrap_or(0);
    let target = m.clone().with_tau((od.weight - lowest) as u32);
    let c = Coalgebra::new(&a).expect("full algebra");
    let b = if sub == AlgebraKind::Steenrod {
        a.clone()
    } else {
        make_algebra(sub, 0)
    };
    let slice = cotensor_slice(&c, &b, BiDegree::new(od.stem, lowest))?;
    let Some(i) = slice.basis.iter().position(|x| *x == target) else {
        return Ok(false);
    };
    Ok(slice.kernel.iter().any(|v| v.get(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_quotient() {
        let q = quotient_dims(AlgebraKind::Steenrod, 20).unwrap();
        assert_eq!(q.ranks.total(), 1);
        assert_eq!(q.rank(BiDegree::ZERO), 1);
        assert_eq!(q.name(), "A//A");
    }

    #[test]
    fn a_mod_e0_is_the_bp0_presentation() {
        let q = quotient_dims(AlgebraKind::E(0), 20).unwrap();
        let h = make_algebra(AlgebraKind::HBPn(0), 20).poincare(20).unwrap();
        assert_eq!(q.ranks, h);
        for n in 1..=2 {
            let q = quotient_dims(AlgebraKind::E(n), 24).unwrap();
            let h = make_algebra(AlgebraKind::HBPn(n), 24).poincare(24).unwrap();
            assert_eq!(q.ranks, h);
        }
    }

    #[test]
    fn a_mod_e2_low_degree() {
        let q = quotient_dims(AlgebraKind::E(2), 10).unwrap();
        assert_eq!(q.dim(BiDegree::new(2, 1)), 1);
        assert_eq!(q.dim(BiDegree::new(1, 0)), 0);
        assert_eq!(q.dim(BiDegree::new(0, 0)), 1);
    }

    #[test]
    fn poincare_factorization() {
        let a = make_algebra(AlgebraKind::Steenrod, 24).poincare(24).unwrap();
        for kind in [
            AlgebraKind::A(1),
            AlgebraKind::A(2),
            AlgebraKind::E(0),
            AlgebraKind::E(1),
            AlgebraKind::E(2),
            AlgebraKind::F,
            AlgebraKind::G,
        ] {
            let q = quotient_dims(kind, 24).unwrap();
            let b = make_algebra(kind, 0).poincare(24).unwrap();
            assert_eq!(series_product(&b, &q.ranks, 24), a, "{kind}");
        }
    }

    #[test]
    fn division_rejects_negative_ranks() {
        let mut a = RankTable::new(4);
        a.increment(BiDegree::ZERO, 1);
        let mut b = RankTable::new(4);
        b.increment(BiDegree::ZERO, 1);
        b.increment(BiDegree::new(1, 0), 1);
        assert!(matches!(
            series_divide(&a, &b, 4, "test"),
            Err(QuotientError::NegativeRank { .. })
        ));
    }

    #[test]
    fn shifts() {
        assert_eq!(motivic_shift(4), BiDegree::new(4, 2));
        assert_eq!(motivic_shift(5), BiDegree::new(5, 2));
        assert_eq!(motivic_shift(0), BiDegree::ZERO);
        for m in 0..10 {
            for n in 0..10 {
                let defect = motivic_shift(m + n) - (motivic_shift(m) + motivic_shift(n));
                if m % 2 == 1 && n % 2 == 1 {
                    assert_eq!(defect, BiDegree::new(0, 1));
                } else {
                    assert_eq!(defect, BiDegree::ZERO);
                }
            }
        }
    }

    #[test]
    fn tmf_ladder_holds() {
        for report in tmf_ladder(24).unwrap() {
            assert!(report.operator_nonzero, "{}", report.step);
            assert_eq!(report.failures().count(), 0, "{}", report.step);
        }
    }

    #[test]
    fn ko_ladder_holds() {
        for report in ko_ladder(20).unwrap() {
            assert!(report.ok(), "{}", report.step);
        }
        let e1 = quotient_dims(AlgebraKind::E(1), 4).unwrap();
        assert_eq!(e1.dim(BiDegree::new(2, 1)), 1);
        let first = ladder_verify(&ko_steps()[0], 0).unwrap();
        assert_eq!(
            first.rows,
            vec![LadderRow {
                degree: BiDegree::ZERO,
                lhs: 1,
                rhs: 1
            }]
        );
    }

    #[test]
    fn operators_vanish_in_their_own_quotient() {
        // each connecting operator lies in the larger subalgebra, so it kills
        // the unit of A//target
        for step in tmf_steps().iter().chain(ko_steps().iter()) {
            assert!(!operator_survives(step.target, step.operator).unwrap(), "{step}");
        }
    }

    #[test]
    fn telescoping() {
        let top = quotient_dims(AlgebraKind::A(2), 24).unwrap().ranks;
        let mut acc = top;
        for step in tmf_steps().iter().rev() {
            acc = with_cell(&acc, step.shift, 24);
        }
        assert_eq!(acc, quotient_dims(AlgebraKind::E(2), 24).unwrap().ranks);
    }

    #[test]
    fn cotensor_matches_division() {
        for kind in [AlgebraKind::E(1), AlgebraKind::A(1), AlgebraKind::F, AlgebraKind::G] {
            let q = quotient_dims(kind, 12).unwrap();
            for s in 0..=12 {
                for w in 0..=s / 2 {
                    let d = BiDegree::new(s, w);
                    assert_eq!(
                        cotensor_dim(kind, d).unwrap() as u64,
                        q.ranks.homological_dim(d),
                        "{kind} at {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn step_names() {
        assert_eq!(step_by_name("E2-F").unwrap().shift, BiDegree::new(6, 3));
        assert_eq!(step_by_name("g-a2").unwrap().operator, NamedGenerator::Sq(2));
        assert!(step_by_name("X-Y").is_err());
    }
}
