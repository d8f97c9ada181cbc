//! The motivic Steenrod algebra itself, as the `F2[tau]`-dual of the dual
//! Steenrod algebra in its monomial basis.
//!
//! A functional of cohomological degree `(s, w)` is a set of tau-free monomials
//! `m` of stem `s` and weight `w_m <= w`; each stands for `tau^(w - w_m) m^`,
//! which sends `m` to `tau^(w - w_m)` and every other tau-free monomial to 0.
//! Products are the transpose of the coproduct.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{
    format_monomial, make_algebra, parse_monomial, AlgebraError, AlgebraKind, BiDegree, Element, GenKind, Monomial,
    Presentation, RankTable,
};
use crate::f2::{F2Vector, Subspace};
use crate::hopf::Coalgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown Steenrod operation `{0}`")]
    UnknownName(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("stem {stem} exceeds the stem limit {limit}")]
    StemBound { stem: i32, limit: i32 },
    #[error("dual basis elements are indexed by tau-free monomials, got `{0}`")]
    NotTauFree(String),
}

/// A homogeneous element of the Steenrod algebra in the dual monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualElement {
    degree: BiDegree,
    terms: BTreeSet<Monomial>,
}

impl DualElement {
    pub fn zero(degree: BiDegree) -> Self {
        DualElement {
            degree,
            terms: BTreeSet::new(),
        }
    }

    pub fn degree(&self) -> BiDegree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tau-free monomials whose duals occur, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    pub fn tau_multiple(&self, k: u32) -> DualElement {
        DualElement {
            degree: self.degree + BiDegree::new(0, k as i32),
            terms: self.terms.clone(),
        }
    }

    /// Sum of two functionals of the same degree.
    pub fn add(&self, other: &DualElement) -> Result<DualElement, DualError> {
        if self.degree != other.degree {
            return Err(DualError::Inhomogeneous);
        }
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        Ok(DualElement {
            degree: self.degree,
            terms,
        })
    }
}

/// An element of `F2[tau]`, as the set of tau exponents present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TauPoly(BTreeSet<u32>);

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly::default()
    }

    pub fn tau_power(k: u32) -> Self {
        TauPoly([k].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn toggle(&mut self, k: u32) {
        if !self.0.remove(&k) {
            self.0.insert(k);
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().rev().copied()
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .exponents()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The operations that have names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedGenerator {
    /// `Sq^(2^n)`; `n = 0` is `Sq^1`.
    Sq(u32),
    /// Milnor primitive `Q_i`.
    Q(u32),
    /// `P_j^i`; `P_j^0` is another name for `Q_(j-1)`.
    P { j: u32, i: u32 },
}

impl NamedGenerator {
    /// The dual monomial, as a generator and an exponent.
    pub fn dual_generator(self) -> Result<(GenKind, u32), DualError> {
        Ok(match self {
            NamedGenerator::Sq(0) => (GenKind::TauI(0), 1),
            NamedGenerator::Sq(n) => (GenKind::Xi(1), 1 << (n - 1)),
            NamedGenerator::Q(i) => (GenKind::TauI(i), 1),
            NamedGenerator::P { j: 0, i } => {
                return Err(DualError::UnknownName(format!("P(0,{i})")));
            }
            NamedGenerator::P { j, i: 0 } => (GenKind::TauI(j - 1), 1),
            NamedGenerator::P { j, i } => (GenKind::Xi(j), 1 << (i - 1)),
        })
    }

    pub fn degree(self) -> Result<BiDegree, DualError> {
        let (g, e) = self.dual_generator()?;
        let d = g.degree();
        Ok(BiDegree::new(d.stem * e as i32, d.weight * e as i32))
    }
}

impl fmt::Display for NamedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGenerator::Sq(n) => write!(f, "Sq{}", 1u64 << n),
            NamedGenerator::Q(i) => write!(f, "Q{i}"),
            NamedGenerator::P { j, i } => write!(f, "P({j},{i})"),
        }
    }
}

impl FromStr for NamedGenerator {
    type Err = DualError;

    fn from_str(s: &str) -> Result<Self, DualError> {
        let bad = || DualError::UnknownName(s.to_string());
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("Sq") {
            let n: u64 = rest.trim_start_matches('^').parse().map_err(|_| bad())?;
            if n == 0 || !n.is_power_of_two() {
                return Err(bad());
            }
            return Ok(NamedGenerator::Sq(n.trailing_zeros()));
        }
        if let Some(rest) = t.strip_prefix('Q') {
            let i = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
            return Ok(NamedGenerator::Q(i));
        }
        if let Some(rest) = t.strip_prefix('P') {
            let (j, i) = if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                inner.split_once(',').ok_or_else(bad)?
            } else {
                rest.trim_start_matches('_').split_once('^').ok_or_else(bad)?
            };
            let j: u32 = j.trim().parse().map_err(|_| bad())?;
            let i: u32 = i.trim().parse().map_err(|_| bad())?;
            if j == 0 {
                return Err(bad());
            }
            return Ok(NamedGenerator::P { j, i });
        }
        Err(bad())
    }
}

/// The Steenrod algebra through a fixed stem.
pub struct SteenrodAlgebra {
    coalgebra: Coalgebra,
    limit: i32,
}

impl SteenrodAlgebra {
    pub fn new(stem_limit: i32) -> Self {
        let limit = stem_limit.max(1);
        let p = make_algebra(AlgebraKind::Steenrod, limit);
        SteenrodAlgebra {
            coalgebra: Coalgebra::new(&p).expect("the full algebra is Hopf"),
            limit,
        }
    }

    pub fn stem_limit(&self) -> i32 {
        self.limit
    }

    /// The underlying dual Steenrod algebra.
    pub fn presentation(&self) -> &Presentation {
        self.coalgebra.presentation()
    }

    fn check_stem(&self, stem: i32) -> Result<(), DualError> {
        if stem > self.limit {
            return Err(DualError::StemBound {
                stem,
                limit: self.limit,
            });
        }
        Ok(())
    }

    pub fn one(&self) -> DualElement {
        self.dual_of(&self.presentation().one()).unwrap()
    }

    /// `m^` for a tau-free normal monomial `m`.
    pub fn dual_of(&self, m: &Monomial) -> Result<DualElement, DualError> {
        let p = self.presentation();
        if m.tau != 0 {
            return Err(DualError::NotTauFree(format_monomial(m, p)));
        }
        let degree = p.degree(m);
        self.check_stem(degree.stem)?;
        Ok(DualElement {
            degree,
            terms: [m.clone()].into_iter().collect(),
        })
    }

    pub fn named(&self, g: NamedGenerator) -> Result<DualElement, DualError> {
        let (kind, e) = g.dual_generator()?;
        self.check_stem(g.degree()?.stem)?;
        let p = self.presentation();
        let mut m = p.generator(kind).ok_or_else(|| DualError::StemBound {
            stem: kind.degree().stem,
            limit: self.limit,
        })?;
        let i = p.generator_index(kind).unwrap();
        m.exps[i] = e;
        self.dual_of(&m)
    }

    /// `<f, a>`, an element of `F2[tau]`.
    pub fn pair(&self, f: &DualElement, a: &Element) -> TauPoly {
        let p = self.presentation();
        let mut out = TauPoly::zero();
        for m in a.iter() {
            let free = m.tau_free();
            if !f.terms.contains(&free) {
                continue;
            }
            let k = f.degree.weight - p.degree(&free).weight;
            out.toggle(m.tau + k as u32);
        }
        out
    }

    /// Tau-free monomials of stem `s` and weight at most `w`, ascending.
    fn dual_basis(&self, d: BiDegree) -> Result<Vec<Monomial>, DualError> {
        self.check_stem(d.stem)?;
        let p = self.presentation();
        let mut out: Vec<Monomial> = p
            .tau_free_basis_in_stem(d.stem)?
            .into_iter()
            .filter(|m| p.degree(m).weight <= d.weight)
            .collect();
        out.sort();
        Ok(out)
    }

    /// `f * g`, with `<fg, x> = Σ <f, x'><g, x''>` over `Δx = Σ x' ⊗ x''`.
    pub fn product(&self, f: &DualElement, g: &DualElement) -> Result<DualElement, DualError> {
        let degree = f.degree + g.degree;
        let mut out = DualElement::zero(degree);
        if f.is_zero() || g.is_zero() {
            return Ok(out);
        }
        for x in self.dual_basis(degree)? {
            let mut hits = 0u32;
            for (l, r) in self.coalgebra.monomial_coproduct(&x).iter() {
                if f.terms.contains(&l.tau_free()) && g.terms.contains(r) {
                    hits += 1;
                }
            }
            if hits % 2 == 1 {
                out.terms.insert(x);
            }
        }
        Ok(out)
    }

    pub fn format(&self, f: &DualElement) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let p = self.presentation();
        let parts: Vec<String> = f
            .terms
            .iter()
            .rev()
            .map(|m| {
                let k = f.degree.weight - p.degree(m).weight;
                let dual = format!("dual({})", format_monomial(m, p));
                match k {
                    0 => dual,
                    1 => format!("t*{dual}"),
                    k => format!("t^{k}*{dual}"),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses a sum of terms `[t^k*]dual(<monomial>)` or `[t^k*]<name>`, or a
    /// product of named generators such as `Sq2*Sq2`.
    pub fn parse(&self, text: &str) -> Result<DualElement, DualError> {
        let mut total: Option<DualElement> = None;
        for term in text.split('+') {
            let x = self.parse_term(term.trim())?;
            total = Some(match total {
                None => x,
                Some(t) => t.add(&x)?,
            });
        }
        total.ok_or_else(|| DualError::Parse(text.to_string()))
    }

    fn parse_term(&self, term: &str) -> Result<DualElement, DualError> {
        if term.is_empty() {
            return Err(DualError::Parse(term.to_string()));
        }
        let mut tau = 0u32;
        let mut acc: Option<DualElement> = None;
        for factor in split_factors(term) {
            if factor == "t" {
                tau += 1;
                continue;
            }
            if let Some(k) = factor.strip_prefix("t^") {
                tau += k.parse::<u32>().map_err(|_| DualError::Parse(term.to_string()))?;
                continue;
            }
            let x = if let Some(inner) = factor.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
                let m = parse_monomial(inner.trim(), self.presentation())?;
                let m = self
                    .presentation()
                    .normalize(&m)
                    .filter(|n| *n == m)
                    .ok_or_else(|| DualError::Parse(format!("{inner} is not a normal monomial")))?;
                self.dual_of(&m)?
            } else {
                self.named(factor.parse()?)?
            };
            acc = Some(match acc {
                None => x,
                Some(a) => self.product(&a, &x)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.one()).tau_multiple(tau))
    }

    /// F2-dimensions of the subalgebra generated by `gens` (closed under
    /// products and tau), at every `(s, w)` with `s <= stem_max` and
    /// `0 <= w <= s/2`. Above that window the dimensions are constant in `w`.
    pub fn generated_dims(&self, gens: &[DualElement], stem_max: i32) -> Result<BTreeMap<BiDegree, usize>, DualError> {
        self.check_stem(stem_max)?;
        let mut spaces: BTreeMap<BiDegree, (Vec<Monomial>, Subspace)> = BTreeMap::new();
        let window = |s: i32| 0..=s / 2;
        // weights above the window are tau-multiples of the top of the window
        let clamp = |d: BiDegree| BiDegree::new(d.stem, d.weight.min(d.stem / 2));
        for s in 0..=stem_max {
            for w in window(s) {
                let d = BiDegree::new(s, w);
                let basis = self.dual_basis(d)?;
                let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let mut space = Subspace::new(basis.len());
                let to_vec = |x: &DualElement| F2Vector::from_ones(basis.len(), x.terms.iter().map(|m| index[m]));
                if s == 0 {
                    space.add(&to_vec(&self.one().tau_multiple(w as u32)));
                }
                if w > 0 {
                    if let Some((below_basis, below)) = spaces.get(&BiDegree::new(s, w - 1)) {
                        for v in below.basis() {
                            let x = element_from(below_basis, v, BiDegree::new(s, w - 1));
                            space.add(&to_vec(&x.tau_multiple(1)));
                        }
                    }
                }
                for g in gens {
                    let gd = g.degree();
                    if gd.stem <= 0 || gd.stem > s {
                        continue;
                    }
                    let src = d - gd;
                    if src.weight < 0 {
                        continue;
                    }
                    let Some((src_basis, src_space)) = spaces.get(&clamp(src)) else {
                        continue;
                    };
                    let lift = src.weight - clamp(src).weight;
                    for v in src_space.basis() {
                        let x = element_from(src_basis, v, clamp(src)).tau_multiple(lift as u32);
                        let y = self.product(&x, g)?;
                        space.add(&to_vec(&y));
                    }
                }
                spaces.insert(d, (basis, space));
            }
        }
        Ok(spaces
            .into_iter()
            .filter(|(_, (_, sp))| sp.dim() > 0)
            .map(|(d, (_, sp))| (d, sp.dim()))
            .collect())
    }
}

fn element_from(basis: &[Monomial], v: &F2Vector, degree: BiDegree) -> DualElement {
    DualElement {
        degree,
        terms: v.ones().map(|i| basis[i].clone()).collect(),
    }
}

/// Splits on `*` outside parentheses.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(term[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(term[start..].trim());
    out
}

/// The dimensions `generated_dims` should produce for the dual of a finite
/// quotient with the given tau-free ranks.
pub fn dual_dims(ranks: &RankTable, stem_max: i32) -> BTreeMap<BiDegree, usize> {
    let mut out = BTreeMap::new();
    for s in 0..=stem_max {
        for w in 0..=s / 2 {
            let d = BiDegree::new(s, w);
            let dim = ranks.cohomological_dim(d) as usize;
            if dim > 0 {
                out.insert(d, dim);
            }
        }
    }
    out
}

/// The generators of each finite subalgebra, as named in its definition.
pub fn standard_generators(kind: AlgebraKind) -> Option<Vec<NamedGenerator>> {
    use NamedGenerator::*;
    Some(match kind {
        AlgebraKind::A(n) => (0..=n).map(Sq).collect(),
        AlgebraKind::E(n) => (0..=n).map(Q).collect(),
        AlgebraKind::F => vec![Q(0), Q(1), Q(2), P { j: 2, i: 1 }],
        AlgebraKind::G => vec![Q(0), Q(2), P { j: 2, i: 1 }, Sq(1)],
        AlgebraKind::Unit => vec![],
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn algebra() -> SteenrodAlgebra {
        SteenrodAlgebra::new(24)
    }

    fn op(a: &SteenrodAlgebra, name: &str) -> DualElement {
        a.named(name.parse().unwrap()).unwrap()
    }

    #[test]
    fn named_generator_table() {
        let a = algebra();
        let show = |n: &str| a.format(&op(&a, n));
        assert_eq!(show("Sq1"), "dual(t0)");
        assert_eq!(show("Sq2"), "dual(x1)");
        assert_eq!(show("Sq4"), "dual(x1^2)");
        assert_eq!(show("Sq8"), "dual(x1^4)");
        assert_eq!(show("Q0"), "dual(t0)");
        assert_eq!(show("Q2"), "dual(t2)");
        assert_eq!(show("P(1,0)"), show("Q0"));
        assert_eq!(show("P(3,0)"), show("Q2"));
        assert_eq!(show("P(2,1)"), "dual(x2)");
        assert_eq!(show("P(1,3)"), "dual(x1^4)");
        assert_eq!(op(&a, "Q1").degree(), BiDegree::new(3, 1));
        assert_eq!(op(&a, "P(2,1)").degree(), BiDegree::new(6, 3));
        assert!(matches!(
            "Sq3".parse::<NamedGenerator>(),
            Err(DualError::UnknownName(_))
        ));
        assert!(matches!(
            "P(0,1)".parse::<NamedGenerator>(),
            Err(DualError::UnknownName(_))
        ));
        assert_eq!(
            "P_2^1".parse::<NamedGenerator>().unwrap(),
            NamedGenerator::P { j: 2, i: 1 }
        );
    }

    #[test]
    fn pairings() {
        let a = algebra();
        let p = a.presentation();
        let x1 = parse_element("x1", p).unwrap();
        assert_eq!(a.pair(&op(&a, "Sq2"), &x1), TauPoly::tau_power(0));
        assert!(a.pair(&op(&a, "Sq1"), &x1).is_zero());
        let t_t1 = parse_element("t*t1", p).unwrap();
        assert_eq!(a.pair(&op(&a, "Q1"), &t_t1).to_string(), "t");
        let f = op(&a, "Sq2").tau_multiple(2);
        assert_eq!(a.pair(&f, &x1).to_string(), "t^2");
    }

    #[test]
    fn product_examples() {
        let a = algebra();
        let sq1 = op(&a, "Sq1");
        assert!(a.product(&sq1, &sq1).unwrap().is_zero());
        let sq2 = op(&a, "Sq2");
        let sq2sq2 = a.product(&sq2, &sq2).unwrap();
        assert_eq!(a.format(&sq2sq2), "t*dual(t0*t1)");
        assert_eq!(sq2sq2.degree(), BiDegree::new(4, 2));
        let q0 = op(&a, "Q0");
        for name in ["Sq1", "Sq2", "Sq4", "Q1", "P(2,1)"] {
            let x = op(&a, name);
            assert_eq!(a.product(&q0, &x).unwrap(), a.product(&sq1, &x).unwrap());
        }
        assert_eq!(a.format(&a.parse("Sq2*Sq2").unwrap()), "t*dual(t0*t1)");
    }

    #[test]
    fn unit_is_neutral() {
        let a = algebra();
        let one = a.one();
        for name in ["Sq1", "Sq2", "Sq4", "Sq8", "Q1", "Q2", "P(2,1)"] {
            let x = op(&a, name);
            assert_eq!(a.product(&one, &x).unwrap(), x);
            assert_eq!(a.product(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn milnor_primitives_square_to_zero_and_commute() {
        let a = algebra();
        let qs: Vec<DualElement> = (0..3).map(|i| op(&a, &format!("Q{i}"))).collect();
        for x in &qs {
            assert!(a.product(x, x).unwrap().is_zero());
            for y in &qs {
                assert_eq!(a.product(x, y).unwrap(), a.product(y, x).unwrap());
            }
        }
    }

    #[test]
    fn associativity_on_named_generators() {
        let a = algebra();
        let names = ["Sq1", "Sq2", "Sq4", "Sq8", "Q1", "Q2", "P(2,1)"];
        let gens: Vec<DualElement> = names.iter().map(|n| op(&a, n)).collect();
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    if (x.degree() + y.degree() + z.degree()).stem > 12 {
                        continue;
                    }
                    let left = a.product(&a.product(x, y).unwrap(), z).unwrap();
                    let right = a.product(x, &a.product(y, z).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let a = algebra();
        for text in ["t*dual(t0*t1)", "t*dual(t0*t1*x1) + dual(x1^3)"] {
            let x = a.parse(text).unwrap();
            assert_eq!(a.format(&x), text);
        }
        assert!(matches!(a.parse("dual(t0) + dual(x1)"), Err(DualError::Inhomogeneous)));
        assert!(a.parse("dual(t0^2)").is_err());
        assert!(matches!(a.parse("Sq64"), Err(DualError::StemBound { .. })));
    }

    #[test]
    fn sq1_generates_a_small_algebra() {
        let a = SteenrodAlgebra::new(4);
        let dims = a.generated_dims(&[op(&a, "Sq1")], 4).unwrap();
        let expected: BTreeMap<BiDegree, usize> = [(BiDegree::new(0, 0), 1), (BiDegree::new(1, 0), 1)]
            .into_iter()
            .collect();
        assert_eq!(dims, expected);
    }

    #[test]
    fn generated_subalgebras_match_quotients() {
        let a = SteenrodAlgebra::new(20);
        for kind in [
            AlgebraKind::A(1),
            AlgebraKind::A(2),
            AlgebraKind::E(0),
            AlgebraKind::E(1),
            AlgebraKind::E(2),
            AlgebraKind::F,
            AlgebraKind::G,
        ] {
            let gens: Vec<DualElement> = standard_generators(kind)
                .unwrap()
                .into_iter()
                .map(|g| a.named(g).unwrap())
                .collect();
            let got = a.generated_dims(&gens, 20).unwrap();
            let ranks = make_algebra(kind, 0).poincare(20).unwrap();
            assert_eq!(got, dual_dims(&ranks, 20), "{kind}");
        }
    }
}
