//! The coproduct on the dual Steenrod algebra and its quotient Hopf algebras.
//!
//! On generators
//!
//! ```text
//! Δ(tau_i) = tau_i ⊗ 1 + Σ_{k=0..i} xi_{i-k}^{2^k} ⊗ tau_k
//! Δ(xi_i)  = Σ_{k=0..i} xi_{i-k}^{2^k} ⊗ xi_k            (xi_0 = 1)
//! ```
//!
//! extended multiplicatively and `F2[tau]`-linearly, with `tau` carried on the
//! left tensor factor. On a quotient the coproduct is computed in the full
//! algebra and pushed through the quotient map on both sides.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use thiserror::Error;

use crate::algebra::{format_monomial, make_algebra, AlgebraKind, BiDegree, Element, GenKind, Monomial, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("{0} is not a Hopf algebra quotient of the dual Steenrod algebra")]
    NotHopf(String),
}

/// An `F2`-sum of `left ⊗ right`; `right` never carries a tau factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement(BTreeSet<(Monomial, Monomial)>);

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement(BTreeSet::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &(Monomial, Monomial)> + '_ {
        self.0.iter()
    }

    /// Adds `left ⊗ right`, moving any tau on `right` to `left`.
    pub fn add_term(&mut self, mut left: Monomial, mut right: Monomial) {
        left.tau += right.tau;
        right.tau = 0;
        let key = (left, right);
        if !self.0.remove(&key) {
            self.0.insert(key);
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for (l, r) in other.iter() {
            self.add_term(l.clone(), r.clone());
        }
    }

    pub fn tau_shift(&self, k: u32) -> TensorElement {
        let mut out = TensorElement::zero();
        for (l, r) in self.iter() {
            out.add_term(l.clone().with_tau(l.tau + k), r.clone());
        }
        out
    }

    /// Product in `P ⊗ P`.
    pub fn multiply(&self, other: &TensorElement, p: &Presentation) -> TensorElement {
        let mut out = TensorElement::zero();
        for (l1, r1) in self.iter() {
            for (l2, r2) in other.iter() {
                let (Some(l), Some(r)) = (p.multiply_monomials(l1, l2), p.multiply_monomials(r1, r2)) else {
                    continue;
                };
                out.add_term(l, r);
            }
        }
        out
    }

    pub fn one(p: &Presentation) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_term(p.one(), p.one());
        t
    }

    /// Pushes both factors through the quotient map `source -> target`.
    pub fn project(&self, source: &Presentation, target: &Presentation) -> TensorElement {
        let mut out = TensorElement::zero();
        for (l, r) in self.iter() {
            if let (Some(l), Some(r)) = (target.project_from(source, l), target.project_from(source, r)) {
                out.add_term(l, r);
            }
        }
        out
    }

    /// Text form `a|b + c|d`, terms in descending order.
    pub fn format(&self, p: &Presentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.iter()
            .rev()
            .map(|(l, r)| format!("{}|{}", format_monomial(l, p), format_monomial(r, p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Threefold tensors, for coassociativity.
pub type TripleTensor = BTreeSet<(Monomial, Monomial, Monomial)>;

fn toggle3(set: &mut TripleTensor, mut a: Monomial, mut b: Monomial, mut c: Monomial) {
    a.tau += b.tau + c.tau;
    b.tau = 0;
    c.tau = 0;
    let key = (a, b, c);
    if !set.remove(&key) {
        set.insert(key);
    }
}

/// Coproduct on one of the supported Hopf algebras.
pub struct Coalgebra {
    target: Presentation,
    ambient: Presentation,
    /// Coproducts of tau-free ambient monomials.
    cache: Mutex<HashMap<Monomial, TensorElement>>,
}

impl Coalgebra {
    /// `p` must be the full dual Steenrod algebra or one of its finite
    /// quotients.
    pub fn new(p: &Presentation) -> Result<Self, HopfError> {
        let ambient_limit = match p.kind() {
            AlgebraKind::Steenrod => p.stem_limit().unwrap_or(0),
            AlgebraKind::A(_) | AlgebraKind::E(_) | AlgebraKind::F | AlgebraKind::G | AlgebraKind::Unit => top_stem(p),
            _ => return Err(HopfError::NotHopf(p.name())),
        };
        let ambient = if p.kind() == AlgebraKind::Steenrod {
            p.clone()
        } else {
            make_algebra(AlgebraKind::Steenrod, ambient_limit.max(1))
        };
        Ok(Coalgebra {
            target: p.clone(),
            ambient,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.target
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    fn is_full(&self) -> bool {
        self.target.kind() == AlgebraKind::Steenrod
    }

    /// Δ of a generator of the ambient algebra, straight from the formulas.
    fn generator_coproduct(&self, kind: GenKind) -> TensorElement {
        let a = &self.ambient;
        let xi_power = |j: u32, k: u32| -> Monomial {
            if j == 0 {
                return a.one();
            }
            let mut m = a.generator(GenKind::Xi(j)).expect("xi generator within ambient bound");
            let i = a.generator_index(GenKind::Xi(j)).unwrap();
            m.exps[i] = 1 << k;
            m
        };
        let mut out = TensorElement::zero();
        match kind {
            GenKind::TauI(i) => {
                out.add_term(a.generator(kind).unwrap(), a.one());
                for k in 0..=i {
                    out.add_term(xi_power(i - k, k), a.generator(GenKind::TauI(k)).unwrap());
                }
            }
            GenKind::Xi(i) => {
                for k in 0..=i {
                    let right = if k == 0 {
                        a.one()
                    } else {
                        a.generator(GenKind::Xi(k)).unwrap()
                    };
                    out.add_term(xi_power(i - k, k), right);
                }
            }
            GenKind::V(_) | GenKind::U(_) => unreachable!("no coproduct on v_i or t_i"),
        }
        out
    }

    /// Δ of a tau-free normal monomial of the ambient algebra.
    fn ambient_coproduct(&self, m: &Monomial) -> TensorElement {
        debug_assert_eq!(m.tau, 0);
        if let Some(hit) = self.cache.lock().unwrap().get(m) {
            return hit.clone();
        }
        let a = &self.ambient;
        let out = if m.is_one() {
            TensorElement::one(a)
        } else {
            // peel off one factor of the last generator present
            let g = m.exps.iter().rposition(|&e| e > 0).unwrap();
            let mut rest = m.clone();
            rest.exps[g] -= 1;
            let gen = self.generator_coproduct(a.generators()[g].kind);
            let rest_cp = self.ambient_coproduct(&rest);
            gen.multiply(&rest_cp, a)
        };
        self.cache.lock().unwrap().insert(m.clone(), out.clone());
        out
    }

    /// Δ of a normal monomial of the ambient algebra (tau allowed).
    pub fn ambient_monomial_coproduct(&self, m: &Monomial) -> TensorElement {
        self.ambient_coproduct(&m.tau_free()).tau_shift(m.tau)
    }

    /// Δ of a normal monomial of the target algebra.
    pub fn monomial_coproduct(&self, m: &Monomial) -> TensorElement {
        if self.is_full() {
            return self.ambient_monomial_coproduct(m);
        }
        let lifted = self
            .ambient
            .reindex_from(&self.target, m)
            .expect("quotient generators lie in the ambient algebra");
        let lifted = self
            .ambient
            .normalize(&lifted)
            .expect("quotient normal forms are ambient normal forms");
        self.ambient_monomial_coproduct(&lifted)
            .project(&self.ambient, &self.target)
    }

    pub fn coproduct(&self, a: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for m in a.iter() {
            out.add_assign(&self.monomial_coproduct(m));
        }
        out
    }

    /// `(Δ ⊗ id) Δ(m)` and `(id ⊗ Δ) Δ(m)`.
    pub fn iterated(&self, m: &Monomial) -> (TripleTensor, TripleTensor) {
        let first = self.monomial_coproduct(m);
        let mut left = TripleTensor::new();
        let mut right = TripleTensor::new();
        for (l, r) in first.iter() {
            for (ll, lr) in self.monomial_coproduct(l).iter() {
                toggle3(&mut left, ll.clone(), lr.clone(), r.clone());
            }
            for (rl, rr) in self.monomial_coproduct(r).iter() {
                toggle3(&mut right, l.clone(), rl.clone(), rr.clone());
            }
        }
        (left, right)
    }

    /// `(ε ⊗ id) Δ(x)` and `(id ⊗ ε) Δ(x)`.
    pub fn counit_sides(&self, x: &Element) -> (Element, Element) {
        let p = &self.target;
        let cp = self.coproduct(x);
        let mut left = Element::zero();
        let mut right = Element::zero();
        for (l, r) in cp.iter() {
            if let Some(k) = counit_monomial(l) {
                if let Some(m) = p.normalize(&r.clone().with_tau(r.tau + k)) {
                    left.add_monomial(m);
                }
            }
            if let Some(k) = counit_monomial(r) {
                if let Some(m) = p.normalize(&l.clone().with_tau(l.tau + k)) {
                    right.add_monomial(m);
                }
            }
        }
        (left, right)
    }
}

/// Largest stem of a nonzero monomial of a finite presentation.
pub fn top_stem(p: &Presentation) -> i32 {
    let mut total = 0;
    for (i, g) in p.generators().iter().enumerate() {
        let bound = p
            .rules()
            .iter()
            .find(|r| r.generator() == i)
            .map(|r| r.lhs_exponent() - 1)
            .unwrap_or(1);
        total += g.degree.stem * bound as i32;
    }
    total
}

fn counit_monomial(m: &Monomial) -> Option<u32> {
    m.is_tau_power().then_some(m.tau)
}

/// `ε(a)` as a tau power; `None` is zero. A homogeneous element has at most
/// one pure tau-power term.
pub fn counit(a: &Element) -> Option<u32> {
    a.iter().find_map(counit_monomial)
}

/// Convenience wrapper: `Δ(a)` over `p`.
pub fn coproduct(a: &Element, p: &Presentation) -> Result<TensorElement, HopfError> {
    Ok(Coalgebra::new(p)?.coproduct(a))
}

#[derive(Debug, Clone, Default)]
pub struct HopfReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl HopfReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn basis_through(p: &Presentation, stem_max: i32) -> Vec<Monomial> {
    let limit = p.stem_limit().map_or(stem_max, |l| l.min(stem_max));
    (0..=limit)
        .flat_map(|s| p.tau_free_basis_in_stem(s).expect("within stem limit"))
        .collect()
}

/// Checks `(Δ⊗id)Δ = (id⊗Δ)Δ` on every tau-free basis monomial through
/// `stem_max`.
pub fn check_coassociativity(c: &Coalgebra, stem_max: i32) -> HopfReport {
    let p = c.presentation();
    let mut report = HopfReport::default();
    for m in basis_through(p, stem_max) {
        report.checked += 1;
        let (l, r) = c.iterated(&m);
        if l != r {
            report.failures.push(format_monomial(&m, p));
        }
    }
    report
}

/// Checks both counit laws on every tau-free basis monomial.
pub fn check_counit(c: &Coalgebra, stem_max: i32) -> HopfReport {
    let p = c.presentation();
    let mut report = HopfReport::default();
    for m in basis_through(p, stem_max) {
        report.checked += 1;
        let x = Element::from_monomial(m.clone());
        let (l, r) = c.counit_sides(&x);
        if l != x || r != x {
            report.failures.push(format_monomial(&m, p));
        }
    }
    report
}

/// Checks `Δ(ab) = Δ(a)Δ(b)` on all pairs of tau-free basis monomials with
/// total stem at most `stem_max`.
pub fn check_algebra_map(c: &Coalgebra, stem_max: i32) -> HopfReport {
    let p = c.presentation();
    let basis = basis_through(p, stem_max);
    let mut report = HopfReport::default();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            if p.degree(a).stem + p.degree(b).stem > stem_max {
                continue;
            }
            report.checked += 1;
            let lhs = match p.multiply_monomials(a, b) {
                Some(ab) => c.monomial_coproduct(&ab),
                None => TensorElement::zero(),
            };
            let rhs = c.monomial_coproduct(a).multiply(&c.monomial_coproduct(b), p);
            if lhs != rhs {
                report
                    .failures
                    .push(format!("{} * {}", format_monomial(a, p), format_monomial(b, p)));
            }
        }
    }
    report
}

/// Well-definedness of a quotient: each rewrite rule `lhs -> rhs` must give
/// `Δ(g)^k = Δ(rhs)` in `Q ⊗ Q`, where the power is taken in `Q ⊗ Q`, and every
/// ambient generator killed by the quotient (through `stem_max`) must have
/// coproduct mapping to zero.
pub fn check_welldefined(c: &Coalgebra, stem_max: i32) -> HopfReport {
    let q = c.presentation();
    let a = c.ambient();
    let n = q.num_generators();
    let mut report = HopfReport::default();
    for rule in q.rules() {
        report.checked += 1;
        let g = rule.generator();
        let gen = Element::from_monomial(q.generator(q.generators()[g].kind).unwrap());
        let dg = c.coproduct(&gen);
        let mut power = TensorElement::one(q);
        for _ in 0..rule.lhs_exponent() {
            power = power.multiply(&dg, q);
        }
        let rhs = match rule.rhs(n) {
            Some(m) => c.monomial_coproduct(&m),
            None => TensorElement::zero(),
        };
        if power != rhs {
            report.failures.push(format!(
                "rule {}^{}",
                q.generators()[g].kind.name(),
                rule.lhs_exponent()
            ));
        }
    }
    if q.kind() != AlgebraKind::Steenrod {
        for g in a.generators() {
            if g.degree.stem > stem_max || q.generator_index(g.kind).is_some() {
                continue;
            }
            report.checked += 1;
            let m = a.generator(g.kind).unwrap();
            if !c.ambient_monomial_coproduct(&m).project(a, q).is_zero() {
                report.failures.push(format!("killed generator {}", g.kind.name()));
            }
        }
    }
    report
}

/// The quotient map `A -> Q` commutes with Δ on every ambient basis monomial
/// through `stem_max`.
pub fn check_projection(c: &Coalgebra, full: &Coalgebra, stem_max: i32) -> HopfReport {
    let q = c.presentation();
    let a = full.presentation();
    let mut report = HopfReport::default();
    for m in basis_through(a, stem_max) {
        report.checked += 1;
        let lhs = full.monomial_coproduct(&m).project(a, q);
        let rhs = match q.project_from(a, &m) {
            Some(pm) => c.monomial_coproduct(&pm),
            None => TensorElement::zero(),
        };
        if lhs != rhs {
            report.failures.push(format_monomial(&m, a));
        }
    }
    report
}

/// Degree of a tensor term: sum of the two sides.
pub fn tensor_degree(p: &Presentation, l: &Monomial, r: &Monomial) -> BiDegree {
    p.degree(l) + p.degree(r)
}
