//! Presented bigraded commutative algebras over `F2[tau]`.
//!
//! Covers the motivic dual Steenrod algebra
//! `F2[tau][tau_0, tau_1, …, xi_1, xi_2, …]/(tau_i^2 + tau xi_{i+1})`, its finite
//! quotients `A(n)`, `E(n)`, `F`, `G`, and the homology and homotopy rings of the
//! Brown–Peterson family (the integral ones counted mod 2). `tau` is kept as a
//! distinguished exponent rather than a generator.

mod degree;
mod element;
mod presentation;
mod text;

pub use degree::{BiDegree, TriDegree};
pub use element::{Element, Monomial};
pub use presentation::{
    make_algebra, make_algebra_by_name, AlgebraKind, GenKind, Generator, Presentation, RankTable, Rule,
};
pub use text::{format_element, format_monomial, parse_element, parse_monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("stem {stem} is beyond the generator bound of {algebra} (stem limit {limit})")]
    IndexBound { algebra: String, stem: i32, limit: i32 },
    #[error("generator `{generator}` does not belong to {algebra}")]
    UnknownGenerator { algebra: String, generator: String },
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashMap};

    use proptest::prelude::*;

    use super::*;

    fn steenrod() -> Presentation {
        make_algebra(AlgebraKind::Steenrod, 30)
    }

    fn el(text: &str, p: &Presentation) -> Element {
        parse_element(text, p).unwrap()
    }

    fn rule_strings(p: &Presentation) -> BTreeSet<String> {
        let n = p.num_generators();
        p.rules()
            .iter()
            .map(|r| {
                let rhs = r.rhs(n).map_or("0".to_string(), |m| format_monomial(&m, p));
                format!("{}->{}", format_monomial(&r.lhs(n), p), rhs)
            })
            .collect()
    }

    fn generator_names(p: &Presentation) -> Vec<String> {
        p.generators().iter().map(|g| g.kind.name()).collect()
    }

    #[test]
    fn a1_presentation() {
        let p = make_algebra(AlgebraKind::A(1), 0);
        assert_eq!(generator_names(&p), ["t0", "t1", "x1"]);
        let expected: BTreeSet<String> = ["t0^2->t*x1", "t1^2->0", "x1^2->0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(rule_strings(&p), expected);
    }

    #[test]
    fn e2_and_f_presentations() {
        let e2 = make_algebra(AlgebraKind::E(2), 0);
        assert_eq!(generator_names(&e2), ["t0", "t1", "t2"]);
        let expected: BTreeSet<String> = ["t0^2->0", "t1^2->0", "t2^2->0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(rule_strings(&e2), expected);

        let f = make_algebra(AlgebraKind::F, 0);
        assert_eq!(generator_names(&f), ["t0", "t1", "t2", "x2"]);
        let expected: BTreeSet<String> = ["t0^2->0", "t1^2->t*x2", "x2^2->0", "t2^2->0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(rule_strings(&f), expected);

        let g = make_algebra(AlgebraKind::G, 0);
        let expected: BTreeSet<String> = ["t0^2->t*x1", "x1^2->0", "t1^2->t*x2", "x2^2->0", "t2^2->0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(rule_strings(&g), expected);
    }

    #[test]
    fn generator_degrees() {
        assert_eq!(GenKind::TauI(0).degree(), BiDegree::new(1, 0));
        assert_eq!(GenKind::TauI(2).degree(), BiDegree::new(7, 3));
        assert_eq!(GenKind::Xi(1).degree(), BiDegree::new(2, 1));
        assert_eq!(GenKind::Xi(3).degree(), BiDegree::new(14, 7));
        assert_eq!(GenKind::V(2).degree(), BiDegree::new(6, 3));
        let a = steenrod();
        assert_eq!(a.degree(&a.tau_power(1)), BiDegree::TAU);
    }

    #[test]
    fn unknown_algebra_name() {
        assert!(matches!(
            make_algebra_by_name("K(1)", 10),
            Err(AlgebraError::UnknownAlgebra(_))
        ));
        assert_eq!(make_algebra_by_name("A(2)", 0).unwrap().kind(), AlgebraKind::A(2));
        assert_eq!(make_algebra_by_name("E1", 0).unwrap().kind(), AlgebraKind::E(1));
        assert_eq!(
            make_algebra_by_name("H_BPn(1)", 9).unwrap().kind(),
            AlgebraKind::HBPn(1)
        );
    }

    #[test]
    fn normalize_examples() {
        let a = steenrod();
        assert_eq!(el("t0^2", &a), el("t*x1", &a));
        assert_eq!(format_element(&el("x1^2", &a), &a), "x1^2");
        assert_eq!(format_element(&el("t0^3", &a), &a), "t*t0*x1");
        assert_eq!(format_element(&el("t1^4", &a), &a), "t^2*x2^2");
    }

    #[test]
    fn multiply_examples() {
        let a = steenrod();
        assert_eq!(a.multiply(&el("t0", &a), &el("t0", &a)), el("t*x1", &a));
        let x = el("t1*x2 + t0*x1^4", &a);
        assert_eq!(a.multiply(&el("1", &a), &x), x);
        let s = el("t0*x1 + t1", &a);
        assert_eq!(format_element(&a.multiply(&s, &s), &a), "t*x1^3 + t*x2");
    }

    /// Every normal-form reachable from `m` under all rewrite orders.
    fn all_normal_forms(
        p: &Presentation,
        m: &Monomial,
        memo: &mut HashMap<Monomial, BTreeSet<Option<Monomial>>>,
    ) -> BTreeSet<Option<Monomial>> {
        if let Some(hit) = memo.get(m) {
            return hit.clone();
        }
        let n = p.num_generators();
        let mut out = BTreeSet::new();
        let mut any = false;
        for rule in p.rules() {
            let lhs = rule.lhs(n);
            if !lhs.divides(m) {
                continue;
            }
            any = true;
            let rest = lhs.quotient_of(m);
            match rule.rhs(n) {
                None => {
                    out.insert(None);
                }
                Some(r) => out.extend(all_normal_forms(p, &r.product(&rest), memo)),
            }
        }
        if !any {
            out.insert(Some(m.clone()));
        }
        memo.insert(m.clone(), out.clone());
        out
    }

    fn monomials_up_to(n: usize, max_total: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(n)];
        for g in 0..n {
            let mut next = Vec::new();
            for m in &out {
                for e in 0..=(max_total - m.total_exponent()) {
                    let mut x = m.clone();
                    x.exps[g] = e;
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn rewriting_is_confluent() {
        let a = make_algebra(AlgebraKind::Steenrod, 7);
        let tau0_cube = parse_monomial("t0^3", &a).unwrap();
        let mut memo = HashMap::new();
        let forms = all_normal_forms(&a, &tau0_cube, &mut memo);
        assert_eq!(forms.len(), 1);
        assert_eq!(
            format_monomial(forms.iter().next().unwrap().as_ref().unwrap(), &a),
            "t*t0*x1"
        );

        let algebras = [
            make_algebra(AlgebraKind::Steenrod, 7),
            make_algebra(AlgebraKind::A(0), 0),
            make_algebra(AlgebraKind::A(1), 0),
            make_algebra(AlgebraKind::A(2), 0),
            make_algebra(AlgebraKind::E(2), 0),
            make_algebra(AlgebraKind::F, 0),
            make_algebra(AlgebraKind::G, 0),
        ];
        for p in &algebras {
            let mut memo = HashMap::new();
            for m in monomials_up_to(p.num_generators(), 8) {
                let forms = all_normal_forms(p, &m, &mut memo);
                assert_eq!(
                    forms.len(),
                    1,
                    "{} not confluent at {}",
                    p.name(),
                    format_monomial(&m, p)
                );
                assert_eq!(forms.into_iter().next().unwrap(), p.normalize(&m));
            }
        }
    }

    /// Independent enumeration: every exponent vector in a box, filtered by
    /// degree and by "no rule left-hand side divides it".
    fn brute_basis(p: &Presentation, d: BiDegree) -> BTreeSet<Monomial> {
        let n = p.num_generators();
        let mut out = BTreeSet::new();
        for mut m in monomials_up_to(n, 14) {
            let deg = p.degree(&m);
            if deg.stem != d.stem || deg.weight < d.weight {
                continue;
            }
            if p.rules().iter().any(|r| r.lhs(n).divides(&m)) {
                continue;
            }
            m.tau = (deg.weight - d.weight) as u32;
            out.insert(m);
        }
        out
    }

    #[test]
    fn basis_examples() {
        let a = make_algebra(AlgebraKind::Steenrod, 12);
        let show = |d| {
            a.basis(d)
                .unwrap()
                .iter()
                .map(|m| format_monomial(m, &a))
                .collect::<Vec<_>>()
        };
        assert_eq!(show(BiDegree::new(1, 0)), ["t0"]);
        assert_eq!(show(BiDegree::new(0, -1)), ["t"]);
        assert_eq!(show(BiDegree::new(6, 3)), ["x1^3", "x2"]);
        for s in 0..=12 {
            for w in -3..=7 {
                let d = BiDegree::new(s, w);
                let got: BTreeSet<Monomial> = a.basis(d).unwrap().into_iter().collect();
                assert_eq!(got, brute_basis(&a, d), "A at {d}");
            }
        }
        assert!(matches!(
            a.basis(BiDegree::new(13, 2)),
            Err(AlgebraError::IndexBound { .. })
        ));
    }

    #[test]
    fn finite_ranks() {
        for n in 0..=3 {
            let e = make_algebra(AlgebraKind::E(n), 0);
            assert_eq!(e.poincare(40).unwrap().total(), 1 << (n + 1));
        }
        let a1 = make_algebra(AlgebraKind::A(1), 0);
        assert_eq!(a1.poincare(20).unwrap().total(), 8);
        let names: BTreeSet<String> = (0..=20)
            .flat_map(|s| a1.tau_free_basis_in_stem(s).unwrap())
            .map(|m| format_monomial(&m, &a1))
            .collect();
        let expected: BTreeSet<String> = ["1", "t0", "t1", "x1", "t0*t1", "t0*x1", "t1*x1", "t0*t1*x1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(names, expected);
        assert_eq!(make_algebra(AlgebraKind::A(2), 0).poincare(40).unwrap().total(), 64);
        assert_eq!(make_algebra(AlgebraKind::F, 0).poincare(40).unwrap().total(), 16);
        assert_eq!(make_algebra(AlgebraKind::G, 0).poincare(40).unwrap().total(), 32);
    }

    #[test]
    fn a0_equals_e0() {
        let a0 = make_algebra(AlgebraKind::A(0), 0);
        let e0 = make_algebra(AlgebraKind::E(0), 0);
        for s in 0..=20 {
            for w in -2..=10 {
                let d = BiDegree::new(s, w);
                let x: Vec<String> = a0.basis(d).unwrap().iter().map(|m| format_monomial(m, &a0)).collect();
                let y: Vec<String> = e0.basis(d).unwrap().iter().map(|m| format_monomial(m, &e0)).collect();
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn steenrod_weight_window() {
        // tau-free monomials of stem s have weight between (s - #tau_i)/2 and s/2
        let a = make_algebra(AlgebraKind::Steenrod, 40);
        for s in 0..=40 {
            let taus = a
                .generators()
                .iter()
                .filter(|g| matches!(g.kind, GenKind::TauI(_)) && g.degree.stem <= s)
                .count() as i32;
            for m in a.tau_free_basis_in_stem(s).unwrap() {
                let w = a.degree(&m).weight;
                assert!(
                    2 * w <= s && 2 * w >= s - taus,
                    "{} at ({s},{w})",
                    format_monomial(&m, &a)
                );
            }
        }
    }

    #[test]
    fn bp_family_presentations() {
        // H_*(BP<n>) is the Steenrod presentation with tau_0..tau_n removed
        let a = make_algebra(AlgebraKind::Steenrod, 24);
        let h0 = make_algebra(AlgebraKind::HBPn(0), 24);
        assert!(h0.generator_index(GenKind::TauI(0)).is_none());
        assert!(h0.generator_index(GenKind::TauI(1)).is_some());
        let hbp = make_algebra(AlgebraKind::HBP, 24).poincare(24).unwrap();
        let pibp = make_algebra(AlgebraKind::PiBP, 24).poincare(24).unwrap();
        // xi_n and v_n share degrees, so the two polynomial rings have equal ranks
        assert_eq!(hbp, pibp);
        let bpbp = make_algebra(AlgebraKind::BPBP, 24).poincare(24).unwrap();
        assert_eq!(bpbp.get(BiDegree::new(2, 1)), 2);
        assert_eq!(a.poincare(24).unwrap().get(BiDegree::new(1, 0)), 1);
    }

    fn basis_monomials(p: &Presentation, stem_max: i32) -> Vec<Monomial> {
        (0..=stem_max)
            .flat_map(|s| p.tau_free_basis_in_stem(s).unwrap())
            .collect()
    }

    #[test]
    fn homogeneity_of_products() {
        let a = make_algebra(AlgebraKind::Steenrod, 20);
        let basis = basis_monomials(&a, 20);
        for x in &basis {
            for y in &basis {
                let (dx, dy) = (a.degree(x), a.degree(y));
                if dx.stem + dy.stem > 20 {
                    continue;
                }
                if let Some(z) = a.multiply_monomials(x, y) {
                    assert_eq!(a.degree(&z), dx + dy);
                }
            }
        }
    }

    #[test]
    fn associative_and_commutative() {
        let algebras = [
            make_algebra(AlgebraKind::Steenrod, 14),
            make_algebra(AlgebraKind::A(2), 0),
            make_algebra(AlgebraKind::G, 0),
        ];
        for p in &algebras {
            let basis = basis_monomials(p, 14);
            for x in &basis {
                for y in &basis {
                    let sxy = p.degree(x).stem + p.degree(y).stem;
                    if sxy > 14 {
                        continue;
                    }
                    let ex = Element::from_monomial(x.clone());
                    let ey = Element::from_monomial(y.clone());
                    let xy = p.multiply(&ex, &ey);
                    assert_eq!(xy, p.multiply(&ey, &ex));
                    for z in &basis {
                        if sxy + p.degree(z).stem > 14 {
                            continue;
                        }
                        let ez = Element::from_monomial(z.clone());
                        assert_eq!(p.multiply(&xy, &ez), p.multiply(&ex, &p.multiply(&ey, &ez)));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn element_text_round_trips(exps in proptest::collection::vec(0u32..4, 6), tau in 0u32..3) {
            let a = make_algebra(AlgebraKind::Steenrod, 30);
            let mut m = a.one();
            m.tau = tau;
            for (i, e) in exps.iter().enumerate() {
                m.exps[i] = *e;
            }
            if let Some(n) = a.normalize(&m) {
                let e = Element::from_monomial(n);
                let text = format_element(&e, &a);
                prop_assert_eq!(parse_element(&text, &a).unwrap(), e);
            }
        }
    }
}
