use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use super::degree::BiDegree;
use super::element::{Element, Monomial};
use super::AlgebraError;

/// The generator families that occur in the presented algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    /// `tau_i`, printed `t<i>`.
    TauI(u32),
    /// `xi_i`, printed `x<i>`.
    Xi(u32),
    /// `v_i` of the Brown–Peterson coefficient ring.
    V(u32),
    /// `t_i` of `BP ∧ BP`, printed `u<i>` so it cannot clash with tau.
    U(u32),
}

impl GenKind {
    pub fn degree(self) -> BiDegree {
        match self {
            GenKind::TauI(i) => BiDegree::new((1 << (i + 1)) - 1, (1 << i) - 1),
            GenKind::Xi(i) | GenKind::V(i) | GenKind::U(i) => BiDegree::new((1 << (i + 1)) - 2, (1 << i) - 1),
        }
    }

    pub fn name(self) -> String {
        match self {
            GenKind::TauI(i) => format!("t{i}"),
            GenKind::Xi(i) => format!("x{i}"),
            GenKind::V(i) => format!("v{i}"),
            GenKind::U(i) => format!("u{i}"),
        }
    }

    pub fn parse(s: &str) -> Option<GenKind> {
        let (head, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit())?);
        let i: u32 = idx.parse().ok()?;
        if i > 24 {
            return None;
        }
        match head {
            "t" => Some(GenKind::TauI(i)),
            "x" if i >= 1 => Some(GenKind::Xi(i)),
            "v" if i >= 1 => Some(GenKind::V(i)),
            "u" if i >= 1 => Some(GenKind::U(i)),
            _ => None,
        }
    }
}

/// A rewrite rule. Only the three shapes that occur in the motivic dual
/// Steenrod algebra and its quotients are representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `g^2 -> tau * h`
    SquareToTau { generator: usize, target: usize },
    /// `g^2 -> 0`
    SquareToZero { generator: usize },
    /// `g^power -> 0`, `power` a power of two.
    PowerToZero { generator: usize, power: u32 },
}

impl Rule {
    pub fn generator(&self) -> usize {
        match *self {
            Rule::SquareToTau { generator, .. }
            | Rule::SquareToZero { generator }
            | Rule::PowerToZero { generator, .. } => generator,
        }
    }

    /// Exponent of the generator on the left-hand side.
    pub fn lhs_exponent(&self) -> u32 {
        match *self {
            Rule::SquareToTau { .. } | Rule::SquareToZero { .. } => 2,
            Rule::PowerToZero { power, .. } => power,
        }
    }

    /// Left-hand side as a monomial over `n` generators.
    pub fn lhs(&self, n: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.exps[self.generator()] = self.lhs_exponent();
        m
    }

    /// Right-hand side; `None` is zero.
    pub fn rhs(&self, n: usize) -> Option<Monomial> {
        match *self {
            Rule::SquareToTau { target, .. } => {
                let mut m = Monomial::one(n);
                m.tau = 1;
                m.exps[target] = 1;
                Some(m)
            }
            _ => None,
        }
    }
}

/// Named algebras that [`make_algebra`] knows how to present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// The full dual Steenrod algebra.
    Steenrod,
    /// `A(n)_*`.
    A(u32),
    /// `E(n)_*`.
    E(u32),
    /// Dual of the subalgebra generated by `Q0, Q1, Q2, P^1_2`.
    F,
    /// Dual of the subalgebra generated by `Q0, Q2, P^1_2, Sq2`.
    G,
    /// `H_*(BP)`.
    HBP,
    /// `H_*(BP<n>)`.
    HBPn(u32),
    /// Homotopy of the Brown–Peterson object, counted mod 2.
    PiBP,
    /// Homotopy of `BP ∧ BP`, counted mod 2.
    BPBP,
    /// The ground ring `F2[tau]`.
    Unit,
}

impl AlgebraKind {
    pub fn is_finite(self) -> bool {
        matches!(
            self,
            AlgebraKind::A(_) | AlgebraKind::E(_) | AlgebraKind::F | AlgebraKind::G | AlgebraKind::Unit
        )
    }

    /// Short name used in file headers and CLI flags.
    pub fn tag(self) -> String {
        match self {
            AlgebraKind::Steenrod => "A".into(),
            AlgebraKind::A(n) => format!("A{n}"),
            AlgebraKind::E(n) => format!("E{n}"),
            AlgebraKind::F => "F".into(),
            AlgebraKind::G => "G".into(),
            AlgebraKind::HBP => "H_BP".into(),
            AlgebraKind::HBPn(n) => format!("H_BPn{n}"),
            AlgebraKind::PiBP => "pi_BP".into(),
            AlgebraKind::BPBP => "BPBP".into(),
            AlgebraKind::Unit => "F2t".into(),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::A(n) => write!(f, "A({n})"),
            AlgebraKind::E(n) => write!(f, "E({n})"),
            AlgebraKind::HBPn(n) => write!(f, "H_BPn({n})"),
            AlgebraKind::Unit => write!(f, "F2[t]"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || AlgebraError::UnknownAlgebra(s.to_string());
        let index = |rest: &str| -> Result<u32, AlgebraError> {
            let rest = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| rest.strip_prefix('<').and_then(|r| r.strip_suffix('>')))
                .unwrap_or(rest);
            rest.parse::<u32>().ok().filter(|&n| n <= 8).ok_or_else(unknown)
        };
        match s {
            "A" => return Ok(AlgebraKind::Steenrod),
            "F" => return Ok(AlgebraKind::F),
            "G" => return Ok(AlgebraKind::G),
            "H_BP" => return Ok(AlgebraKind::HBP),
            "pi_BP" => return Ok(AlgebraKind::PiBP),
            "BPBP" => return Ok(AlgebraKind::BPBP),
            "F2t" | "F2[t]" => return Ok(AlgebraKind::Unit),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("H_BPn") {
            return index(rest).map(AlgebraKind::HBPn);
        }
        if let Some(rest) = s.strip_prefix('A') {
            return index(rest).map(AlgebraKind::A);
        }
        if let Some(rest) = s.strip_prefix('E') {
            return index(rest).map(AlgebraKind::E);
        }
        Err(unknown())
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub kind: GenKind,
    pub degree: BiDegree,
}

/// A presented bigraded commutative algebra over `F2[tau]`.
///
/// Generators are ordered `tau_0, tau_1, …, xi_1, xi_2, …, v_*, u_*`; monomial
/// order is lexicographic on `(tau, exponents…)`. Presentations of infinite
/// algebras carry a stem limit: they hold every generator that can occur in
/// stems up to the limit, and basis queries beyond it are refused.
#[derive(Clone, Debug)]
pub struct Presentation {
    kind: AlgebraKind,
    generators: Vec<Generator>,
    rules: Vec<Rule>,
    /// Per generator: largest exponent allowed in a normal form.
    max_exp: Vec<Option<u32>>,
    stem_limit: Option<i32>,
    index: HashMap<GenKind, usize>,
}

/// Builds the presentation of `kind`. `stem_limit` bounds the generators
/// retained for infinite algebras and is ignored for finite ones.
pub fn make_algebra(kind: AlgebraKind, stem_limit: i32) -> Presentation {
    use AlgebraKind::*;
    use GenKind::*;
    let stem_limit = stem_limit.max(0);
    let fits = |g: GenKind| g.degree().stem <= stem_limit;
    let mut gens: Vec<GenKind> = Vec::new();
    // (lhs generator, rule shape) collected by kind
    let mut square_to_tau: Vec<(GenKind, GenKind)> = Vec::new();
    let mut square_to_zero: Vec<GenKind> = Vec::new();
    let mut power_to_zero: Vec<(GenKind, u32)> = Vec::new();

    match kind {
        Steenrod | HBPn(_) => {
            let first = if let HBPn(n) = kind { n + 1 } else { 0 };
            let mut i = first;
            while fits(TauI(i)) {
                gens.push(TauI(i));
                square_to_tau.push((TauI(i), Xi(i + 1)));
                i += 1;
            }
            let top_tau = i;
            let mut j = 1;
            while fits(Xi(j)) || (top_tau > first && j <= top_tau) {
                gens.push(Xi(j));
                j += 1;
            }
        }
        HBP => {
            let mut j = 1;
            while fits(Xi(j)) {
                gens.push(Xi(j));
                j += 1;
            }
        }
        PiBP | BPBP => {
            let mut j = 1;
            while fits(V(j)) {
                gens.push(V(j));
                j += 1;
            }
            if kind == BPBP {
                for k in 1..j {
                    gens.push(U(k));
                }
            }
        }
        A(n) => {
            for i in 0..=n {
                gens.push(TauI(i));
            }
            for i in 1..=n {
                gens.push(Xi(i));
            }
            for i in 0..n {
                square_to_tau.push((TauI(i), Xi(i + 1)));
            }
            square_to_zero.push(TauI(n));
            for i in 1..=n {
                power_to_zero.push((Xi(i), 1 << (n + 1 - i)));
            }
        }
        E(n) => {
            for i in 0..=n {
                gens.push(TauI(i));
                square_to_zero.push(TauI(i));
            }
        }
        F => {
            gens.extend([TauI(0), TauI(1), TauI(2), Xi(2)]);
            square_to_zero.extend([TauI(0), TauI(2)]);
            square_to_tau.push((TauI(1), Xi(2)));
            power_to_zero.push((Xi(2), 2));
        }
        G => {
            gens.extend([TauI(0), TauI(1), TauI(2), Xi(1), Xi(2)]);
            square_to_tau.push((TauI(0), Xi(1)));
            square_to_tau.push((TauI(1), Xi(2)));
            square_to_zero.push(TauI(2));
            power_to_zero.push((Xi(1), 2));
            power_to_zero.push((Xi(2), 2));
        }
        Unit => {}
    }
    gens.sort();
    gens.dedup();

    let index: HashMap<GenKind, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut rules = Vec::new();
    let mut max_exp = vec![None; gens.len()];
    for (g, h) in square_to_tau {
        rules.push(Rule::SquareToTau {
            generator: index[&g],
            target: index[&h],
        });
        max_exp[index[&g]] = Some(1);
    }
    for g in square_to_zero {
        rules.push(Rule::SquareToZero { generator: index[&g] });
        max_exp[index[&g]] = Some(1);
    }
    for (g, p) in power_to_zero {
        rules.push(Rule::PowerToZero {
            generator: index[&g],
            power: p,
        });
        max_exp[index[&g]] = Some(p - 1);
    }
    rules.sort_by_key(|r| r.generator());

    Presentation {
        kind,
        generators: gens
            .into_iter()
            .map(|kind| Generator {
                kind,
                degree: kind.degree(),
            })
            .collect(),
        rules,
        max_exp,
        stem_limit: (!kind.is_finite()).then_some(stem_limit),
        index,
    }
}

/// Parses an algebra name (`A`, `A(2)`, `E1`, `F`, `G`, `H_BP`, `H_BPn(1)`,
/// `pi_BP`, `BPBP`) and builds its presentation.
pub fn make_algebra_by_name(name: &str, stem_limit: i32) -> Result<Presentation, AlgebraError> {
    Ok(make_algebra(name.parse()?, stem_limit))
}

impl Presentation {
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn stem_limit(&self) -> Option<i32> {
        self.stem_limit
    }

    /// Least `N` with `stem(xi_{N+1}) > limit`, for infinite presentations.
    pub fn index_bound(&self) -> Option<u32> {
        self.stem_limit.map(|limit| {
            let mut n = 0;
            while GenKind::Xi(n + 1).degree().stem <= limit {
                n += 1;
            }
            n
        })
    }

    pub fn generator_index(&self, kind: GenKind) -> Option<usize> {
        self.index.get(&kind).copied()
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.num_generators())
    }

    pub fn tau_power(&self, k: u32) -> Monomial {
        let mut m = self.one();
        m.tau = k;
        m
    }

    pub fn generator(&self, kind: GenKind) -> Option<Monomial> {
        let i = self.generator_index(kind)?;
        let mut m = self.one();
        m.exps[i] = 1;
        Some(m)
    }

    pub fn degree(&self, m: &Monomial) -> BiDegree {
        let mut d = BiDegree::new(0, -(m.tau as i32));
        for (g, &e) in self.generators.iter().zip(&m.exps) {
            d.stem += g.degree.stem * e as i32;
            d.weight += g.degree.weight * e as i32;
        }
        d
    }

    /// Degree of a nonzero element; `None` for zero.
    pub fn element_degree(&self, e: &Element) -> Option<BiDegree> {
        e.iter().next().map(|m| self.degree(m))
    }

    pub fn is_homogeneous(&self, e: &Element) -> bool {
        let mut it = e.iter().map(|m| self.degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.exps
            .iter()
            .zip(&self.max_exp)
            .all(|(&e, bound)| bound.is_none_or(|b| e <= b))
    }

    /// Rewrites `m` to normal form; `None` when it reduces to zero.
    ///
    /// Every allowed rule has a single-generator left-hand side and a
    /// monomial (or zero) right-hand side, so the normal form of a monomial
    /// is a monomial or zero.
    pub fn normalize(&self, m: &Monomial) -> Option<Monomial> {
        let mut m = m.clone();
        loop {
            let mut changed = false;
            for rule in &self.rules {
                let g = rule.generator();
                match *rule {
                    Rule::SquareToTau { target, .. } => {
                        let e = m.exps[g];
                        if e >= 2 {
                            m.exps[g] = e % 2;
                            m.tau += e / 2;
                            m.exps[target] += e / 2;
                            changed = true;
                        }
                    }
                    Rule::SquareToZero { .. } => {
                        if m.exps[g] >= 2 {
                            return None;
                        }
                    }
                    Rule::PowerToZero { power, .. } => {
                        if m.exps[g] >= power {
                            return None;
                        }
                    }
                }
            }
            if !changed {
                return Some(m);
            }
        }
    }

    pub fn normalize_element(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for m in e.iter() {
            if let Some(n) = self.normalize(m) {
                out.add_monomial(n);
            }
        }
        out
    }

    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        self.normalize(&a.product(b))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for x in a.iter() {
            for y in b.iter() {
                if let Some(m) = self.multiply_monomials(x, y) {
                    out.add_monomial(m);
                }
            }
        }
        out
    }

    fn check_stem(&self, stem: i32) -> Result<(), AlgebraError> {
        match self.stem_limit {
            Some(limit) if stem > limit => Err(AlgebraError::IndexBound {
                algebra: self.name(),
                stem,
                limit,
            }),
            _ => Ok(()),
        }
    }

    /// All tau-free normal monomials in stem `stem`, every weight, in
    /// descending monomial order.
    pub fn tau_free_basis_in_stem(&self, stem: i32) -> Result<Vec<Monomial>, AlgebraError> {
        self.check_stem(stem)?;
        let mut out = Vec::new();
        if stem < 0 {
            return Ok(out);
        }
        let mut cur = self.one();
        self.enumerate(0, stem, &mut cur, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    fn enumerate(&self, gen: usize, remaining: i32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if gen == self.generators.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let step = self.generators[gen].degree.stem;
        let mut e = 0u32;
        loop {
            let used = step * e as i32;
            if used > remaining || self.max_exp[gen].is_some_and(|b| e > b) {
                break;
            }
            cur.exps[gen] = e;
            self.enumerate(gen + 1, remaining - used, cur, out);
            e += 1;
        }
        cur.exps[gen] = 0;
    }

    /// All normal monomials of bidegree exactly `d` (tau-multiples
    /// included), in descending monomial order.
    pub fn basis(&self, d: BiDegree) -> Result<Vec<Monomial>, AlgebraError> {
        let mut out: Vec<Monomial> = self
            .tau_free_basis_in_stem(d.stem)?
            .into_iter()
            .filter_map(|mut m| {
                let w = self.degree(&m).weight;
                (w >= d.weight).then(|| {
                    m.tau = (w - d.weight) as u32;
                    m
                })
            })
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    /// tau-free ranks of the algebra as a free `F2[tau]`-module, through
    /// `stem_max`.
    pub fn poincare(&self, stem_max: i32) -> Result<RankTable, AlgebraError> {
        let mut table = RankTable::new(stem_max);
        for s in 0..=stem_max {
            for m in self.tau_free_basis_in_stem(s)? {
                table.increment(self.degree(&m), 1);
            }
        }
        Ok(table)
    }

    /// Image of a monomial of `source` under the quotient map to `self`:
    /// generators absent from `self` map to zero.
    pub fn project_from(&self, source: &Presentation, m: &Monomial) -> Option<Monomial> {
        let mut out = self.one();
        out.tau = m.tau;
        for (g, &e) in source.generators.iter().zip(&m.exps) {
            if e == 0 {
                continue;
            }
            let i = self.generator_index(g.kind)?;
            out.exps[i] = e;
        }
        self.normalize(&out)
    }

    /// Re-expresses a monomial of `source` over this presentation's
    /// generators without rewriting; `None` if a generator is missing.
    pub fn reindex_from(&self, source: &Presentation, m: &Monomial) -> Option<Monomial> {
        let mut out = self.one();
        out.tau = m.tau;
        for (g, &e) in source.generators.iter().zip(&m.exps) {
            if e != 0 {
                out.exps[self.generator_index(g.kind)?] = e;
            }
        }
        Some(out)
    }
}

/// Ranks of a bigraded free `F2[tau]`-module on tau-free generators, by
/// bidegree, through a stem bound.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RankTable {
    stem_max: i32,
    entries: BTreeMap<BiDegree, u64>,
}

impl RankTable {
    pub fn new(stem_max: i32) -> Self {
        RankTable {
            stem_max,
            entries: BTreeMap::new(),
        }
    }

    pub fn stem_max(&self) -> i32 {
        self.stem_max
    }

    pub fn increment(&mut self, d: BiDegree, by: u64) {
        if by > 0 && d.stem <= self.stem_max {
            *self.entries.entry(d).or_insert(0) += by;
        }
    }

    pub fn get(&self, d: BiDegree) -> u64 {
        self.entries.get(&d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (BiDegree, u64)> + '_ {
        self.entries.iter().map(|(&d, &n)| (d, n))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Total rank in one stem (the classical count, tau set to 1).
    pub fn stem_total(&self, stem: i32) -> u64 {
        self.iter().filter(|(d, _)| d.stem == stem).map(|(_, n)| n).sum()
    }

    /// Smallest and largest weight with nonzero rank in `stem`.
    pub fn weight_range(&self, stem: i32) -> Option<(i32, i32)> {
        let ws: Vec<i32> = self
            .iter()
            .filter(|(d, _)| d.stem == stem)
            .map(|(d, _)| d.weight)
            .collect();
        Some((*ws.iter().min()?, *ws.iter().max()?))
    }

    /// `F2`-dimension at `d` on the homological side, where tau lowers weight.
    pub fn homological_dim(&self, d: BiDegree) -> u64 {
        self.iter()
            .filter(|(e, _)| e.stem == d.stem && e.weight >= d.weight)
            .map(|(_, n)| n)
            .sum()
    }

    /// `F2`-dimension at `d` on the cohomological side, where tau raises weight.
    pub fn cohomological_dim(&self, d: BiDegree) -> u64 {
        self.iter()
            .filter(|(e, _)| e.stem == d.stem && e.weight <= d.weight)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn truncated(&self, stem_max: i32) -> RankTable {
        RankTable {
            stem_max,
            entries: self
                .entries
                .iter()
                .filter(|(d, _)| d.stem <= stem_max)
                .map(|(&d, &n)| (d, n))
                .collect(),
        }
    }
}
