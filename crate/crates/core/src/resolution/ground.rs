use std::collections::HashMap;

use crate::algebra::{format_monomial, make_algebra, parse_monomial, AlgebraKind, BiDegree, Monomial, Presentation};
use crate::hopf::{top_stem, Coalgebra};

use super::ResolutionError;

/// The dual of a finite quotient `B_*`, as an algebra over `F2`.
///
/// An `F2`-basis is `tau^k m^` for tau-free basis monomials `m` of `B_*`, in
/// cohomological degree `(s_m, w_m + k)`. Within a fixed degree the tau power
/// is implied, so module elements only ever record `m`.
#[derive(Debug)]
pub struct GroundAlgebra {
    kind: AlgebraKind,
    presentation: Presentation,
    basis: Vec<Monomial>,
    degrees: Vec<BiDegree>,
    index: HashMap<Monomial, usize>,
    by_stem: Vec<Vec<usize>>,
    /// `products[m][n]`: the `p` with `p^` occurring in `m^ n^`.
    products: Vec<Vec<Vec<usize>>>,
}

impl GroundAlgebra {
    pub fn new(kind: AlgebraKind) -> Result<Self, ResolutionError> {
        if !kind.is_finite() {
            return Err(ResolutionError::Unsupported(kind.to_string()));
        }
        let presentation = make_algebra(kind, 0);
        let coalgebra = Coalgebra::new(&presentation).map_err(|_| ResolutionError::Unsupported(kind.to_string()))?;
        let top = top_stem(&presentation);
        let mut basis = Vec::new();
        let mut by_stem = vec![Vec::new(); top as usize + 1];
        for s in 0..=top {
            let mut here = presentation.tau_free_basis_in_stem(s)?;
            here.sort_by_key(|m| (presentation.degree(m).weight, m.clone()));
            for m in here {
                by_stem[s as usize].push(basis.len());
                basis.push(m);
            }
        }
        let degrees: Vec<BiDegree> = basis.iter().map(|m| presentation.degree(m)).collect();
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let mut products = vec![vec![Vec::new(); n]; n];
        for (p, m) in basis.iter().enumerate() {
            for (l, r) in coalgebra.monomial_coproduct(m).iter() {
                let a = index[&l.tau_free()];
                let b = index[r];
                let list: &mut Vec<usize> = &mut products[a][b];
                match list.iter().position(|&x| x == p) {
                    Some(i) => {
                        list.remove(i);
                    }
                    None => list.push(p),
                }
            }
        }
        Ok(GroundAlgebra {
            kind,
            presentation,
            basis,
            degrees,
            index,
            by_stem,
            products,
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> BiDegree {
        self.degrees[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis monomials of stem `s`, by increasing weight.
    pub fn in_stem(&self, s: i32) -> &[usize] {
        if s < 0 {
            return &[];
        }
        self.by_stem.get(s as usize).map_or(&[], |v| v.as_slice())
    }

    /// `m^ · n^` as a list of `p^` (tau powers implied by degree).
    pub fn product(&self, m: usize, n: usize) -> &[usize] {
        &self.products[m][n]
    }

    /// Text for an element of degree `d` given by its monomial indices.
    pub fn format(&self, terms: &[usize], d: BiDegree) -> String {
        if terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|&i| {
                let k = d.weight - self.degrees[i].weight;
                let dual = format!("dual({})", format_monomial(&self.basis[i], &self.presentation));
                match k {
                    0 => dual,
                    1 => format!("t*{dual}"),
                    k => format!("t^{k}*{dual}"),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Inverse of [`GroundAlgebra::format`]; checks every term sits in degree `d`.
    pub fn parse(&self, text: &str, d: BiDegree) -> Result<Vec<usize>, ResolutionError> {
        let bad = || ResolutionError::Checkpoint(format!("bad element `{text}`"));
        let mut out = Vec::new();
        for term in text.split('+').map(str::trim) {
            let (k, dual) = match term.split_once('*') {
                Some((t, rest)) if t.starts_with('t') && rest.starts_with("dual(") => {
                    let k = match t {
                        "t" => 1,
                        _ => t
                            .strip_prefix("t^")
                            .and_then(|e| e.parse::<i32>().ok())
                            .ok_or_else(bad)?,
                    };
                    (k, rest)
                }
                _ => (0, term),
            };
            let inner = dual
                .strip_prefix("dual(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let m = parse_monomial(inner, &self.presentation).map_err(|_| bad())?;
            let i = self.index_of(&m).ok_or_else(bad)?;
            if self.degrees[i].stem != d.stem || self.degrees[i].weight + k != d.weight {
                return Err(bad());
            }
            out.push(i);
        }
        Ok(out)
    }
}
