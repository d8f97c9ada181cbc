use std::collections::BTreeSet;

/// A monomial `tau^tau * prod g_i^exps[i]` over a presentation's generators.
///
/// The derived order is lexicographic on `(tau, exps)`, which is the monomial
/// order used for every deterministic listing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub tau: u32,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_generators: usize) -> Self {
        Monomial {
            tau: 0,
            exps: vec![0; num_generators],
        }
    }

    pub fn is_one(&self) -> bool {
        self.tau == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// True if only tau occurs.
    pub fn is_tau_power(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The same monomial with the tau factor removed.
    pub fn tau_free(&self) -> Monomial {
        Monomial {
            tau: 0,
            exps: self.exps.clone(),
        }
    }

    pub fn with_tau(mut self, tau: u32) -> Monomial {
        self.tau = tau;
        self
    }

    /// Unreduced product.
    pub fn product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            tau: self.tau + other.tau,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.tau <= other.tau && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            tau: other.tau - self.tau,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }
}

/// An `F2`-linear combination of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Element(BTreeSet<Monomial>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeSet::new())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_monomial(m);
        e
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

    /// Adds a monomial with characteristic-2 cancellation.
    pub fn add_monomial(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for m in other.iter() {
            self.add_monomial(m.clone());
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.0.contains(m)
    }

    /// Ascending monomial order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.0.iter()
    }

    /// Multiplies every term by `tau^k`.
    pub fn tau_shift(&self, k: u32) -> Element {
        Element(
            self.0
                .iter()
                .map(|m| {
                    let mut m = m.clone();
                    m.tau += k;
                    m
                })
                .collect(),
        )
    }
}

impl FromIterator<Monomial> for Element {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut e = Element::zero();
        for m in iter {
            e.add_monomial(m);
        }
        e
    }
}
