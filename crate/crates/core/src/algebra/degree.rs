use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A (stem, weight) bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BiDegree {
    pub stem: i32,
    pub weight: i32,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { stem: 0, weight: 0 };

    pub const fn new(stem: i32, weight: i32) -> Self {
        BiDegree { stem, weight }
    }

    /// Degree of tau on the homological (dual Steenrod algebra) side.
    pub const TAU: BiDegree = BiDegree { stem: 0, weight: -1 };
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.stem + o.stem, self.weight + o.weight)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.stem - o.stem, self.weight - o.weight)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.stem, -self.weight)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.stem, self.weight)
    }
}

/// Chart coordinates: stem `s`, filtration `f`, weight `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriDegree {
    pub stem: i32,
    pub filtration: u32,
    pub weight: i32,
}

impl TriDegree {
    pub const fn new(stem: i32, filtration: u32, weight: i32) -> Self {
        TriDegree {
            stem,
            filtration,
            weight,
        }
    }

    /// Internal degree `t = s + f`.
    pub fn internal_stem(&self) -> i32 {
        self.stem + self.filtration as i32
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.stem, self.filtration, self.weight)
    }
}
