use std::fmt;

use fixedbitset::FixedBitSet;

/// Index of a hyperplane within its complex. The order is fixed when the
/// complex is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperplaneId(pub usize);

/// Index of an original vertex within its complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A point of the Hamming cube on a finite hyperplane set: the orientation
/// `H -> {+1, -1}`, stored as the set of hyperplanes carrying sign `-1`,
/// i.e. the hyperplanes separating the point from the base vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    minus: FixedBitSet,
}

impl SignVector {
    /// The base orientation: `+1` on every hyperplane.
    pub fn all_plus(len: usize) -> Self {
        SignVector { minus: FixedBitSet::with_capacity(len) }
    }

    pub fn from_minus_set(len: usize, minus: impl IntoIterator<Item = HyperplaneId>) -> Self {
        let mut v = SignVector::all_plus(len);
        for h in minus {
            v.minus.insert(h.0);
        }
        v
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut v = SignVector::all_plus(signs.len());
        for (i, s) in signs.iter().enumerate() {
            if *s == Sign::Minus {
                v.minus.insert(i);
            }
        }
        v
    }

    /// Number of hyperplanes the vector is defined on.
    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.len() == 0
    }

    pub fn sign(&self, h: HyperplaneId) -> Sign {
        if self.minus.contains(h.0) {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn set(&mut self, h: HyperplaneId, s: Sign) {
        self.minus.set(h.0, s == Sign::Minus);
    }

    pub fn flipped(&self, h: HyperplaneId) -> Self {
        let mut v = self.clone();
        v.minus.toggle(h.0);
        v
    }

    /// Hyperplanes with sign `-1`.
    pub fn minus_set(&self) -> impl Iterator<Item = HyperplaneId> + '_ {
        self.minus.ones().map(HyperplaneId)
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|i| self.sign(HyperplaneId(i))).collect()
    }

    /// Hyperplanes on which the two vectors differ.
    pub fn separators(&self, other: &SignVector) -> Vec<HyperplaneId> {
        self.minus.symmetric_difference(&other.minus).map(HyperplaneId).collect()
    }

    /// Number of separating hyperplanes.
    pub fn distance(&self, other: &SignVector) -> usize {
        self.minus.symmetric_difference_count(&other.minus)
    }

    /// Per-hyperplane majority of three vectors.
    pub fn median(x: &SignVector, y: &SignVector, z: &SignVector) -> SignVector {
        let mut xy = x.minus.clone();
        xy.intersect_with(&y.minus);
        let mut yz = y.minus.clone();
        yz.intersect_with(&z.minus);
        let mut xz = x.minus.clone();
        xz.intersect_with(&z.minus);
        xy.union_with(&yz);
        xy.union_with(&xz);
        SignVector { minus: xy }
    }

    /// `self` lies in the interval `[x, y]`: no hyperplane separates it from
    /// both endpoints.
    pub fn in_interval(&self, x: &SignVector, y: &SignVector) -> bool {
        let mut sx = self.minus.clone();
        sx.symmetric_difference_with(&x.minus);
        let mut sy = self.minus.clone();
        sy.symmetric_difference_with(&y.minus);
        sx.is_disjoint(&sy)
    }

    /// Re-express the vector relative to another base orientation.
    pub fn relative_to(&self, base: &SignVector) -> SignVector {
        let mut m = self.minus.clone();
        m.symmetric_difference_with(&base.minus);
        SignVector { minus: m }
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector(")?;
        for s in self.signs() {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}
