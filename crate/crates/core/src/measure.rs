//! Finitely supported probability measures with exact rational masses.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A probability measure on a finite support. Masses are strictly positive
/// rationals summing to exactly one; zero masses are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbMeasure<K: Ord> {
    masses: BTreeMap<K, BigRational>,
}

impl<K: Ord + Clone> ProbMeasure<K> {
    /// Builds a measure, rejecting negative masses or a total other than one.
    pub fn new(masses: impl IntoIterator<Item = (K, BigRational)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (k, v) in masses {
            if v.is_negative() {
                return Err(Error::input(format!("negative mass {v}")));
            }
            if !v.is_zero() {
                let slot = out.entry(k).or_insert_with(BigRational::zero);
                *slot += v;
            }
        }
        let m = ProbMeasure { masses: out };
        if !m.total().is_one() {
            return Err(Error::input(format!("masses sum to {}, not 1", m.total())));
        }
        Ok(m)
    }

    pub fn point_mass(k: K) -> Self {
        ProbMeasure { masses: BTreeMap::from([(k, BigRational::one())]) }
    }

    /// Uniform measure on the given (deduplicated) support.
    pub fn uniform(support: impl IntoIterator<Item = K>) -> Result<Self> {
        let keys: std::collections::BTreeSet<K> = support.into_iter().collect();
        if keys.is_empty() {
            return Err(Error::input("uniform measure on an empty set"));
        }
        let mass = BigRational::new(BigInt::one(), BigInt::from(keys.len()));
        Ok(ProbMeasure { masses: keys.into_iter().map(|k| (k, mass.clone())).collect() })
    }

    /// Normalises non-negative integer weights by their total.
    pub fn normalize(weights: impl IntoIterator<Item = (K, BigUint)>) -> Result<Self> {
        let weights: Vec<(K, BigUint)> = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let total: BigUint = weights.iter().map(|(_, w)| w).sum();
        if total.is_zero() {
            return Err(Error::input("cannot normalise a zero weight vector"));
        }
        let total = BigInt::from(total);
        let masses = weights
            .into_iter()
            .map(|(k, w)| (k, BigRational::new(BigInt::from(w), total.clone())))
            .collect();
        Ok(ProbMeasure { masses })
    }

    pub fn mass(&self, k: &K) -> BigRational {
        self.masses.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.masses.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.masses.keys()
    }

    pub fn total(&self) -> BigRational {
        self.masses.values().fold(BigRational::zero(), |acc, v| acc + v)
    }

    pub fn is_probability(&self) -> bool {
        self.masses.values().all(|v| v.is_positive()) && self.total().is_one()
    }

    /// Image of the measure under `f`; masses landing on the same key add up.
    pub fn push_forward<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> ProbMeasure<K2> {
        let mut out: BTreeMap<K2, BigRational> = BTreeMap::new();
        for (k, v) in &self.masses {
            *out.entry(f(k)).or_insert_with(BigRational::zero) += v;
        }
        ProbMeasure { masses: out }
    }

    /// The l1 distance `sum_k |self(k) - other(k)|`.
    pub fn l1_distance(&self, other: &Self) -> BigRational {
        l1_distance(&self.masses, &other.masses)
    }

    pub fn into_map(self) -> BTreeMap<K, BigRational> {
        self.masses
    }

    /// Builds a measure from masses that are already known to form a
    /// probability vector. Callers re-check with [`Self::is_probability`].
    pub(crate) fn from_masses_unchecked(masses: BTreeMap<K, BigRational>) -> Self {
        let masses = masses.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        ProbMeasure { masses }
    }
}

/// l1 distance between two sparse rational vectors.
pub fn l1_distance<K: Ord>(a: &BTreeMap<K, BigRational>, b: &BTreeMap<K, BigRational>) -> BigRational {
    let mut acc = BigRational::zero();
    for (k, v) in a {
        match b.get(k) {
            Some(w) => acc += (v - w).abs(),
            None => acc += v.abs(),
        }
    }
    for (k, w) in b {
        if !a.contains_key(k) {
            acc += w.abs();
        }
    }
    acc
}

/// Renders a rational the way reports print it: `p/q`, or `p` when integral.
pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational `{s}`")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}
