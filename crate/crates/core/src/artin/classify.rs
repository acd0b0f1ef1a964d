//! Sphericity of parabolic subgroups through the classification of finite
//! irreducible Coxeter groups.
//!
//! The Coxeter diagram of `J` has an edge labelled `m` between `i` and `j`
//! whenever `M_ij >= 3`. Each connected component must be a tree matching
//! one of the templates A_n, B_n, D_n, E_6..8, F_4, H_3, H_4 or I_2(m);
//! matching compares canonical encodings of labelled trees.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{CoxeterMatrix, Entry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl CoxeterType {
    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) | CoxeterType::E(n) | CoxeterType::H(n) => n,
            CoxeterType::F4 => 4,
            CoxeterType::I2(_) => 2,
        }
    }

    /// Order of the finite Coxeter group.
    pub fn order(self) -> BigUint {
        let fact = |n: usize| (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
        match self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => (BigUint::one() << n) * fact(n),
            CoxeterType::D(n) => (BigUint::one() << (n - 1)) * fact(n),
            CoxeterType::E(6) => BigUint::from(51_840u32),
            CoxeterType::E(7) => BigUint::from(2_903_040u32),
            CoxeterType::E(_) => BigUint::from(696_729_600u32),
            CoxeterType::F4 => BigUint::from(1_152u32),
            CoxeterType::H(3) => BigUint::from(120u32),
            CoxeterType::H(_) => BigUint::from(14_400u32),
            CoxeterType::I2(m) => BigUint::from(2 * m),
        }
    }

    /// Edges `(i, j, label)` of the template diagram on nodes `0..rank`.
    fn template(self) -> Vec<(usize, usize, u32)> {
        let path = |n: usize| -> Vec<(usize, usize, u32)> { (1..n).map(|i| (i - 1, i, 3)).collect() };
        match self {
            CoxeterType::A(n) => path(n),
            CoxeterType::B(n) => {
                let mut e = path(n);
                e[0].2 = 4;
                e
            }
            CoxeterType::D(n) => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1, 3));
                e
            }
            CoxeterType::E(n) => {
                let mut e = path(n - 1);
                e.push((2, n - 1, 3));
                e
            }
            CoxeterType::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            CoxeterType::H(n) => {
                let mut e = path(n);
                e[0].2 = 5;
                e
            }
            CoxeterType::I2(m) => vec![(0, 1, m)],
        }
    }

    /// Types of the given rank worth comparing against; `label` is the
    /// single edge label of a rank-two diagram.
    fn candidates(rank: usize, label: Option<u32>) -> Vec<CoxeterType> {
        let mut c = vec![CoxeterType::A(rank)];
        if rank >= 2 {
            c.push(CoxeterType::B(rank));
        }
        if rank >= 4 {
            c.push(CoxeterType::D(rank));
        }
        if (6..=8).contains(&rank) {
            c.push(CoxeterType::E(rank));
        }
        if rank == 4 {
            c.push(CoxeterType::F4);
        }
        if rank == 3 || rank == 4 {
            c.push(CoxeterType::H(rank));
        }
        if rank == 2 {
            if let Some(m) = label.filter(|&m| m >= 5) {
                c.push(CoxeterType::I2(m));
            }
        }
        c
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E(n) => write!(f, "E{n}"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::H(n) => write!(f, "H{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibleComponent {
    pub generators: Vec<String>,
    #[serde(rename = "type")]
    pub kind: CoxeterType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Sphericity {
    Spherical {
        components: Vec<IrreducibleComponent>,
        /// Order of the parabolic Coxeter group, as a decimal string.
        order: String,
    },
    NonSpherical {
        reason: String,
        generators: Vec<String>,
    },
}

impl Sphericity {
    pub fn is_spherical(&self) -> bool {
        matches!(self, Sphericity::Spherical { .. })
    }

    /// `A1xA1`-style product of the component types; empty for the trivial
    /// group.
    pub fn type_name(&self) -> Option<String> {
        match self {
            Sphericity::Spherical { components, .. } => {
                let mut names: Vec<String> = components.iter().map(|c| c.kind.to_string()).collect();
                names.sort();
                Some(if names.is_empty() { "trivial".into() } else { names.join("x") })
            }
            Sphericity::NonSpherical { .. } => None,
        }
    }
}

/// Canonical encoding of a labelled tree, minimised over all roots.
fn canonical_tree(n: usize, edges: &[(usize, usize, u32)]) -> String {
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for &(i, j, m) in edges {
        adj[i].push((j, m));
        adj[j].push((i, m));
    }
    fn encode(v: usize, parent: Option<usize>, adj: &[Vec<(usize, u32)>]) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|(u, _)| Some(*u) != parent)
            .map(|&(u, m)| format!("{m}{}", encode(u, Some(v), adj)))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| encode(r, None, &adj)).min().unwrap_or_default()
}

/// Decides whether the parabolic subgroup on `j` (indices into `m`) is
/// finite, returning its irreducible decomposition when it is.
pub fn spherical_classify(m: &CoxeterMatrix, j: &[usize]) -> Sphericity {
    let names = |idx: &[usize]| idx.iter().map(|&i| m.generators()[i].clone()).collect::<Vec<_>>();
    let mut j: Vec<usize> = j.to_vec();
    j.sort_unstable();
    j.dedup();
    for (p, &a) in j.iter().enumerate() {
        for &b in &j[p + 1..] {
            if m.entry(a, b) == Entry::Infinity {
                return Sphericity::NonSpherical {
                    reason: format!("{} and {} generate an infinite dihedral group", m.generators()[a], m.generators()[b]),
                    generators: names(&[a, b]),
                };
            }
        }
    }
    // connected components of the Coxeter diagram (edges with label >= 3)
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &start in &j {
        if comp_of.contains_key(&start) {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp_of.insert(start, id);
        while let Some(v) = stack.pop() {
            members.push(v);
            for &u in &j {
                if !comp_of.contains_key(&u) && matches!(m.entry(v, u), Entry::Finite(l) if l >= 3) {
                    comp_of.insert(u, id);
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut components = Vec::new();
    let mut order = BigUint::one();
    for members in comps {
        let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut edges = Vec::new();
        for (p, &a) in members.iter().enumerate() {
            for &b in &members[p + 1..] {
                if let Entry::Finite(l) = m.entry(a, b) {
                    if l >= 3 {
                        edges.push((local[&a], local[&b], l));
                    }
                }
            }
        }
        if edges.len() + 1 != members.len() {
            return Sphericity::NonSpherical {
                reason: "the Coxeter diagram contains a cycle".into(),
                generators: names(&members),
            };
        }
        let label = if members.len() == 2 { Some(edges[0].2) } else { None };
        let canon = canonical_tree(members.len(), &edges);
        let kind = CoxeterType::candidates(members.len(), label)
            .into_iter()
            .find(|t| canonical_tree(t.rank(), &t.template()) == canon);
        match kind {
            Some(kind) => {
                order *= kind.order();
                components.push(IrreducibleComponent { generators: names(&members), kind });
            }
            None => {
                return Sphericity::NonSpherical {
                    reason: "a component of the Coxeter diagram is not a finite type".into(),
                    generators: names(&members),
                }
            }
        }
    }
    Sphericity::Spherical { components, order: order.to_string() }
}
