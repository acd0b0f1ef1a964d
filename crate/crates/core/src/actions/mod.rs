//! Finite group actions on finite complexes, orbit and coset data, and the
//! construction of almost-invariant measures on the group from measures on
//! the complex and on the vertex stabilizers.

mod builtin;
mod certificate;
mod orbit;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::cube::{CubeComplex, HyperplaneId, Sign, SignVector, VertexId};
use crate::error::{Error, Result};

pub use builtin::{builtin_generators, cube_symmetry_generators, square_dihedral_generators, BUILTIN_ACTIONS};
pub use certificate::{
    build_mu, compute_et, induce_nu, verify_mu, Certificate, CertificateInput, InducedNu, MuVerification, StabFamily,
};
pub use orbit::{orbit_transversal, sigma_split, OrbitData, StabilizerData};

/// Default bound on the order of the generated group.
pub const DEFAULT_GROUP_CAP: usize = 10_000;
/// Above this many vertex triples the median check is sampled.
pub const EXHAUSTIVE_TRIPLES: usize = 2_000_000;
pub const SAMPLED_TRIPLES: usize = 200_000;

/// A group element, numbered in shortlex order of its normal form over the
/// generator names (the identity is `ElemId(0)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub usize);

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub element: ElemId,
}

#[derive(Debug, Clone, Copy)]
pub struct ActionOptions {
    pub cap: usize,
    pub seed: u64,
}

impl Default for ActionOptions {
    fn default() -> Self {
        ActionOptions { cap: DEFAULT_GROUP_CAP, seed: 0 }
    }
}

/// A validated action of a finite group on the vertices of a complex.
#[derive(Debug, Clone)]
pub struct GroupAction {
    generators: Vec<Generator>,
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, ElemId>,
    inverse: Vec<ElemId>,
    words: Vec<Vec<usize>>,
    /// Per element, image hyperplane and whether the sides are exchanged.
    hyperplane_maps: Vec<Vec<(HyperplaneId, bool)>>,
    table: Option<Vec<ElemId>>,
}

/// Checks that each generator is an automorphism of the complex (edges and
/// medians preserved) and closes the generators up to a group.
///
/// Generators are processed in name order; the group is enumerated breadth
/// first, so element ids follow word length and then lexicographic order of
/// generator names.
pub fn validate_action(
    c: &CubeComplex,
    generators: Vec<(String, Vec<VertexId>)>,
    opts: ActionOptions,
) -> Result<GroupAction> {
    let nv = c.vertex_count();
    let mut gens = generators;
    gens.sort_by(|a, b| a.0.cmp(&b.0));
    for w in gens.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Action(format!("generator `{}` given twice", w[0].0)));
        }
    }
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(gens.len());
    for (name, p) in &gens {
        if p.len() != nv {
            return Err(Error::Action(format!("generator `{name}` maps {} of {nv} vertices", p.len())));
        }
        let mut hit = FixedBitSet::with_capacity(nv);
        for (v, img) in p.iter().enumerate() {
            if img.0 >= nv || hit.put(img.0) {
                return Err(Error::Action(format!(
                    "generator `{name}` is not a bijection (vertex `{}`)",
                    c.vertex_name(VertexId(v))
                )));
            }
        }
        let perm: Vec<usize> = p.iter().map(|v| v.0).collect();
        check_edges(c, name, &perm)?;
        check_medians(c, name, &perm, opts.seed)?;
        perms.push(perm);
    }
    let half_spaces = half_space_index(c);
    for ((name, _), perm) in gens.iter().zip(&perms) {
        hyperplane_map(c, &half_spaces, perm)
            .ok_or_else(|| Error::Action(format!("generator `{name}` does not permute the half spaces")))?;
    }

    // breadth-first closure
    let identity: Vec<usize> = (0..nv).collect();
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index = HashMap::from([(identity, ElemId(0))]);
    let mut head = 0;
    while head < elements.len() {
        for (gi, s) in perms.iter().enumerate() {
            let prod = compose(&elements[head], s);
            if !index.contains_key(&prod) {
                if elements.len() >= opts.cap {
                    return Err(Error::CapExceeded {
                        context: "closing the generators under composition".into(),
                        cap: opts.cap,
                        reached: elements.len() + 1,
                    });
                }
                index.insert(prod.clone(), ElemId(elements.len()));
                let mut w = words[head].clone();
                w.push(gi);
                words.push(w);
                elements.push(prod);
            }
        }
        head += 1;
    }
    let inverse = elements
        .iter()
        .map(|p| {
            let mut inv = vec![0; nv];
            for (v, &img) in p.iter().enumerate() {
                inv[img] = v;
            }
            index[&inv]
        })
        .collect();
    let hyperplane_maps = elements
        .iter()
        .map(|p| hyperplane_map(c, &half_spaces, p).expect("products of automorphisms permute half spaces"))
        .collect();
    let generators = gens.iter().map(|(name, _)| name.clone()).zip(perms.iter()).map(|(name, p)| Generator { name, element: index[p] }).collect();
    let mut action = GroupAction { generators, perms: elements, index, inverse, words, hyperplane_maps, table: None };
    let order = action.order();
    if order <= 2048 {
        let mut table = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                table.push(action.compose_lookup(ElemId(g), ElemId(h)));
            }
        }
        action.table = Some(table);
    }
    Ok(action)
}

fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    h.iter().map(|&v| g[v]).collect()
}

fn check_edges(c: &CubeComplex, name: &str, perm: &[usize]) -> Result<()> {
    for x in c.vertex_ids() {
        for y in c.vertex_ids() {
            if y <= x {
                continue;
            }
            let before = c.distance(x, y) == 1;
            let after = c.distance(VertexId(perm[x.0]), VertexId(perm[y.0])) == 1;
            if before != after {
                return Err(Error::Action(format!(
                    "generator `{name}` {} the edge {{{}, {}}}",
                    if before { "tears" } else { "creates" },
                    c.vertex_name(x),
                    c.vertex_name(y)
                )));
            }
        }
    }
    Ok(())
}

fn check_medians(c: &CubeComplex, name: &str, perm: &[usize], seed: u64) -> Result<()> {
    let nv = c.vertex_count();
    let check = |x: usize, y: usize, z: usize| -> Result<()> {
        let m = SignVector::median(c.vertex(VertexId(x)), c.vertex(VertexId(y)), c.vertex(VertexId(z)));
        let img = SignVector::median(
            c.vertex(VertexId(perm[x])),
            c.vertex(VertexId(perm[y])),
            c.vertex(VertexId(perm[z])),
        );
        let ok = match (c.lookup(&m), c.lookup(&img)) {
            (Some(m), Some(img)) => perm[m.0] == img.0,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Action(format!(
                "generator `{name}` does not commute with the median of ({}, {}, {})",
                c.vertex_name(VertexId(x)),
                c.vertex_name(VertexId(y)),
                c.vertex_name(VertexId(z))
            )))
        }
    };
    if nv.saturating_mul(nv).saturating_mul(nv) <= EXHAUSTIVE_TRIPLES {
        for x in 0..nv {
            for y in x + 1..nv {
                for z in y + 1..nv {
                    check(x, y, z)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_TRIPLES {
            check(rng.gen_range(0..nv), rng.gen_range(0..nv), rng.gen_range(0..nv))?;
        }
    }
    Ok(())
}

fn half_space_index(c: &CubeComplex) -> HashMap<FixedBitSet, (HyperplaneId, Sign)> {
    let mut map = HashMap::new();
    for h in c.hyperplanes() {
        map.insert(c.half_space(h, Sign::Minus).clone(), (h, Sign::Minus));
        map.insert(c.half_space(h, Sign::Plus).clone(), (h, Sign::Plus));
    }
    map
}

fn hyperplane_map(
    c: &CubeComplex,
    half_spaces: &HashMap<FixedBitSet, (HyperplaneId, Sign)>,
    perm: &[usize],
) -> Option<Vec<(HyperplaneId, bool)>> {
    c.hyperplanes()
        .map(|h| {
            let mut image = FixedBitSet::with_capacity(c.vertex_count());
            for v in c.half_space(h, Sign::Minus).ones() {
                image.insert(perm[v]);
            }
            half_spaces.get(&image).map(|&(k, side)| (k, side == Sign::Plus))
        })
        .collect()
}

impl GroupAction {
    pub fn vertex_count(&self) -> usize {
        self.perms[0].len()
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElemId> {
        (0..self.order()).map(ElemId)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Result<ElemId> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.element)
            .ok_or_else(|| Error::input(format!("unknown generator `{name}`")))
    }

    fn compose_lookup(&self, g: ElemId, h: ElemId) -> ElemId {
        self.index[&compose(&self.perms[g.0], &self.perms[h.0])]
    }

    /// The product `gh`, acting as `h` first and then `g`.
    pub fn mul(&self, g: ElemId, h: ElemId) -> ElemId {
        match &self.table {
            Some(t) => t[g.0 * self.order() + h.0],
            None => self.compose_lookup(g, h),
        }
    }

    pub fn inv(&self, g: ElemId) -> ElemId {
        self.inverse[g.0]
    }

    pub fn vertex_image(&self, g: ElemId, v: VertexId) -> VertexId {
        VertexId(self.perms[g.0][v.0])
    }

    /// The image of an arbitrary sign vector under the induced action on
    /// hyperplanes.
    pub fn act_on_vector(&self, g: ElemId, z: &SignVector) -> SignVector {
        let mut out = SignVector::all_plus(z.len());
        for (h, &(k, flip)) in self.hyperplane_maps[g.0].iter().enumerate() {
            let s = z.sign(HyperplaneId(h));
            out.set(k, if flip { s.flip() } else { s });
        }
        out
    }

    /// Hyperplane image and side exchange for every hyperplane.
    pub fn hyperplane_permutation(&self, g: ElemId) -> &[(HyperplaneId, bool)] {
        &self.hyperplane_maps[g.0]
    }

    /// Normal form of `g` as generator names; the identity is `e`.
    pub fn element_name(&self, g: ElemId) -> String {
        let w = &self.words[g.0];
        if w.is_empty() {
            "e".to_string()
        } else {
            w.iter().map(|&i| self.generators[i].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn word_length(&self, g: ElemId) -> usize {
        self.words[g.0].len()
    }

    /// Looks up an element from its normal-form name (or any word `a*b*..`).
    pub fn parse_element(&self, s: &str) -> Result<ElemId> {
        if s == "e" {
            return Ok(self.identity());
        }
        s.split('*').try_fold(self.identity(), |acc, name| Ok(self.mul(acc, self.generator(name.trim())?)))
    }

    pub fn orbit(&self, v: VertexId) -> Vec<VertexId> {
        let mut pts: Vec<VertexId> = self.elements().map(|g| self.vertex_image(g, v)).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn stabilizer(&self, v: VertexId) -> Vec<ElemId> {
        self.elements().filter(|&g| self.vertex_image(g, v) == v).collect()
    }

    pub fn element_of_permutation(&self, perm: &[VertexId]) -> Option<ElemId> {
        let p: Vec<usize> = perm.iter().map(|v| v.0).collect();
        self.index.get(&p).copied()
    }
}

/// Parses `{"generators":{"s":{"v0":"v1", ...}}}`; unlisted vertices are
/// fixed.
pub fn parse_action_json(c: &CubeComplex, text: &str) -> Result<Vec<(String, Vec<VertexId>)>> {
    let v: Value = serde_json::from_str(text)?;
    let gens = v
        .get("generators")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::input("action file needs a `generators` object"))?;
    let mut out = Vec::new();
    for (name, map) in gens {
        let map = map.as_object().ok_or_else(|| Error::input(format!("generator `{name}` must map names to names")))?;
        let mut perm: Vec<VertexId> = c.vertex_ids().collect();
        for (from, to) in map {
            let to = to.as_str().ok_or_else(|| Error::input(format!("generator `{name}`: image of `{from}` must be a string")))?;
            perm[c.vertex_id(from)?.0] = c.vertex_id(to)?;
        }
        out.push((name.clone(), perm));
    }
    Ok(out)
}
