//! Standard complexes, finite truncations of infinite ones, and symbolic
//! annotations for the ideal points of the truncated families.
//!
//! Infinite complexes are only ever represented by a finite truncation plus
//! annotations: which vertices have infinitely many adjacent hyperplanes in
//! the untruncated family, and which ideal points exist. An ideal point is
//! given by a symbolic orientation rule on the whole infinite hyperplane
//! family; its restriction to the truncation is an ordinary sign vector.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::PathBuf;

use crate::cube::{CubeComplex, HyperplaneId, Sign, SignVector, VertexId};
use crate::error::{Error, Result};

/// Largest vertex count a family may be built with.
pub const MAX_VERTICES: usize = 1_000_000;
/// Largest `vertices * hyperplanes` product (bits of sign-vector storage).
pub const MAX_SIGN_BITS: usize = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// A single edge `x - y`.
    Edge,
    /// Path with `len` vertices `v0 .. v{len-1}`.
    Path(usize),
    /// Truncation `{0..w-1} x {0..h-1}` of the square tiling of the plane.
    Grid { w: usize, h: usize },
    /// Star with `m` leaves; truncation of the star with countably many leaves.
    Star(usize),
    /// Ball of radius `depth` around a vertex of the regular tree of the
    /// given valence.
    Tree { valence: usize, depth: usize },
    /// The `n`-cube.
    Cube(usize),
    Product(Box<FamilySpec>, Box<FamilySpec>),
    File(PathBuf),
}

impl FamilySpec {
    /// Parses `edge`, `path:L`, `grid:WxH`, `star:M`, `tree:V,D`, `cube:N`,
    /// `product(<f>,<f>)` and `file:<path>`.
    pub fn parse(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognised family `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number `{t}` in `{s}`")));
        if s == "edge" {
            return Ok(FamilySpec::Edge);
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            // try each comma outside parentheses; `tree:V,D` has one of its own
            let mut depth = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                    ',' if depth == 0 => {
                        if let (Ok(a), Ok(b)) = (FamilySpec::parse(&inner[..i]), FamilySpec::parse(&inner[i + 1..])) {
                            return Ok(FamilySpec::Product(Box::new(a), Box::new(b)));
                        }
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "path" => Ok(FamilySpec::Path(num(args)?)),
            "grid" => {
                let (w, h) = args.split_once(['x', 'X']).ok_or_else(bad)?;
                Ok(FamilySpec::Grid { w: num(w)?, h: num(h)? })
            }
            "star" => Ok(FamilySpec::Star(num(args)?)),
            "tree" => {
                let (v, d) = args.split_once(',').ok_or_else(bad)?;
                Ok(FamilySpec::Tree { valence: num(v)?, depth: num(d)? })
            }
            "cube" => Ok(FamilySpec::Cube(num(args)?)),
            "file" => Ok(FamilySpec::File(PathBuf::from(args))),
            _ => Err(bad()),
        }
    }

    fn vertex_count(&self) -> Option<usize> {
        match self {
            FamilySpec::Edge => Some(2),
            FamilySpec::Path(l) => Some(*l),
            FamilySpec::Grid { w, h } => w.checked_mul(*h),
            FamilySpec::Star(m) => m.checked_add(1),
            FamilySpec::Tree { valence, depth } => {
                let mut total: usize = 1;
                let mut layer: usize = 1;
                for level in 0..*depth {
                    let branching = if level == 0 { *valence } else { valence - 1 };
                    layer = layer.checked_mul(branching)?;
                    total = total.checked_add(layer)?;
                }
                Some(total)
            }
            FamilySpec::Cube(n) => 1usize.checked_shl(u32::try_from(*n).ok()?).filter(|_| *n < usize::BITS as usize),
            FamilySpec::Product(a, b) => a.vertex_count()?.checked_mul(b.vertex_count()?),
            FamilySpec::File(_) => Some(0),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Edge => write!(f, "edge"),
            FamilySpec::Path(l) => write!(f, "path:{l}"),
            FamilySpec::Grid { w, h } => write!(f, "grid:{w}x{h}"),
            FamilySpec::Star(m) => write!(f, "star:{m}"),
            FamilySpec::Tree { valence, depth } => write!(f, "tree:{valence},{depth}"),
            FamilySpec::Cube(n) => write!(f, "cube:{n}"),
            FamilySpec::Product(a, b) => write!(f, "product({a},{b})"),
            FamilySpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A coordinate of a point of the compactified grid: an integer or one of
/// the two ends of the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridCoord {
    NegInf,
    Finite(i64),
    PosInf,
}

impl GridCoord {
    /// Orientation of the cut at `n + 1/2` on this axis: `-1` exactly when
    /// the cut lies between `0` (the base) and the coordinate.
    pub fn sign_on(self, n: i64) -> Sign {
        let minus = match self {
            GridCoord::Finite(c) if c >= 0 => 0 <= n && n < c,
            GridCoord::Finite(c) => c <= n && n < 0,
            GridCoord::PosInf => n >= 0,
            GridCoord::NegInf => n < 0,
        };
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, GridCoord::Finite(_))
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridCoord::NegInf => write!(f, "-inf"),
            GridCoord::Finite(c) => write!(f, "{c}"),
            GridCoord::PosInf => write!(f, "+inf"),
        }
    }
}

/// Symbolic description of an ideal point on the whole infinite family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealModel {
    /// Point `(x, y)` of the compactified plane, at least one coordinate
    /// infinite. Vertical cuts `K_n` are read off `x`, horizontal `H_n` off `y`.
    Grid { x: GridCoord, y: GridCoord },
    /// End of the regular tree along the ray through a truncation leaf.
    TreeEnd { leaf: String },
}

/// An annotated ideal point of a truncated family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPoint {
    pub label: String,
    pub model: IdealModel,
    /// The orientation rule evaluated on the truncation's hyperplanes.
    pub restriction: SignVector,
    /// Whether infinitely many hyperplanes of the family are adjacent to it.
    pub adjacency_infinite: bool,
}

impl IdealPoint {
    /// A hyperplane of the infinite family on which this ideal point and the
    /// original vertex `v` of the truncation disagree.
    pub fn distinguishing_hyperplane(&self, c: &CubeComplex, v: VertexId) -> Option<String> {
        match &self.model {
            IdealModel::Grid { x, y } => {
                let (p, q) = parse_grid_vertex(c.vertex_name(v))?;
                let reach = p.abs().max(q.abs()) + 2;
                for n in -reach..=reach {
                    if x.sign_on(n) != GridCoord::Finite(p).sign_on(n) {
                        return Some(format!("K{n}"));
                    }
                    if y.sign_on(n) != GridCoord::Finite(q).sign_on(n) {
                        return Some(format!("H{n}"));
                    }
                }
                None
            }
            IdealModel::TreeEnd { leaf } => {
                if let Some(h) = self.restriction.separators(c.vertex(v)).first() {
                    return Some(c.hyperplane_name(*h).to_string());
                }
                // v is the leaf itself; the ray continues past it
                Some(format!("H({leaf}.0)"))
            }
        }
    }
}

/// What is known about the untruncated family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Annotations {
    /// False for families without symbolic knowledge (files, products).
    pub annotated: bool,
    /// Vertices with infinitely many adjacent hyperplanes in the infinite
    /// family. Each such hidden hyperplane is adjacent to that vertex only
    /// among the truncation's vertices.
    pub infinite_adjacency: BTreeSet<VertexId>,
    /// Every vertex of the infinite family has finitely many adjacent
    /// hyperplanes.
    pub locally_finite: bool,
}

impl Annotations {
    pub fn finite_complex() -> Self {
        Annotations { annotated: true, infinite_adjacency: BTreeSet::new(), locally_finite: true }
    }

    pub fn is_infinite_vertex(&self, a: VertexId) -> bool {
        self.infinite_adjacency.contains(&a)
    }

    /// Whether infinitely many hyperplanes are adjacent to both `a` and `z`.
    pub fn shared_adjacency_infinite(&self, a: VertexId, z: VertexId) -> bool {
        a == z && self.is_infinite_vertex(a)
    }
}

/// A built family: the truncation plus its annotations.
#[derive(Debug, Clone)]
pub struct Family {
    pub spec: FamilySpec,
    pub complex: CubeComplex,
    pub annotations: Annotations,
}

impl Family {
    pub fn build(spec: &FamilySpec) -> Result<Family> {
        let complex = build_family(spec)?;
        let annotations = match spec {
            FamilySpec::Edge | FamilySpec::Path(_) | FamilySpec::Cube(_) | FamilySpec::Grid { .. } => {
                Annotations::finite_complex()
            }
            FamilySpec::Tree { .. } => Annotations::finite_complex(),
            FamilySpec::Star(_) => Annotations {
                annotated: true,
                infinite_adjacency: BTreeSet::from([complex.vertex_id("center")?]),
                locally_finite: false,
            },
            FamilySpec::Product(..) | FamilySpec::File(_) => Annotations {
                annotated: false,
                infinite_adjacency: BTreeSet::new(),
                locally_finite: true,
            },
        };
        Ok(Family { spec: spec.clone(), complex, annotations })
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::build(&FamilySpec::parse(s)?)
    }

    pub fn ideal_points(&self) -> Result<Vec<IdealPoint>> {
        ideal_points_of(&self.spec, &self.complex)
    }

    pub fn ideal_point(&self, label: &str) -> Result<IdealPoint> {
        self.ideal_points()?
            .into_iter()
            .find(|p| p.label == label)
            .ok_or_else(|| Error::input(format!("no ideal point labelled `{label}` in {}", self.spec)))
    }
}

/// Builds the complex described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<CubeComplex> {
    check_bounds(spec)?;
    match spec {
        FamilySpec::Edge => {
            let h = vec!["H".to_string()];
            CubeComplex::new(
                h,
                vec![("x".into(), SignVector::all_plus(1)), ("y".into(), SignVector::from_signs(&[Sign::Minus]))],
                "x",
                None,
            )
        }
        FamilySpec::Path(l) => {
            let hs: Vec<String> = (0..l - 1).map(|i| format!("H{i}")).collect();
            let verts = (0..*l)
                .map(|i| (format!("v{i}"), SignVector::from_minus_set(l - 1, (0..i).map(HyperplaneId))))
                .collect();
            CubeComplex::new(hs, verts, "v0", None)
        }
        FamilySpec::Grid { w, h } => build_grid(*w, *h),
        FamilySpec::Star(m) => {
            let hs: Vec<String> = (1..=*m).map(|j| format!("H{j}")).collect();
            let mut verts = vec![("center".to_string(), SignVector::all_plus(*m))];
            verts.extend((1..=*m).map(|j| (format!("l{j}"), SignVector::from_minus_set(*m, [HyperplaneId(j - 1)]))));
            CubeComplex::new(hs, verts, "center", None)
        }
        FamilySpec::Tree { valence, depth } => build_tree(*valence, *depth),
        FamilySpec::Cube(n) => {
            let hs: Vec<String> = (0..*n).map(|i| format!("H{i}")).collect();
            let verts = (0..(1usize << n))
                .map(|bits| {
                    let coords: Vec<String> = (0..*n).map(|j| ((bits >> j) & 1).to_string()).collect();
                    let minus = (0..*n).filter(|j| (bits >> j) & 1 == 1).map(HyperplaneId);
                    (format!("({})", coords.join(",")), SignVector::from_minus_set(*n, minus))
                })
                .collect();
            let base = format!("({})", vec!["0"; *n].join(","));
            CubeComplex::new(hs, verts, &base, None)
        }
        FamilySpec::Product(a, b) => {
            let left = build_family(a)?;
            let right = build_family(b)?;
            product(&left, &right)
        }
        FamilySpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            CubeComplex::from_json_str(&text)
        }
    }
}

fn check_bounds(spec: &FamilySpec) -> Result<()> {
    let positive = |v: usize, what: &str| {
        if v == 0 {
            Err(Error::input(format!("{what} must be positive in `{spec}`")))
        } else {
            Ok(())
        }
    };
    match spec {
        FamilySpec::Path(l) => positive(*l, "path length")?,
        FamilySpec::Grid { w, h } => {
            positive(*w, "grid width")?;
            positive(*h, "grid height")?;
        }
        FamilySpec::Star(m) => positive(*m, "leaf count")?,
        FamilySpec::Tree { valence, depth } => {
            positive(*valence, "valence")?;
            positive(*depth, "depth")?;
        }
        FamilySpec::Cube(n) => positive(*n, "cube dimension")?,
        FamilySpec::Product(a, b) => {
            check_bounds(a)?;
            check_bounds(b)?;
        }
        FamilySpec::Edge | FamilySpec::File(_) => {}
    }
    let count = spec
        .vertex_count()
        .ok_or_else(|| Error::input(format!("`{spec}` is far beyond the {MAX_VERTICES}-vertex bound")))?;
    if count > MAX_VERTICES {
        return Err(Error::input(format!("`{spec}` has {count} vertices, above the {MAX_VERTICES}-vertex bound")));
    }
    // every family here has at most `count` hyperplanes
    if count.saturating_mul(count) > MAX_SIGN_BITS && !matches!(spec, FamilySpec::Cube(_)) {
        return Err(Error::input(format!("`{spec}` is too large to store as sign vectors")));
    }
    Ok(())
}

fn build_grid(w: usize, h: usize) -> Result<CubeComplex> {
    // hyperplanes: H0..H{h-2} (horizontal cuts), then K0..K{w-2} (vertical)
    let nh = h - 1;
    let nk = w - 1;
    let mut names: Vec<String> = (0..nh).map(|n| format!("H{n}")).collect();
    names.extend((0..nk).map(|n| format!("K{n}")));
    let mut verts = Vec::with_capacity(w * h);
    for q in 0..h {
        for p in 0..w {
            let signs: Vec<Sign> = (0..nh)
                .map(|n| GridCoord::Finite(q as i64).sign_on(n as i64))
                .chain((0..nk).map(|n| GridCoord::Finite(p as i64).sign_on(n as i64)))
                .collect();
            verts.push((format!("({p},{q})"), SignVector::from_signs(&signs)));
        }
    }
    CubeComplex::new(names, verts, "(0,0)", None)
}

fn parse_grid_vertex(name: &str) -> Option<(i64, i64)> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn build_tree(valence: usize, depth: usize) -> Result<CubeComplex> {
    // vertices in breadth-first order, each with its parent index
    let mut names = vec!["r".to_string()];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut level_start = 0;
    for level in 0..depth {
        let level_end = names.len();
        let branching = if level == 0 { valence } else { valence - 1 };
        for v in level_start..level_end {
            for c in 0..branching {
                names.push(format!("{}.{c}", names[v]));
                parent.push(Some(v));
            }
        }
        level_start = level_end;
    }
    // one hyperplane per edge, indexed by the child endpoint (vertex i >= 1)
    let nh = names.len() - 1;
    let hs: Vec<String> = names[1..].iter().map(|n| format!("H({n})")).collect();
    let mut verts = Vec::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        let mut minus = Vec::new();
        let mut cur = i;
        while let Some(p) = parent[cur] {
            minus.push(HyperplaneId(cur - 1));
            cur = p;
        }
        verts.push((name.clone(), SignVector::from_minus_set(nh, minus)));
    }
    CubeComplex::new(hs, verts, "r", None)
}

/// Cartesian product; hyperplanes of the factors keep their names prefixed
/// by `L.` / `R.`, vertices are named `a|b`.
pub fn product(left: &CubeComplex, right: &CubeComplex) -> Result<CubeComplex> {
    let nl = left.hyperplane_count();
    let nr = right.hyperplane_count();
    let mut hs: Vec<String> = left.hyperplane_names().iter().map(|h| format!("L.{h}")).collect();
    hs.extend(right.hyperplane_names().iter().map(|h| format!("R.{h}")));
    let mut verts = Vec::with_capacity(left.vertex_count() * right.vertex_count());
    for a in left.vertex_ids() {
        for b in right.vertex_ids() {
            let minus = left
                .vertex(a)
                .minus_set()
                .collect::<Vec<_>>()
                .into_iter()
                .chain(right.vertex(b).minus_set().map(|h| HyperplaneId(h.0 + nl)));
            verts.push((
                format!("{}|{}", left.vertex_name(a), right.vertex_name(b)),
                SignVector::from_minus_set(nl + nr, minus),
            ));
        }
    }
    let base = format!("{}|{}", left.vertex_name(left.base()), right.vertex_name(right.base()));
    CubeComplex::new(hs, verts, &base, Some(left.ambient_dimension() + right.ambient_dimension()))
}

/// Ideal points of an annotated family, evaluated on its truncation.
pub fn ideal_points_of(spec: &FamilySpec, c: &CubeComplex) -> Result<Vec<IdealPoint>> {
    match spec {
        FamilySpec::Grid { w, h } => {
            let (w, h) = (*w as i64, *h as i64);
            let mut pts = Vec::new();
            use GridCoord::{Finite, NegInf, PosInf};
            for (x, y) in [(PosInf, PosInf), (NegInf, PosInf), (NegInf, NegInf), (PosInf, NegInf)] {
                pts.push((x, y));
            }
            for p in 0..w {
                pts.push((Finite(p), PosInf));
                pts.push((Finite(p), NegInf));
            }
            for q in 0..h {
                pts.push((PosInf, Finite(q)));
                pts.push((NegInf, Finite(q)));
            }
            pts.into_iter()
                .map(|(x, y)| {
                    let restriction = grid_restriction(c, x, y)?;
                    Ok(IdealPoint {
                        label: format!("({x},{y})"),
                        model: IdealModel::Grid { x, y },
                        restriction,
                        adjacency_infinite: false,
                    })
                })
                .collect()
        }
        FamilySpec::Star(_) => Ok(Vec::new()),
        FamilySpec::Tree { valence, .. } => {
            if *valence < 2 {
                return Ok(Vec::new());
            }
            let leaves: Vec<VertexId> = c.vertex_ids().filter(|&v| c.neighbors(v).len() == 1 && v != c.base()).collect();
            Ok(leaves
                .into_iter()
                .map(|l| IdealPoint {
                    label: format!("end:{}", c.vertex_name(l)),
                    model: IdealModel::TreeEnd { leaf: c.vertex_name(l).to_string() },
                    restriction: c.vertex(l).clone(),
                    adjacency_infinite: false,
                })
                .collect())
        }
        other => Err(Error::Domain(format!("family `{other}` is not annotated with ideal points"))),
    }
}

fn grid_restriction(c: &CubeComplex, x: GridCoord, y: GridCoord) -> Result<SignVector> {
    let mut v = SignVector::all_plus(c.hyperplane_count());
    for h in c.hyperplanes() {
        let name = c.hyperplane_name(h);
        let (axis, n) = name.split_at(1);
        let n: i64 = n.parse().map_err(|_| Error::input(format!("`{name}` is not a grid hyperplane")))?;
        let s = match axis {
            "H" => y.sign_on(n),
            "K" => x.sign_on(n),
            _ => return Err(Error::input(format!("`{name}` is not a grid hyperplane"))),
        };
        v.set(h, s);
    }
    Ok(v)
}

/// Smallest median-closed superset of `vectors`, turned into a complex.
///
/// The first vector becomes the base (orientations are re-expressed relative
/// to it), hyperplanes that fail to separate are dropped and hyperplanes
/// inducing the same partition are merged into the first of them. Vertices
/// are named `v0, v1, ...` in insertion order.
pub fn median_closure(hyperplanes: &[String], vectors: &[SignVector], cap: usize) -> Result<CubeComplex> {
    if vectors.is_empty() {
        return Err(Error::input("median closure of an empty set"));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != hyperplanes.len()) {
        return Err(Error::input(format!("vector of length {} over {} hyperplanes", v.len(), hyperplanes.len())));
    }
    let mut set: Vec<SignVector> = Vec::new();
    let mut seen: HashSet<SignVector> = HashSet::new();
    for v in vectors {
        if seen.insert(v.clone()) {
            set.push(v.clone());
        }
    }
    let mut done = 0;
    while done < set.len() {
        let len = set.len();
        // triples whose largest index is new since the last pass
        for k in done..len {
            for j in 0..k {
                for i in 0..j {
                    let m = SignVector::median(&set[i], &set[j], &set[k]);
                    if seen.insert(m.clone()) {
                        set.push(m);
                        if set.len() > cap {
                            return Err(Error::CapExceeded {
                                context: "computing a median closure".into(),
                                cap,
                                reached: set.len(),
                            });
                        }
                    }
                }
            }
        }
        done = len;
    }
    let base = set[0].clone();
    let rel: Vec<SignVector> = set.iter().map(|v| v.relative_to(&base)).collect();
    // partition signature of each hyperplane: which vertices are on the minus side
    let mut kept: Vec<usize> = Vec::new();
    let mut signatures: HashSet<Vec<usize>> = HashSet::new();
    for h in 0..hyperplanes.len() {
        let sig: Vec<usize> = (0..rel.len()).filter(|&i| rel[i].sign(HyperplaneId(h)) == Sign::Minus).collect();
        if sig.is_empty() {
            continue;
        }
        if signatures.insert(sig) {
            kept.push(h);
        }
    }
    let names: Vec<String> = kept.iter().map(|&h| hyperplanes[h].clone()).collect();
    let verts = rel
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let minus = kept.iter().enumerate().filter(|(_, &h)| v.sign(HyperplaneId(h)) == Sign::Minus).map(|(j, _)| HyperplaneId(j));
            (format!("v{i}"), SignVector::from_minus_set(kept.len(), minus))
        })
        .collect();
    CubeComplex::new(names, verts, "v0", None)
}
