//! Generator sets for the standard symmetric examples.

use crate::cube::{CubeComplex, VertexId};
use crate::error::{Error, Result};

/// Names accepted by [`builtin_generators`].
pub const BUILTIN_ACTIONS: &[&str] = &["swap", "dihedral", "hyperoctahedral", "trivial"];

fn coordinates(name: &str, n: usize) -> Option<Vec<u8>> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let bits: Option<Vec<u8>> = inner.split(',').map(|b| b.trim().parse().ok().filter(|&b: &u8| b <= 1)).collect();
    bits.filter(|b| b.len() == n)
}

/// Generator acting on the vertices of an `n`-cube through a map on
/// coordinate tuples. Vertices must be named `(b0,..,b{n-1})`.
fn coordinate_map(c: &CubeComplex, n: usize, f: impl Fn(&[u8]) -> Vec<u8>) -> Result<Vec<VertexId>> {
    c.vertex_ids()
        .map(|v| {
            let coords = coordinates(c.vertex_name(v), n)
                .ok_or_else(|| Error::input(format!("`{}` is not a vertex of the {n}-cube", c.vertex_name(v))))?;
            let image: Vec<String> = f(&coords).iter().map(u8::to_string).collect();
            c.vertex_id(&format!("({})", image.join(",")))
        })
        .collect()
}

/// Symmetries of the square: `f` flips the first coordinate, `r` exchanges
/// the two coordinates. Together they generate the dihedral group of order 8.
pub fn square_dihedral_generators(c: &CubeComplex) -> Result<Vec<(String, Vec<VertexId>)>> {
    Ok(vec![
        ("f".into(), coordinate_map(c, 2, |b| vec![1 - b[0], b[1]])?),
        ("r".into(), coordinate_map(c, 2, |b| vec![b[1], b[0]])?),
    ])
}

/// Symmetries of the `n`-cube: `f` flips coordinate 0 and `t{i}` exchanges
/// coordinates `i-1` and `i`. The generated group has order `2^n n!`.
pub fn cube_symmetry_generators(c: &CubeComplex, n: usize) -> Result<Vec<(String, Vec<VertexId>)>> {
    let mut gens = vec![(
        "f".to_string(),
        coordinate_map(c, n, |b| {
            let mut b = b.to_vec();
            b[0] = 1 - b[0];
            b
        })?,
    )];
    for i in 1..n {
        gens.push((
            format!("t{i}"),
            coordinate_map(c, n, |b| {
                let mut b = b.to_vec();
                b.swap(i - 1, i);
                b
            })?,
        ));
    }
    Ok(gens)
}

/// Generators for a named built-in action on `c`.
pub fn builtin_generators(name: &str, c: &CubeComplex) -> Result<Vec<(String, Vec<VertexId>)>> {
    match name {
        "swap" => {
            if c.vertex_count() != 2 {
                return Err(Error::input("the swap action needs a two-vertex complex"));
            }
            Ok(vec![("s".into(), vec![VertexId(1), VertexId(0)])])
        }
        "dihedral" => square_dihedral_generators(c),
        "hyperoctahedral" => {
            let n = c.hyperplane_count();
            cube_symmetry_generators(c, n)
        }
        "trivial" => Ok(Vec::new()),
        other => Err(Error::input(format!("unknown built-in action `{other}` (known: {})", BUILTIN_ACTIONS.join(", ")))),
    }
}
