//! Property tests for the combinatorial invariants, checked against the
//! reference implementations in `common`.

mod common;

use common::{binom, signs, Oracle};
use cubical_exactness::artin::{
    coxeter_group_order, fc_check, spherical_classify, CoxeterMatrix, Entry, Sphericity, DEFAULT_CLIQUE_CAP,
};
use cubical_exactness::families::{median_closure, Family};
use cubical_exactness::weights::Weights;
use cubical_exactness::{Sign, SignVector, VertexId};
use num_bigint::BigUint;
use proptest::prelude::*;

fn family_spec() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..6).prop_map(|l| format!("path:{l}")),
        (1usize..5, 1usize..5).prop_map(|(w, h)| format!("grid:{w}x{h}")),
        (1usize..6).prop_map(|m| format!("star:{m}")),
        (2usize..4, 1usize..3).prop_map(|(v, d)| format!("tree:{v},{d}")),
        (1usize..4).prop_map(|n| format!("cube:{n}")),
        (1usize..3, 1usize..4).prop_map(|(a, b)| format!("product(path:{a},star:{b})")),
    ]
}

fn family(spec: &str) -> Family {
    Family::parse(spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn median_axioms(spec in family_spec(), picks in prop::array::uniform3(any::<prop::sample::Index>())) {
        let c = family(&spec).complex;
        let [x, y, z] = picks.map(|i| c.vertex(VertexId(i.index(c.vertex_count()))).clone());
        let m = c.median(&x, &y, &z).unwrap();
        prop_assert!(c.lookup(&m).is_some());
        prop_assert_eq!(&c.median(&x, &x, &y).unwrap(), &x);
        prop_assert_eq!(&c.median(&z, &x, &y).unwrap(), &m);
        prop_assert_eq!(&c.median(&y, &z, &x).unwrap(), &m);
        prop_assert!(m.in_interval(&x, &y) && m.in_interval(&y, &z) && m.in_interval(&x, &z));
        // distance is additive through the median
        prop_assert_eq!(x.distance(&m) + m.distance(&y), x.distance(&y));
    }

    #[test]
    fn weights_match_oracle_and_mass_identity(
        spec in family_spec(),
        xi in any::<prop::sample::Index>(),
        zi in any::<prop::sample::Index>(),
        n in 0usize..7,
    ) {
        let c = family(&spec).complex;
        let oracle = Oracle::new(&c);
        let x = VertexId(xi.index(c.vertex_count()));
        let z = VertexId(zi.index(c.vertex_count()));
        let big_n = c.ambient_dimension();
        let phi = Weights::new(&c).weight_vector(n, x, c.vertex(z)).unwrap();
        prop_assert_eq!(phi.mass(), BigUint::from(binom(n + big_n, big_n)));
        for a in c.vertex_ids() {
            prop_assert_eq!(phi.get(a), BigUint::from(oracle.phi(n, x.0, &oracle.verts[z.0], a.0)));
        }
    }

    #[test]
    fn adjacent_sources_differ_by_the_expected_amount(
        spec in family_spec(),
        xi in any::<prop::sample::Index>(),
        zi in any::<prop::sample::Index>(),
        n in 1usize..7,
    ) {
        let c = family(&spec).complex;
        prop_assume!(c.vertex_count() > 1);
        let w = Weights::new(&c);
        let x = VertexId(xi.index(c.vertex_count()));
        let z = c.vertex(VertexId(zi.index(c.vertex_count())));
        let big_n = c.ambient_dimension();
        let phi_x = w.weight_vector(n, x, z).unwrap();
        for y in c.neighbors(x) {
            let d = phi_x.l1_distance(&w.weight_vector(n, y, z).unwrap());
            prop_assert_eq!(d, BigUint::from(2 * binom(n + big_n - 1, big_n - 1)));
        }
    }

    #[test]
    fn admissible_vectors_of_finite_complexes_are_vertices(spec in family_spec()) {
        let c = family(&spec).complex;
        let e = c.enumerate_admissible(100_000);
        prop_assert!(e.complete);
        prop_assert_eq!(e.vectors.len(), c.vertex_count());
        prop_assert!(e.vectors.iter().all(|z| c.lookup(z).is_some()));
    }

    #[test]
    fn median_closure_is_closed(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 4), 1..6)) {
        let names: Vec<String> = (0..4).map(|i| format!("H{i}")).collect();
        let vectors: Vec<SignVector> = rows
            .iter()
            .map(|r| SignVector::from_signs(&r.iter().map(|&b| if b { Sign::Minus } else { Sign::Plus }).collect::<Vec<_>>()))
            .collect();
        let c = median_closure(&names, &vectors, 1 << 12).unwrap();
        let vs: Vec<SignVector> = c.vertex_ids().map(|v| c.vertex(v).clone()).collect();
        for x in &vs {
            for y in &vs {
                for z in &vs {
                    prop_assert!(c.lookup(&SignVector::median(x, y, z)).is_some());
                }
            }
        }
        prop_assert!(c.validate().is_valid());
        let oracle = Oracle::new(&c);
        for v in &vs {
            prop_assert!(oracle.admissible(&signs(v)));
        }
    }
}

/// Random Coxeter matrix with labels from `labels`; 0 stands for infinity.
fn coxeter_matrix(size: usize, labels: Vec<u32>) -> impl Strategy<Value = CoxeterMatrix> {
    let pairs = size * (size.saturating_sub(1)) / 2;
    #[allow(clippy::needless_range_loop)]
    prop::collection::vec(prop::sample::select(labels), pairs).prop_map(move |ls| {
        let mut rows = vec![vec![Entry::Finite(1); size]; size];
        let mut it = ls.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let e = match it.next().unwrap() {
                    0 => Entry::Infinity,
                    m => Entry::Finite(m),
                };
                rows[i][j] = e;
                rows[j][i] = e;
            }
        }
        CoxeterMatrix::new((0..size).map(|i| format!("s{i}")).collect(), rows).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = CoxeterMatrix> {
    (1usize..7).prop_flat_map(|n| coxeter_matrix(n, vec![2, 3, 4, 5, 6, 0]))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_agrees_with_coset_enumeration(m in (1usize..5).prop_flat_map(|n| coxeter_matrix(n, vec![2, 3, 4, 5, 6, 0]))) {
        for j in subsets(m.len()) {
            let predicted = match spherical_classify(&m, &j) {
                Sphericity::Spherical { order, .. } => Some(order.parse::<usize>().unwrap()),
                Sphericity::NonSpherical { .. } => None,
            };
            if predicted.is_some_and(|o| o > 1152) {
                continue;
            }
            // infinite groups overflow the cap; finite ones within it are counted exactly
            let counted = coxeter_group_order(&m.restrict(&j), 1152);
            prop_assert_eq!(counted, predicted, "J = {:?} in {}", j, m.to_json());
        }
    }

    #[test]
    fn sphericity_is_monotone(m in any_matrix()) {
        for j in subsets(m.len()) {
            if spherical_classify(&m, &j).is_spherical() {
                for k in 0..j.len() {
                    let mut smaller = j.clone();
                    smaller.remove(k);
                    prop_assert!(spherical_classify(&m, &smaller).is_spherical());
                }
            }
        }
    }

    #[test]
    fn fc_is_invariant_under_relabelling(
        (m, perm) in any_matrix().prop_flat_map(|m| {
            let n = m.len();
            (Just(m), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let a = fc_check(&m, DEFAULT_CLIQUE_CAP).unwrap();
        let b = fc_check(&m.permuted(&perm), DEFAULT_CLIQUE_CAP).unwrap();
        prop_assert_eq!(a.is_fc, b.is_fc);
        let types = |v: &cubical_exactness::artin::FcVerdict| {
            let mut t: Vec<Option<String>> = v.cliques.iter().map(|c| c.sphericity.type_name()).collect();
            t.sort();
            t
        };
        prop_assert_eq!(types(&a), types(&b));
    }

    #[test]
    fn right_angled_matrices_are_fc(m in (1usize..13).prop_flat_map(|n| coxeter_matrix(n, vec![2, 0]))) {
        prop_assert!(fc_check(&m, DEFAULT_CLIQUE_CAP).unwrap().is_fc);
    }
}
