//! End-to-end acceptance run: each criterion prints one PASS/FAIL line and
//! the process fails if any criterion does.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{binom, signs, Oracle};
use cubical_exactness::actions::{
    build_mu, builtin_generators, orbit_transversal, validate_action, verify_mu, ActionOptions, CertificateInput,
    ElemId, GroupAction,
};
use cubical_exactness::artin::{
    coxeter_group_order, exactness_report, fc_check, spherical_classify, CoxeterMatrix, Entry, DEFAULT_CLIQUE_CAP,
};
use cubical_exactness::continuity::{level_sets, phi, probe_points, slack, zero_set, PhiQuery};
use cubical_exactness::families::Family;
use cubical_exactness::weights::Weights;
use cubical_exactness::{CubeComplex, VertexId};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

const SWEEP: [&str; 7] = ["edge", "path:5", "cube:2", "cube:3", "grid:4x4", "star:8", "tree:3,3"];

fn family(spec: &str) -> Family {
    Family::parse(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn big(v: u128) -> BigUint {
    BigUint::from(v)
}

/// Criteria 1 and 2 share one sweep over all original pairs and `n <= 8`.
fn mass_and_adjacent() -> (String, String) {
    let mut mass_cases = 0usize;
    let mut adj_cases = 0usize;
    for spec in SWEEP {
        let f = family(spec);
        let c = &f.complex;
        let w = Weights::new(c);
        let big_n = c.ambient_dimension();
        for n in 0..=8 {
            let expected_mass = big(binom(n + big_n, big_n));
            let expected_diff = big(2 * binom(n + big_n - 1, big_n - 1));
            for z in c.vertex_ids() {
                let zv = c.vertex(z);
                let rows: Vec<_> = c.vertex_ids().map(|x| w.weight_vector(n, x, zv).unwrap()).collect();
                for (x, row) in c.vertex_ids().zip(&rows) {
                    assert_eq!(row.mass(), expected_mass, "{spec}: mass at n={n}, x={}, z={}", c.vertex_name(x), c.vertex_name(z));
                    mass_cases += 1;
                    for y in c.neighbors(x) {
                        if y > x {
                            let d = row.l1_distance(&rows[y.0]);
                            assert_eq!(d, expected_diff, "{spec}: adjacent difference at n={n}");
                            adj_cases += 1;
                        }
                    }
                }
            }
        }
    }
    (format!("{mass_cases} (x,z,n) cases"), format!("{adj_cases} adjacent (x,x',z,n) cases"))
}

fn criterion_3() -> String {
    let f = family("grid:3x3");
    let c = &f.complex;
    let oracle = Oracle::new(c);
    let x = c.vertex_id("(0,0)").unwrap();
    let z = c.vertex_id("(2,1)").unwrap();
    // ordered by distance from x, then along the first coordinate
    let order = ["(0,0)", "(1,0)", "(0,1)", "(2,0)", "(1,1)", "(2,1)"];
    let ids: Vec<VertexId> = order.iter().map(|v| c.vertex_id(v).unwrap()).collect();
    let zs = &oracle.verts[z.0];
    let from_oracle: Vec<u128> = ids.iter().map(|a| oracle.phi(2, x.0, zs, a.0)).collect();
    assert_eq!(from_oracle, vec![1, 1, 2, 1, 1, 0], "oracle disagrees with the worked table");
    let phi = Weights::new(c).weight_vector(2, x, c.vertex(z)).unwrap();
    let lib: Vec<BigUint> = ids.iter().map(|&a| phi.get(a)).collect();
    assert_eq!(lib, from_oracle.iter().map(|&v| big(v)).collect::<Vec<_>>());
    assert_eq!(phi.mass(), big(6));
    // nothing outside the interval carries weight
    assert_eq!(phi.values.len(), 5);
    "weights (1,1,2,1,1,0), mass 6".into()
}

fn criterion_4() -> String {
    let mut triples = 0usize;
    for spec in SWEEP {
        let f = family(spec);
        let c = &f.complex;
        assert!(c.vertex_count() <= 200);
        let oracle = Oracle::new(c);
        let dist = oracle.distances();
        let nv = c.vertex_count();
        for x in 0..nv {
            for y in 0..nv {
                for z in 0..nv {
                    let (xv, yv, zv) = (c.vertex(VertexId(x)), c.vertex(VertexId(y)), c.vertex(VertexId(z)));
                    let m = c.median(xv, yv, zv).unwrap();
                    let mid = c.lookup(&m).unwrap_or_else(|| panic!("{spec}: median is not a vertex")).0;
                    // the vertices lying on geodesics between each pair, by graph distance
                    let on = |a: usize, p: usize, q: usize| dist[p][a] + dist[a][q] == dist[p][q];
                    let common: Vec<usize> = (0..nv).filter(|&a| on(a, x, y) && on(a, y, z) && on(a, x, z)).collect();
                    assert_eq!(common, vec![mid], "{spec}: median not the unique common interval vertex");
                    if x == y {
                        assert_eq!(mid, x);
                    }
                    assert_eq!(c.median(yv, xv, zv).unwrap(), m);
                    assert_eq!(c.median(xv, zv, yv).unwrap(), m);
                    triples += 1;
                }
            }
        }
    }
    format!("{triples} triples, unique median in every case")
}

fn criterion_5() -> String {
    let mut finite = vec![
        "edge",
        "path:5",
        "cube:2",
        "cube:3",
        "grid:4x4",
        "star:8",
        "tree:3,3",
        "product(edge,path:3)",
        "product(star:3,tree:2,2)",
    ]
    .into_iter()
    .map(family)
    .collect::<Vec<_>>();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/square.json");
    finite.push(family(&format!("file:{fixture}")));
    for f in &finite {
        let c = &f.complex;
        let e = c.enumerate_admissible(100_000);
        assert!(e.complete);
        let mut got: Vec<_> = e.vectors.iter().map(signs).collect();
        let mut want: Vec<_> = c.vertex_ids().map(|v| signs(c.vertex(v))).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "{}: admissible vectors differ from the vertices", f.spec);
    }
    let mut ideal = 0usize;
    for spec in ["grid:4x4", "grid:8x8"] {
        let f = family(spec);
        let oracle = Oracle::new(&f.complex);
        let points = f.ideal_points().unwrap();
        assert!(points.iter().any(|p| p.label == "(+inf,+inf)"));
        for p in &points {
            assert!(f.complex.is_admissible(&p.restriction), "{spec}: {} rejected", p.label);
            assert!(oracle.admissible(&signs(&p.restriction)), "{spec}: {} fails pairwise check", p.label);
            ideal += 1;
        }
    }
    format!("{} finite complexes closed; {ideal} grid ideal points admissible", finite.len())
}

fn criterion_6() -> String {
    let f = family("star:8");
    let c = &f.complex;
    assert_eq!(c.ambient_dimension(), 1);
    let w = Weights::new(c);
    let x = c.vertex_id("l1").unwrap();
    let a = c.vertex_id("center").unwrap();
    for n in 2..=16 {
        let q = PhiQuery { x, a, n };
        assert_eq!(phi(&w, q, c.vertex(a)).unwrap(), BigUint::from(n), "Phi(center) at n={n}");
        for j in 2..=8 {
            let l = c.vertex_id(&format!("l{j}")).unwrap();
            assert_eq!(phi(&w, q, c.vertex(l)).unwrap(), BigUint::one(), "Phi(l{j}) at n={n}");
        }
    }
    "Phi(center)=n, Phi(l_j)=1 for n in 2..=16".into()
}

fn action(spec: &str, builtin: &str) -> (CubeComplex, GroupAction) {
    let c = family(spec).complex;
    let gens = builtin_generators(builtin, &c).unwrap();
    let a = validate_action(&c, gens, ActionOptions::default()).unwrap();
    (c, a)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `|| s·mu_x - mu_{sx} ||_1`, recomputed from the raw masses.
fn l1_after_translate(action: &GroupAction, mu: &[cubical_exactness::ProbMeasure<ElemId>], s: ElemId) -> BigRational {
    let mut worst = BigRational::zero();
    for x in action.elements() {
        let mut diff: BTreeMap<ElemId, BigRational> = BTreeMap::new();
        for (g, p) in mu[x.0].iter() {
            *diff.entry(action.mul(s, *g)).or_insert_with(BigRational::zero) += p.clone();
        }
        for (g, p) in mu[action.mul(s, x).0].iter() {
            *diff.entry(*g).or_insert_with(BigRational::zero) -= p.clone();
        }
        let total = diff.values().fold(BigRational::zero(), |acc, v| acc + v.abs());
        if total > worst {
            worst = total;
        }
    }
    worst
}

fn criterion_7() -> String {
    // Z/2 swapping the two ends of an edge
    let (c, a) = action("edge", "swap");
    let orbits = orbit_transversal(&a);
    let s = a.generators()[0].element;
    let input = CertificateInput::uniform(&orbits, vec![s], BigRational::one(), 3, c.base());
    let cert = build_mu(&c, &a, &orbits, &input).unwrap();
    let check = verify_mu(&cert, &a, &input);
    let mu_s: BTreeMap<String, BigRational> = cert.mu[s.0].iter().map(|(g, p)| (a.element_name(*g), p.clone())).collect();
    let want: BTreeMap<String, BigRational> = [("e".to_string(), rat(1, 4)), ("s".to_string(), rat(3, 4))].into();
    assert_eq!(mu_s, want);
    let dev_s = check.deviations.iter().find(|d| d.s == s).unwrap();
    assert_eq!(dev_s.dev, rat(1, 2));
    assert_eq!(l1_after_translate(&a, &cert.mu, s), rat(1, 2));
    assert!(check.eps_nu.is_zero());
    assert_eq!(dev_s.dev, &dev_s.eps_eta + &check.eps_nu, "bound not tight");
    assert!(check.report.passed());

    let mut summary = vec!["edge swap: mu_s={e:1/4,s:3/4}, dev=1/2".to_string()];
    for (spec, builtin, order) in [("cube:2", "dihedral", 8), ("cube:3", "hyperoctahedral", 48)] {
        let (c, a) = action(spec, builtin);
        assert_eq!(a.order(), order);
        let orbits = orbit_transversal(&a);
        let e: Vec<ElemId> = a.generators().iter().map(|g| g.element).collect();
        let mut previous: Option<BigRational> = None;
        let mut devs = Vec::new();
        for n in [2, 4, 8, 16] {
            let input = CertificateInput::uniform(&orbits, e.clone(), BigRational::one(), n, c.base());
            let cert = build_mu(&c, &a, &orbits, &input).unwrap();
            let check = verify_mu(&cert, &a, &input);
            assert!(check.report.passed(), "{spec} n={n}: {:?}", check.report.failures().collect::<Vec<_>>());
            for x in a.elements() {
                let total = cert.mu[x.0].iter().fold(BigRational::zero(), |acc, (_, p)| acc + p);
                assert!(total.is_one(), "{spec} n={n}: mu_x has mass {total}");
                assert!(cert.mu[x.0].iter().all(|(g, p)| p > &BigRational::zero() && cert.support_bound.contains(g)));
            }
            assert!(check.eps_nu.is_zero());
            for d in &check.deviations {
                assert!(d.dev <= d.eps_eta, "{spec} n={n}: dev above eps_eta");
                assert_eq!(d.dev, l1_after_translate(&a, &cert.mu, d.s));
            }
            if let Some(p) = &previous {
                assert!(&check.max_dev <= p, "{spec}: max deviation increased at n={n}");
            }
            devs.push(check.max_dev.to_string());
            previous = Some(check.max_dev);
        }
        summary.push(format!("{builtin} (order {order}) max dev {}", devs.join(" >= ")));
    }
    summary.join("; ")
}

fn criterion_8() -> String {
    let mut checked = 0usize;
    for (spec, builtin) in [("edge", "swap"), ("cube:2", "dihedral"), ("cube:3", "hyperoctahedral")] {
        let (_, a) = action(spec, builtin);
        let orbits = orbit_transversal(&a);
        let report = orbits.verify(&a);
        assert!(report.passed(), "{builtin}: {:?}", report.failures().collect::<Vec<_>>());
        // coset identities recomputed from the decomposition data
        for data in &orbits.points {
            for g in a.elements() {
                assert_eq!(a.mul(data.z(g), data.a(g)), g);
                assert!(data.stabilizes(data.a(g)));
                for &h in &data.stabilizer {
                    let gh = a.mul(g, h);
                    assert_eq!(data.z(gh), data.z(g));
                    assert_eq!(data.a(gh), a.mul(data.a(g), h));
                }
                let sigma = cubical_exactness::actions::sigma_split(&a, data, g);
                assert_eq!(sigma, a.inv(data.a(a.inv(g))));
                checked += 1;
            }
        }
    }
    format!("{checked} (t,g) pairs across three groups")
}

fn coxeter(gens: &[&str], rows: &[&[u32]]) -> CoxeterMatrix {
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|&m| if m == 0 { Entry::Infinity } else { Entry::Finite(m) }).collect())
        .collect();
    CoxeterMatrix::new(gens.iter().map(|s| s.to_string()).collect(), entries).unwrap()
}

/// Group order from the geometric representation, for labels in {2, 3}
/// where the bilinear form `-cos(pi/m)` is rational: closes the reflection
/// matrices under multiplication.
fn reflection_group_order(m: &CoxeterMatrix, cap: usize) -> usize {
    let n = m.len();
    let form = |i: usize, j: usize| match m.entry(i, j) {
        Entry::Finite(1) => rat(1, 1),
        Entry::Finite(2) => rat(0, 1),
        Entry::Finite(3) => rat(-1, 2),
        other => panic!("label {other} has no rational form"),
    };
    type Mat = Vec<Vec<BigRational>>;
    // s_i(v) = v - 2 B(e_i, v) e_i, as a matrix acting on columns
    let refl: Vec<Mat> = (0..n)
        .map(|i| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|col| {
                            let id = if r == col { rat(1, 1) } else { rat(0, 1) };
                            if r == i {
                                id - rat(2, 1) * form(i, col)
                            } else {
                                id
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mul = |a: &Mat, b: &Mat| -> Mat {
        (0..n)
            .map(|r| (0..n).map(|col| (0..n).fold(rat(0, 1), |acc, k| acc + &a[r][k] * &b[k][col])).collect())
            .collect()
    };
    let identity: Mat = (0..n).map(|r| (0..n).map(|c| if r == c { rat(1, 1) } else { rat(0, 1) }).collect()).collect();
    let mut seen = std::collections::BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(g) = frontier.pop() {
        for s in &refl {
            let h = mul(&g, s);
            if seen.insert(h.clone()) {
                assert!(seen.len() <= cap, "reflection group exceeds {cap}");
                frontier.push(h);
            }
        }
    }
    seen.len()
}

#[allow(clippy::needless_range_loop)]
fn random_matrix(rng: &mut ChaCha8Rng, size: usize, labels: &[u32]) -> CoxeterMatrix {
    let mut rows = vec![vec![1u32; size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let l = *labels.choose(rng).unwrap();
            rows[i][j] = l;
            rows[j][i] = l;
        }
    }
    let gens: Vec<String> = (0..size).map(|i| format!("s{i}")).collect();
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let row_refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
    coxeter(&refs, &row_refs)
}

fn criterion_9() -> String {
    let klein = coxeter(&["s", "t"], &[&[1, 2], &[2, 1]]);
    let cls = spherical_classify(&klein, &[0, 1]);
    assert_eq!(cls.type_name().as_deref(), Some("A1xA1"));
    let report = exactness_report(&klein, DEFAULT_CLIQUE_CAP).unwrap();
    assert_eq!(report.verdict, "exact");

    let a3 = coxeter(&["s1", "s2", "s3"], &[&[1, 3, 2], &[3, 1, 3], &[2, 3, 1]]);
    let cls = spherical_classify(&a3, &[0, 1, 2]);
    assert_eq!(cls.type_name().as_deref(), Some("A3"));
    assert_eq!(reflection_group_order(&a3, 1000), 24);
    assert_eq!(coxeter_group_order(&a3, 1000), Some(24));

    let triangle = coxeter(&["a", "b", "c"], &[&[1, 3, 3], &[3, 1, 3], &[3, 3, 1]]);
    let v = fc_check(&triangle, DEFAULT_CLIQUE_CAP).unwrap();
    assert!(!v.is_fc);
    assert_eq!(v.witness, Some(vec!["a".to_string(), "b".to_string(), "c".to_string()]));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let size = rng.gen_range(1..=12);
        let m = random_matrix(&mut rng, size, &[2, 0]);
        assert!(fc_check(&m, DEFAULT_CLIQUE_CAP).unwrap().is_fc, "right-angled matrix not FC: {}", m.to_json());
    }
    for _ in 0..20 {
        let size = rng.gen_range(2..=7);
        let m = random_matrix(&mut rng, size, &[2, 3, 4, 5, 6, 0]);
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(&mut rng);
        let p = m.permuted(&perm);
        let summary = |m: &CoxeterMatrix| {
            let v = fc_check(m, DEFAULT_CLIQUE_CAP).unwrap();
            let mut cliques: Vec<(Vec<String>, Option<String>)> = v
                .cliques
                .iter()
                .map(|c| {
                    let mut g = c.generators.clone();
                    g.sort();
                    (g, c.sphericity.type_name())
                })
                .collect();
            cliques.sort();
            (v.is_fc, cliques)
        };
        assert_eq!(summary(&m), summary(&p), "relabelling changed the verdict for {}", m.to_json());
    }
    "Klein four A1xA1 exact; A3 order 24; triangle witness {a,b,c}; 100 right-angled FC; 20 relabellings".into()
}

fn criterion_10() -> String {
    let mut queries = 0usize;
    let mut points = 0usize;
    for spec in ["grid:4x4", "star:8"] {
        let f = family(spec);
        let c = &f.complex;
        let w = Weights::new(c);
        let oracle = Oracle::new(c);
        let big_n = c.ambient_dimension();
        let probe = probe_points(&f);
        let probe_signs: Vec<_> = probe.iter().map(|p| signs(&p.vector)).collect();
        for x in c.vertex_ids() {
            for a in c.vertex_ids() {
                let d = c.distance(x, a);
                if d > 3 {
                    continue;
                }
                let (xs, as_) = (&oracle.verts[x.0], &oracle.verts[a.0]);
                let seps: Vec<usize> = (0..xs.len()).filter(|&h| xs[h] != as_[h]).collect();
                let hj: Vec<usize> = oracle.adjacent(a.0).into_iter().filter(|h| !seps.contains(h)).collect();
                for n in 0..=6 {
                    let q = PhiQuery { x, a, n };
                    let zs = zero_set(c, x, a, &probe);
                    assert!(zs.agree, "{spec}: zero set");
                    let ls = level_sets(&w, q, &probe).unwrap();
                    assert!(ls.identities_hold(), "{spec}: level-set identities fail");
                    let values: Vec<u128> = probe_signs.iter().map(|z| oracle.phi(n, x.0, z, a.0)).collect();
                    // library cells against the oracle's values
                    for (value, idx) in &ls.cells {
                        for &i in idx {
                            assert_eq!(values[i].to_string(), *value, "{spec}: Phi at {}", probe[i].label);
                        }
                    }
                    let slack = slack(c, q);
                    assert_eq!(slack, n as i64 - d as i64);
                    for (i, z) in probe_signs.iter().enumerate().filter(|_| slack >= 0) {
                        assert_eq!(values[i] == 0, seps.iter().any(|&h| z[h] == xs[h]), "{spec}: zero set at {}", probe[i].label);
                    }
                    let mut ks: Vec<usize> = Vec::new();
                    if slack >= 1 {
                        ks.extend(0..=big_n);
                    }
                    if slack >= 0 {
                        ks.push(big_n + 1);
                    }
                    for k in ks {
                        let threshold = if k <= big_n { binom(slack as usize + big_n - k, big_n - k) } else { 0 };
                        for (i, z) in probe_signs.iter().enumerate() {
                            let direct = values[i] > threshold;
                            let off = hj.iter().filter(|&&h| z[h] != xs[h]).count();
                            let formula = seps.iter().all(|&h| z[h] == as_[h]) && off < k;
                            assert_eq!(direct, formula, "{spec}: superlevel k={k} at {}", probe[i].label);
                        }
                    }
                    queries += 1;
                    points += probe.len();
                }
            }
        }
    }
    format!("{queries} (x,a,n) queries, {points} point evaluations")
}

fn run(results: &mut Vec<bool>, id: &str, limit: Option<Duration>, f: impl FnOnce() -> String) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(detail) => match limit {
            Some(l) if elapsed > l => (false, format!("{detail}; exceeded {}s", l.as_secs())),
            _ => (true, detail),
        },
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, msg)
        }
    };
    println!("criterion {id}: {} ({detail}) [{:.2}s]", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    results.push(ok);
}

fn main() {
    let mut results = Vec::new();
    let start = Instant::now();
    let (mass, adjacent) = match catch_unwind(mass_and_adjacent) {
        Ok(r) => r,
        Err(_) => ("sweep panicked".into(), "sweep panicked".into()),
    };
    let sweep_ok = !mass.contains("panicked") && start.elapsed() <= Duration::from_secs(60);
    let secs = start.elapsed().as_secs_f64();
    println!("criterion 1 mass identity: {} ({mass}) [{secs:.2}s shared sweep]", if sweep_ok { "PASS" } else { "FAIL" });
    println!("criterion 2 adjacent difference: {} ({adjacent}) [{secs:.2}s shared sweep]", if sweep_ok { "PASS" } else { "FAIL" });
    results.extend([sweep_ok, sweep_ok]);
    run(&mut results, "3 grid worked table", None, criterion_3);
    run(&mut results, "4 median and interval suite", None, criterion_4);
    run(&mut results, "5 admissibility closure", None, criterion_5);
    run(&mut results, "6 star discontinuity gap", None, criterion_6);
    run(&mut results, "7 certificate suite", Some(Duration::from_secs(120)), criterion_7);
    run(&mut results, "8 coset and sigma identities", None, criterion_8);
    run(&mut results, "9 Artin suite", None, criterion_9);
    run(&mut results, "10 level and superlevel sets", None, criterion_10);
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
