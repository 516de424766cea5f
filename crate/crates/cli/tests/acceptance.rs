//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All checks are exact integer comparisons; the only tolerances are the
//! wall-clock budgets of criteria 1 (10 s) and 2 (120 s).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hibi_core::cone::{singularity_type, tau_ab, HibiData, SingularityType};
use hibi_core::grid::{canonical_points, ideals_of_grid, random_grid, validate_grid, GridFile, GridPoint};
use hibi_core::io::LatticeFile;
use hibi_core::linalg::{bareiss_rank, determinant, integer_relations};
use hibi_core::oracle::{binomial_generators, cross_validate, jacobian_smooth_at, EnumerationMode, OracleConfig};
use hibi_core::{data, DistLattice, JoinIrreducibleGrid, MinusculeSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CRITERION1_BUDGET: Duration = Duration::from_secs(10);
const CRITERION2_BUDGET: Duration = Duration::from_secs(120);
const RANDOM_GRIDS: u64 = 200;
const MAX_GRID_POINTS: usize = 16;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(s: &str) -> MinusculeSpec {
    s.parse().unwrap()
}

/// The minuscule lattices of criterion 1.
fn criterion1_specs() -> Vec<MinusculeSpec> {
    let mut v = Vec::new();
    for rank in 1..=5 {
        for j in 1..=rank {
            v.push(spec(&format!("A{rank}:{j}")));
        }
    }
    for n in 1..=5 {
        v.push(spec(&format!("C{n}:1")));
    }
    for s in ["B3:3", "D4:1", "D4:4", "D5:1", "D5:5", "E6:1"] {
        v.push(spec(s));
    }
    v
}

fn built(s: MinusculeSpec) -> (DistLattice, HibiData) {
    let l = s.build().unwrap();
    let jg = s.join_irreducible_grid(&l).unwrap();
    let data = HibiData::with_grid(&l, jg).unwrap();
    (l, data)
}

/// Grids for criterion 2: seeded, at most 16 points each.
fn random_grids() -> Vec<Vec<GridPoint>> {
    (0..RANDOM_GRIDS)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = random_grid(4, 4, &mut rng);
            assert!(pts.len() <= MAX_GRID_POINTS);
            pts
        })
        .collect()
}

fn grid_lattice(points: &[GridPoint]) -> (DistLattice, JoinIrreducibleGrid) {
    ideals_of_grid(&validate_grid(points.iter().copied()).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let specs = criterion1_specs();
    for s in &specs {
        let (l, data) = built(*s);
        for pair in &data.pairs {
            let face = tau_ab(&l, &data.cone, &data.jgrid, pair).map_err(|e| format!("{s}: {e}"))?;
            let el = |p| data.jgrid.element_at(p).unwrap();
            let (mu, a, b, c) = (el(pair.mu_pt), el(pair.a_pt), el(pair.b_pt), el(pair.c_pt));
            // the four vectors rebuilt from scratch, in the stated order
            let pos = |e| data.cone.position(e).unwrap();
            let vecs: Vec<Vec<i64>> = [(mu, a), (mu, b), (a, c), (b, c)]
                .iter()
                .map(|&(lo, hi)| {
                    let mut v = vec![0; data.cone.dim()];
                    v[pos(lo)] = 1;
                    v[pos(hi)] = -1;
                    v
                })
                .collect();
            let mut got: Vec<Vec<i64>> = face.gens.iter().map(|&g| data.cone.generators()[g].vector.0.clone()).collect();
            let mut want = vecs.clone();
            got.sort();
            want.sort();
            check(got == want, || format!("{s}: generators differ at μ = {}", pair.mu_pt))?;
            check(bareiss_rank(&vecs).unwrap() == 3, || format!("{s}: rank != 3"))?;
            check(integer_relations(&vecs).unwrap() == vec![vec![1, -1, 1, -1]], || {
                format!("{s}: relation is not alternating at μ = {}", pair.mu_pt)
            })?;
            pairs += 1;
        }
    }
    let t = start.elapsed();
    check(t < CRITERION1_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("{} lattices, {pairs} pairs, 4 generators / rank 3 / alternating relation each, {t:.2?}", specs.len()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig { parallelism: 0, ..OracleConfig::default() };
    let mut lattices: Vec<DistLattice> = criterion1_specs()
        .into_iter()
        .map(|s| s.build().unwrap())
        .filter(|l| l.len() <= 20)
        .collect();
    let n_min = lattices.len();
    for (k, pts) in random_grids().iter().enumerate() {
        lattices.push(grid_lattice(pts).0.with_name(format!("grid#{k}")));
    }
    let mut faces = 0;
    let mut sampled = 0;
    for l in &lattices {
        let r = cross_validate(l, &cfg).map_err(|e| format!("{}: {e}", l.name()))?;
        check(r.grid, || format!("{}: join irreducibles not a grid", l.name()))?;
        check(r.all_agree, || format!("{}: {} disagreements", l.name(), r.disagreements.len()))?;
        faces += r.num_faces;
        sampled += usize::from(r.mode == EnumerationMode::Sampled);
    }
    let t = start.elapsed();
    check(t < CRITERION2_BUDGET, || format!("took {t:?}"))?;
    Ok(format!(
        "{n_min} minuscule + {RANDOM_GRIDS} random-grid lattices ({sampled} sampled), {faces} faces, 0 disagreements, {t:.2?}"
    ))
}

fn criterion_3() -> Outcome {
    let mut comps = 0;
    let mut n = 0;
    let mut run = |l: &DistLattice, data: &HibiData| -> Result<(), String> {
        let locus = data.singular_locus(l).map_err(|e| format!("{}: {e}", l.name()))?;
        check(locus.pure_codim3(), || format!("{}: not pure of codimension 3", l.name()))?;
        for c in &locus.components {
            check(c.dims.orbit_closure_codim == 3 && c.kind == SingularityType::QuadricCone, || {
                format!("{}: component at μ = {} is {:?}", l.name(), c.pair.mu_pt, c.kind)
            })?;
            check(singularity_type(&data.cone, &c.face).unwrap() == SingularityType::QuadricCone, || {
                format!("{}: retyping disagrees", l.name())
            })?;
        }
        comps += locus.components.len();
        n += 1;
        Ok(())
    };
    for s in criterion1_specs() {
        let (l, data) = built(s);
        run(&l, &data)?;
    }
    for pts in random_grids() {
        let (l, jg) = grid_lattice(&pts);
        let data = HibiData::with_grid(&l, jg).unwrap();
        run(&l, &data)?;
    }
    Ok(format!("{n} reports, {comps} components, all codim 3 and QuadricCone"))
}

fn criterion_4() -> Outcome {
    let (l, data) = built(spec("A3:2"));
    check(l.len() == 6, || "L6 must have 6 elements".into())?;
    let locus = data.singular_locus(&l).unwrap();
    check(locus.dim == 5, || format!("variety dimension {}", locus.dim))?;
    check(locus.components.len() == 1, || format!("{} components", locus.components.len()))?;
    let c = &locus.components[0];
    // the component is {x_a = x_b = x_c = x_m = 0}: its face keeps only bottom and top
    check(c.l_alpha_beta.to_vec() == vec![l.bottom(), l.top()], || "wrong support".into())?;
    check(c.dims.orbit_dim == 2, || format!("orbit-closure dimension {}", c.dims.orbit_dim))?;
    let g = binomial_generators(&l);
    check(g.len() == 1, || "expected a single binomial".into())?;
    let p: Vec<u8> = (0..6).map(|i| u8::from(i == l.bottom() || i == l.top())).collect();
    check(!jacobian_smooth_at(&l, &g, &p).unwrap(), || "Jacobian says smooth".into())?;
    Ok("one component, orbit-closure dimension 2 in a 5-dimensional variety".into())
}

fn criterion_5() -> Outcome {
    let binom = |n: u128, k: u128| (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1));
    let mut cases: Vec<(String, u128)> = Vec::new();
    for n in 2..=6u128 {
        for j in 1..n {
            cases.push((format!("A{}:{j}", n - 1), binom(n, j)));
        }
    }
    for n in 1..=6u128 {
        cases.push((format!("C{n}:1"), 2 * n));
    }
    for n in 4..=6u128 {
        cases.push((format!("D{n}:1"), 2 * n));
    }
    for n in 2..=4u32 {
        cases.push((format!("B{n}:{n}"), 2u128.pow(n)));
    }
    cases.push(("E6:1".into(), 27));
    cases.push(("E7:7".into(), 56));
    for (s, want) in &cases {
        let l = spec(s).build().unwrap();
        let j = l.poset().induced(&l.nonzero_join_irreducibles());
        let counted = j.count_order_ideals();
        check(l.len() as u128 == *want && counted == *want, || {
            format!("{s}: built {}, counted {counted}, expected {want}", l.len())
        })?;
    }
    Ok(format!("{} specs match the closed forms and an independent ideal count", cases.len()))
}

fn criterion_6() -> Outcome {
    for (s, literal) in [("E6:1", data::h6()), ("E7:7", data::h7())] {
        let l = spec(s).build().unwrap();
        let computed = JoinIrreducibleGrid::new(&l).unwrap();
        check(computed.points().len() == literal.len(), || format!("{s}: point counts differ"))?;
        check(
            canonical_points(computed.points().iter().copied()).unwrap() == canonical_points(literal).unwrap(),
            || format!("{s}: shapes differ after canonicalization"),
        )?;
    }
    let (l, jg) = grid_lattice(&data::example13());
    let data = HibiData::with_grid(&l, jg).unwrap();
    let mus: Vec<(u32, u32)> = data.pairs.iter().map(|p| (p.mu_pt.x, p.mu_pt.y)).collect();
    check(mus == vec![(1, 3), (2, 3), (2, 4), (2, 5), (3, 5)], || format!("μ points {mus:?}"))?;
    let locus = data.singular_locus(&l).unwrap();
    check(locus.components.len() == 5, || format!("{} components", locus.components.len()))?;
    Ok("J(E6) 16 points, J(E7) 27 points, 13-point example with 5 components".into())
}

fn criterion_7() -> Outcome {
    for n in 1..=8 {
        let l = spec(&format!("C{n}:1")).build().unwrap();
        let data = HibiData::new(&l).unwrap();
        check(data.singular_locus(&l).unwrap().is_smooth(), || format!("C{n}:1 has singular components"))?;
        let w: Vec<Vec<i64>> = data.cone.generators().iter().map(|g| g.vector.0.clone()).collect();
        check(w.len() == 2 * n && w.len() == data.cone.dim(), || format!("C{n}:1: {} generators", w.len()))?;
        let det = determinant(&w).unwrap();
        check(det.abs() == 1, || format!("C{n}:1: det W = {det}"))?;
    }
    Ok("C1..C8: empty singular locus, W a lattice basis (|det| = 1)".into())
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hibi");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs: Vec<Vec<String>> = Vec::new();
    for s in criterion1_specs().iter().map(ToString::to_string).chain(["E7:7".to_string()]) {
        runs.push(vec!["--minuscule".into(), s]);
    }
    for k in [1, 6, 10] {
        runs.push(vec!["--chain".into(), k.to_string()]);
    }
    let write = |name: &str, text: String| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let ex = write("example13.json", serde_json::to_string(&GridFile { points: data::example13() }).unwrap());
    runs.push(vec!["--grid".into(), ex]);
    let l6 = spec("A3:2").build().unwrap().with_name("L6");
    runs.push(vec![write("l6.json", serde_json::to_string(&LatticeFile::from_lattice(&l6)).unwrap())]);
    for (k, pts) in random_grids().iter().take(20).enumerate() {
        let p = write(&format!("grid{k}.json"), serde_json::to_string(&GridFile { points: pts.clone() }).unwrap());
        runs.push(vec!["--grid".into(), p]);
    }
    for args in &runs {
        for cmd in ["verify", "analyze"] {
            let out = Command::new(bin)
                .arg(cmd)
                .args(args)
                .args(["-o", &dir.path().join("out.json").to_string_lossy()])
                .env_remove("HIBI_SEED")
                .output()
                .map_err(|e| e.to_string())?;
            check(out.status.code() == Some(0), || {
                format!("hibi {cmd} {} exited {:?}: {}", args.join(" "), out.status.code(), String::from_utf8_lossy(&out.stderr))
            })?;
        }
    }
    check(Path::new(bin).exists(), || "binary missing".into())?;
    Ok(format!("{} inputs, verify and analyze exit 0", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("pair faces: 4 generators, rank 3, alternating relation", criterion_1),
        ("four-way oracle agreement", criterion_2),
        ("purity of the singular locus", criterion_3),
        ("L6 ground truth", criterion_4),
        ("builder cardinalities", criterion_5),
        ("diagram fidelity", criterion_6),
        ("smooth C family", criterion_7),
        ("headless verify exit codes", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
