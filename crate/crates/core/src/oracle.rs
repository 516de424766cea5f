//! An independent check on face classification: the Jacobian criterion
//! applied to the binomial equations of the variety at each distinguished
//! point, over an exhaustive or sampled list of faces.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitSet;
use crate::cone::{distinguished_point, linearly_dependent, structural_witnesses, z_set_member, HibiData};
use crate::error::{Error, Result};
use crate::lattice::DistLattice;
use crate::linalg::SparseRank;

/// `X_a X_b − X_join X_meet` for an incomparable pair `a, b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BinomialGenerator {
    pub a: usize,
    pub b: usize,
    pub join_el: usize,
    pub meet_el: usize,
}

/// One binomial per unordered incomparable pair, in `(a, b)` order.
pub fn binomial_generators(l: &DistLattice) -> Vec<BinomialGenerator> {
    let mut out = Vec::new();
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            if !l.poset().comparable(a, b) {
                out.push(BinomialGenerator { a, b, join_el: l.join(a, b), meet_el: l.meet(a, b) });
            }
        }
    }
    out
}

/// Jacobian criterion at a 0/1 point indexed by ℒ: smooth iff the Jacobian
/// of the binomials has rank `#ℒ − #J(ℒ)`.
pub fn jacobian_smooth_at(l: &DistLattice, binomials: &[BinomialGenerator], point: &[u8]) -> Result<bool> {
    let p = |i: usize| i64::from(point[i]);
    let mut rank = SparseRank::new();
    for g in binomials {
        if p(g.a) * p(g.b) != p(g.join_el) * p(g.meet_el) {
            return Err(Error::PointNotOnVariety(g.a, g.b));
        }
        let row = [(g.a, p(g.b)), (g.b, p(g.a)), (g.join_el, -p(g.meet_el)), (g.meet_el, -p(g.join_el))];
        if row.iter().any(|&(_, v)| v != 0) {
            rank.add_row(row)?;
        }
    }
    Ok(rank.rank() == l.len() - l.join_irreducibles().count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum EnumerationMode {
    Full,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleConfig {
    /// Lattices with at most this many elements are enumerated exhaustively.
    pub full_enum_threshold: usize,
    /// Random faces added in sampled mode.
    pub sample_count: usize,
    pub seed: u64,
    /// Upper bound on the number of faces produced.
    pub cap: usize,
    /// Worker threads for per-face checks; 0 uses rayon's default.
    pub parallelism: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { full_enum_threshold: 20, sample_count: 200, seed: 0, cap: 1 << 20, parallelism: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub mode: EnumerationMode,
    /// Sorted by size, then members.
    pub sets: Vec<BitSet>,
}

/// Embedded sublattices of `l`, all of them when `l` is small enough and a
/// seeded sample otherwise. `∅` and `ℒ` are always included.
pub fn enumerate_embedded_sublattices(l: &DistLattice, cfg: &OracleConfig) -> Result<Enumeration> {
    let (mode, sets) = if l.len() <= cfg.full_enum_threshold {
        (EnumerationMode::Full, enumerate_all(l, cfg.cap)?)
    } else {
        (EnumerationMode::Sampled, sample(l, cfg)?)
    };
    let mut keyed: Vec<(usize, Vec<usize>, BitSet)> =
        sets.into_iter().map(|s| (s.count(), s.to_vec(), s)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(Enumeration { mode, sets: keyed.into_iter().map(|k| k.2).collect() })
}

/// Depth-first search over membership assignments. Each incomparable pair
/// gives the constraint `[a][b] = [a∨b][a∧b]`, propagated to a fixpoint
/// after every decision, so every complete assignment is a distinct answer.
fn enumerate_all(l: &DistLattice, cap: usize) -> Result<Vec<BitSet>> {
    let n = l.len();
    let cons: Vec<[usize; 4]> = binomial_generators(l)
        .into_iter()
        .map(|g| [g.a, g.b, g.join_el, g.meet_el])
        .collect();
    let mut watch = vec![Vec::new(); n];
    for (k, c) in cons.iter().enumerate() {
        for &v in c {
            watch[v].push(k);
        }
    }
    let mut out = Vec::new();
    let state = vec![None; n];
    search(&cons, &watch, &state, &mut out, cap)?;
    Ok(out)
}

fn search(
    cons: &[[usize; 4]],
    watch: &[Vec<usize>],
    state: &[Option<bool>],
    out: &mut Vec<BitSet>,
    cap: usize,
) -> Result<()> {
    let Some(v) = state.iter().position(Option::is_none) else {
        if out.len() == cap {
            return Err(Error::CapExceeded(cap));
        }
        let n = state.len();
        out.push(BitSet::from_iter(n, (0..n).filter(|&i| state[i] == Some(true))));
        return Ok(());
    };
    for value in [false, true] {
        let mut next = state.to_vec();
        next[v] = Some(value);
        if propagate(cons, watch, &mut next, v) {
            search(cons, watch, &next, out, cap)?;
        }
    }
    Ok(())
}

/// Returns false on a contradiction.
fn propagate(cons: &[[usize; 4]], watch: &[Vec<usize>], state: &mut [Option<bool>], start: usize) -> bool {
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for &k in &watch[v] {
            let [a, b, j, m] = cons[k];
            for (lhs, rhs) in [([a, b], [j, m]), ([j, m], [a, b])] {
                let l0 = (state[lhs[0]], state[lhs[1]]);
                let r = (state[rhs[0]], state[rhs[1]]);
                let forced: &[(usize, bool)] = match (l0, r) {
                    ((Some(true), Some(true)), _) => &[(rhs[0], true), (rhs[1], true)],
                    ((Some(false), _) | (_, Some(false)), (Some(true), None)) => &[(rhs[1], false)],
                    ((Some(false), _) | (_, Some(false)), (None, Some(true))) => &[(rhs[0], false)],
                    ((Some(false), _) | (_, Some(false)), (Some(true), Some(true))) => return false,
                    _ => &[],
                };
                for &(x, val) in forced {
                    match state[x] {
                        Some(cur) if cur != val => return false,
                        Some(_) => {}
                        None => {
                            state[x] = Some(val);
                            queue.push(x);
                        }
                    }
                }
            }
        }
    }
    true
}

fn sample(l: &DistLattice, cfg: &OracleConfig) -> Result<Vec<BitSet>> {
    let n = l.len();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let keep = |s: BitSet, found: &mut BTreeSet<Vec<usize>>| {
        if l.is_embedded_sublattice(&s) {
            found.insert(s.to_vec());
        }
    };
    keep(BitSet::new(n), &mut found);
    keep(l.full_set(), &mut found);

    // complements of intervals between incomparable irreducibles
    let jm = l.jm_irreducibles().to_vec();
    let mut complements = Vec::new();
    for (k, &a) in jm.iter().enumerate() {
        for &b in &jm[k + 1..] {
            if !l.poset().comparable(a, b) {
                let iv = l.interval(l.meet(a, b), l.join(a, b))?;
                let d = BitSet::from_iter(n, (0..n).filter(|&x| !iv.contains(x)));
                if l.is_embedded_sublattice(&d) {
                    complements.push(d);
                }
            }
        }
    }
    for (k, d) in complements.iter().enumerate() {
        keep(d.clone(), &mut found);
        for e in &complements[k + 1..] {
            keep(d.intersection(e), &mut found);
        }
    }
    for x in 0..n {
        let up = l.poset().up_set(x);
        let down = l.poset().down_set(x);
        keep(BitSet::from_iter(n, (0..n).filter(|&y| !up.contains(y))), &mut found);
        keep(BitSet::from_iter(n, (0..n).filter(|&y| !down.contains(y))), &mut found);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bases: Vec<Vec<usize>> = found.iter().filter(|s| !s.is_empty()).cloned().collect();
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..cfg.sample_count {
        let base = if rng.gen_bool(0.5) { &all } else { bases.choose(&mut rng).unwrap_or(&all) };
        let k = rng.gen_range(1..=3.min(base.len()));
        let seed = BitSet::from_iter(n, base.choose_multiple(&mut rng, k).copied());
        keep(l.embedded_closure(&seed), &mut found);
    }
    if found.len() > cfg.cap {
        return Err(Error::CapExceeded(cfg.cap));
    }
    Ok(found.into_iter().map(|v| BitSet::from_iter(n, v)).collect())
}

/// Verdicts for one face; `true` means singular. The grid-based tests are
/// absent when the join irreducibles do not form a grid lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceVerdict {
    pub d: Vec<usize>,
    pub face_dim: Option<usize>,
    pub structural: Option<bool>,
    pub linear: Option<bool>,
    pub jacobian: bool,
    pub z_set: Option<bool>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub lattice: String,
    pub num_elements: usize,
    pub dim: usize,
    pub grid: bool,
    pub num_pairs: Option<usize>,
    pub mode: EnumerationMode,
    pub config: OracleConfig,
    pub num_faces: usize,
    pub num_singular: usize,
    pub disagreements: Vec<Vec<usize>>,
    pub all_agree: bool,
    pub faces: Vec<FaceVerdict>,
}

/// Runs every available test on every enumerated face.
pub fn cross_validate(l: &DistLattice, cfg: &OracleConfig) -> Result<VerificationReport> {
    let data = match HibiData::new(l) {
        Ok(d) => Some(d),
        Err(Error::WidthExceeded | Error::JoinIrreduciblesNotLattice(_)) => None,
        Err(e) => return Err(e),
    };
    let binomials = binomial_generators(l);
    let en = enumerate_embedded_sublattices(l, cfg)?;

    let check = |d: &BitSet| -> Result<FaceVerdict> {
        let point: Vec<u8> = (0..l.len()).map(|i| u8::from(d.contains(i))).collect();
        let jacobian = !jacobian_smooth_at(l, &binomials, &point)?;
        let Some(data) = &data else {
            return Ok(FaceVerdict {
                d: d.to_vec(),
                face_dim: None,
                structural: None,
                linear: None,
                jacobian,
                z_set: None,
                agree: true,
            });
        };
        let face = data.face(l, d)?;
        let structural = !structural_witnesses(&face, &data.pairs).is_empty();
        let linear = linearly_dependent(&face);
        let p = distinguished_point(&face);
        let z_set = data.pairs.iter().any(|pair| z_set_member(&p, pair));
        Ok(FaceVerdict {
            d: d.to_vec(),
            face_dim: Some(face.dim),
            structural: Some(structural),
            linear: Some(linear),
            jacobian,
            z_set: Some(z_set),
            agree: structural == linear && linear == jacobian && jacobian == z_set,
        })
    };

    let faces: Vec<FaceVerdict> = if cfg.parallelism == 1 {
        en.sets.iter().map(check).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| Error::InvalidSpec("parallelism".into(), e.to_string()))?;
        pool.install(|| en.sets.par_iter().map(check).collect::<Result<_>>())?
    };

    let disagreements: Vec<Vec<usize>> = faces.iter().filter(|f| !f.agree).map(|f| f.d.clone()).collect();
    Ok(VerificationReport {
        lattice: l.name().to_string(),
        num_elements: l.len(),
        dim: l.join_irreducibles().count(),
        grid: data.is_some(),
        num_pairs: data.as_ref().map(|d| d.pairs.len()),
        mode: en.mode,
        config: *cfg,
        num_faces: faces.len(),
        num_singular: faces.iter().filter(|f| f.jacobian).count(),
        all_agree: disagreements.is_empty(),
        disagreements,
        faces,
    })
}
