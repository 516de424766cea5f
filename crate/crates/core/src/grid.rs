//! Grid lattices: finite sublattices of ℕ×ℕ whose covers are unit steps.
//!
//! When the nonzero join irreducibles `J` of a distributive lattice `ℒ` form
//! such a grid, every non-meet-irreducible `μ ∈ J` picks out an incomparable
//! pair `(α, β)` of elements irreducible in `ℒ`, and every such pair arises
//! from exactly one `μ`. [`irreducible_pairs`] enumerates the pairs both ways
//! and insists the two lists agree.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{DistLattice, DEFAULT_IDEAL_CAP};
use crate::poset::Poset;

/// A point of ℕ×ℕ with both coordinates at least 1. Serializes as `[x, y]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct GridPoint {
    pub x: u32,
    pub y: u32,
}

impl GridPoint {
    pub const fn new(x: u32, y: u32) -> Self {
        GridPoint { x, y }
    }

    pub fn min(self, o: GridPoint) -> GridPoint {
        GridPoint::new(self.x.min(o.x), self.y.min(o.y))
    }

    pub fn max(self, o: GridPoint) -> GridPoint {
        GridPoint::new(self.x.max(o.x), self.y.max(o.y))
    }

    pub fn leq(self, o: GridPoint) -> bool {
        self.x <= o.x && self.y <= o.y
    }

    pub fn transpose(self) -> GridPoint {
        GridPoint::new(self.y, self.x)
    }
}

impl From<[u32; 2]> for GridPoint {
    fn from([x, y]: [u32; 2]) -> Self {
        GridPoint::new(x, y)
    }
}

impl From<GridPoint> for [u32; 2] {
    fn from(p: GridPoint) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The on-disk grid format: `{"points": [[x, y], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridFile {
    pub points: Vec<GridPoint>,
}

/// A validated grid lattice together with its induced distributive lattice.
/// Lattice element `i` is `points()[i]`; points are sorted.
#[derive(Clone, Debug)]
pub struct GridLattice {
    points: Vec<GridPoint>,
    index: HashMap<GridPoint, usize>,
    lattice: DistLattice,
}

impl GridLattice {
    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: GridPoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.index.contains_key(&p)
    }

    pub fn upper_covers(&self, p: GridPoint) -> Vec<GridPoint> {
        self.index_of(p)
            .map(|i| self.lattice.poset().upper_covers(i).iter().map(|&j| self.points[j]).collect())
            .unwrap_or_default()
    }

    /// Points of the grid with at least two upper covers.
    pub fn non_meet_irreducibles(&self) -> Vec<GridPoint> {
        self.points.iter().copied().filter(|&p| self.upper_covers(p).len() >= 2).collect()
    }
}

/// Checks min/max closure and unit-step covers, and builds the induced lattice.
pub fn validate_grid(points: impl IntoIterator<Item = GridPoint>) -> Result<GridLattice> {
    let set: BTreeSet<GridPoint> = points.into_iter().collect();
    if set.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if let Some(&p) = set.iter().find(|p| p.x == 0 || p.y == 0) {
        return Err(Error::ZeroCoordinate(p));
    }
    let points: Vec<GridPoint> = set.into_iter().collect();
    let index: HashMap<GridPoint, usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = points.len();
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for i in 0..n {
        for j in i..n {
            let (p, q) = (points[i], points[j]);
            let (Some(&u), Some(&m)) = (index.get(&p.max(q)), index.get(&p.min(q))) else {
                return Err(Error::NotMinMaxClosed(p, q));
            };
            join[i * n + j] = u;
            join[j * n + i] = u;
            meet[i * n + j] = m;
            meet[j * n + i] = m;
        }
    }
    let labels = points.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
    let poset = Poset::from_leq_fn(labels, |i, j| points[i].leq(points[j]));
    for &(lo, hi) in poset.covers() {
        let (a, b) = (points[lo], points[hi]);
        if (b.x - a.x) + (b.y - a.y) != 1 {
            return Err(Error::NonUnitCover(a, b));
        }
    }
    let lattice = DistLattice::from_tables(poset, join, meet).with_name("grid");
    Ok(GridLattice { points, index, lattice })
}

/// A grid realization of a distributive lattice: `coords[v]` is the point of
/// lattice element `v`.
#[derive(Clone, Debug)]
pub struct GridEmbedding {
    pub grid: GridLattice,
    pub coords: Vec<GridPoint>,
}

/// Realizes a distributive lattice as a grid lattice, in canonical position.
///
/// The nonzero join irreducibles are split into two chains `C1`, `C2` and
/// `v ↦ (1 + |I_v ∩ C1|, 1 + |I_v ∩ C2|)`. The split is canonical: join
/// irreducibles comparable to all others go to `C2`; each connected block of
/// the incomparability graph is oriented to make its own shape
/// lexicographically least; finally the axes are swapped if that makes the
/// sorted point list lexicographically smaller. The result depends only on
/// the isomorphism class of the lattice.
pub fn grid_embed(j: &DistLattice) -> Result<GridEmbedding> {
    let p = j.nonzero_join_irreducibles();
    let k = p.len();
    let jp = j.poset();

    // Two-colour the incomparability graph, one component at a time.
    let mut color = vec![u8::MAX; k];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                if a == b || jp.comparable(p[a], p[b]) {
                    continue;
                }
                if color[b] == u8::MAX {
                    color[b] = 1 - color[a];
                    comp.push(b);
                    queue.push_back(b);
                } else if color[b] == color[a] {
                    return Err(Error::WidthExceeded);
                }
            }
        }
        components.push(comp);
    }

    // in_first[a]: whether p[a] goes to the first (x) chain.
    let mut in_first = vec![false; k];
    let below = |v: usize, a: usize| jp.leq(p[a], v);
    for comp in components.iter().filter(|c| c.len() > 1) {
        let shape = |flip: bool| {
            let mut pts: Vec<(usize, usize)> = (0..j.len())
                .map(|v| {
                    let xs = comp.iter().filter(|&&a| below(v, a) && (color[a] == 0) != flip).count();
                    let ys = comp.iter().filter(|&&a| below(v, a) && (color[a] == 0) == flip).count();
                    (xs, ys)
                })
                .collect();
            pts.sort_unstable();
            pts.dedup();
            pts
        };
        let flip = shape(true) < shape(false);
        for &a in comp {
            in_first[a] = (color[a] == 0) != flip;
        }
    }

    let mut coords: Vec<GridPoint> = (0..j.len())
        .map(|v| {
            let xs = (0..k).filter(|&a| in_first[a] && below(v, a)).count() as u32;
            let ys = (0..k).filter(|&a| !in_first[a] && below(v, a)).count() as u32;
            GridPoint::new(1 + xs, 1 + ys)
        })
        .collect();
    let mut sorted = coords.clone();
    sorted.sort_unstable();
    let mut transposed: Vec<GridPoint> = coords.iter().map(|c| c.transpose()).collect();
    transposed.sort_unstable();
    if transposed < sorted {
        coords.iter_mut().for_each(|c| *c = c.transpose());
    }

    verify_embedding(j, &coords)?;
    let grid = validate_grid(coords.iter().copied())?;
    if grid.len() != j.len() {
        return Err(Error::VerificationFailed("embedding is not injective".into()));
    }
    Ok(GridEmbedding { grid, coords })
}

fn verify_embedding(j: &DistLattice, coords: &[GridPoint]) -> Result<()> {
    let n = j.len();
    for a in 0..n {
        for b in 0..n {
            if coords[j.join(a, b)] != coords[a].max(coords[b])
                || coords[j.meet(a, b)] != coords[a].min(coords[b])
            {
                return Err(Error::VerificationFailed(format!(
                    "join/meet of `{}` and `{}` not coordinatewise",
                    j.label(a),
                    j.label(b)
                )));
            }
        }
    }
    for &(lo, hi) in j.poset().covers() {
        let (a, b) = (coords[lo], coords[hi]);
        if !a.leq(b) || (b.x - a.x) + (b.y - a.y) != 1 {
            return Err(Error::VerificationFailed(format!("cover {a} < {b} is not a unit step")));
        }
    }
    Ok(())
}

/// Canonical form of a grid point set: validated, re-embedded from its
/// induced lattice and returned sorted.
pub fn canonical_points(points: impl IntoIterator<Item = GridPoint>) -> Result<Vec<GridPoint>> {
    let grid = validate_grid(points)?;
    Ok(grid_embed(grid.lattice())?.grid.points().to_vec())
}

/// The nonzero join irreducibles of a lattice `ℒ`, realized as a grid.
#[derive(Clone, Debug)]
pub struct JoinIrreducibleGrid {
    /// ℒ-ids of the nonzero join irreducibles.
    elems: Vec<usize>,
    /// `points[k]` is the grid point of `elems[k]`.
    points: Vec<GridPoint>,
    by_point: HashMap<GridPoint, usize>,
    grid: Option<GridLattice>,
}

impl JoinIrreducibleGrid {
    pub fn new(l: &DistLattice) -> Result<Self> {
        let elems = l.nonzero_join_irreducibles();
        if elems.is_empty() {
            return Ok(JoinIrreducibleGrid {
                elems,
                points: Vec::new(),
                by_point: HashMap::new(),
                grid: None,
            });
        }
        let jl = DistLattice::from_poset(l.poset().induced(&elems))
            .map_err(|e| Error::JoinIrreduciblesNotLattice(e.to_string()))?;
        let emb = grid_embed(&jl)?;
        let by_point = emb.coords.iter().zip(&elems).map(|(&p, &e)| (p, e)).collect();
        Ok(JoinIrreducibleGrid { elems, points: emb.coords, by_point, grid: Some(emb.grid) })
    }

    /// Uses caller-supplied coordinates (e.g. a published diagram) instead of
    /// the canonical embedding; `coord_of` is called on each nonzero join
    /// irreducible and the result must be a valid grid realization.
    pub fn with_coords(l: &DistLattice, coord_of: impl Fn(usize) -> GridPoint) -> Result<Self> {
        let elems = l.nonzero_join_irreducibles();
        if elems.is_empty() {
            return Self::new(l);
        }
        let jl = DistLattice::from_poset(l.poset().induced(&elems))
            .map_err(|e| Error::JoinIrreduciblesNotLattice(e.to_string()))?;
        let points: Vec<GridPoint> = elems.iter().map(|&e| coord_of(e)).collect();
        verify_embedding(&jl, &points)?;
        let grid = validate_grid(points.iter().copied())?;
        if grid.len() != elems.len() {
            return Err(Error::VerificationFailed("coordinates are not injective".into()));
        }
        let by_point = points.iter().zip(&elems).map(|(&p, &e)| (p, e)).collect();
        Ok(JoinIrreducibleGrid { elems, points, by_point, grid: Some(grid) })
    }

    pub fn grid(&self) -> Option<&GridLattice> {
        self.grid.as_ref()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    /// The ℒ element sitting at grid point `p`.
    pub fn element_at(&self, p: GridPoint) -> Option<usize> {
        self.by_point.get(&p).copied()
    }

    /// The grid point of the ℒ element `e`, if `e` is a nonzero join irreducible.
    pub fn point_of(&self, e: usize) -> Option<GridPoint> {
        self.elems.iter().position(|&x| x == e).map(|k| self.points[k])
    }

    fn upper_covers(&self, p: GridPoint) -> Vec<GridPoint> {
        self.grid.as_ref().map(|g| g.upper_covers(p)).unwrap_or_default()
    }
}

/// An incomparable pair `(α, β)` of irreducibles of ℒ with the grid data
/// around `μ = α ∧ β`: `A`, `B` cover `μ` and `C = A ∨ B`.
///
/// `α` is the member sharing `μ`'s x coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreduciblePair {
    pub alpha: usize,
    pub beta: usize,
    /// `α ∧ β` in ℒ; it is the join irreducible at `mu_pt`.
    pub meet: usize,
    /// `α ∨ β` in ℒ.
    pub join: usize,
    pub alpha_pt: GridPoint,
    pub beta_pt: GridPoint,
    pub mu_pt: GridPoint,
    pub a_pt: GridPoint,
    pub b_pt: GridPoint,
    pub c_pt: GridPoint,
    /// `[α ∧ β, α ∨ β]` in ℒ.
    pub interval: BitSet,
}

impl IrreduciblePair {
    fn key(&self) -> (usize, usize) {
        (self.alpha.min(self.beta), self.alpha.max(self.beta))
    }
}

/// The incomparable irreducible pair determined by a non-meet-irreducible `μ ∈ J`.
pub fn pair_from_mu(
    l: &DistLattice,
    jg: &JoinIrreducibleGrid,
    mu: GridPoint,
) -> Result<IrreduciblePair> {
    if jg.element_at(mu).is_none() {
        return Err(Error::NotAGridPoint(mu));
    }
    if jg.upper_covers(mu).len() < 2 {
        return Err(Error::MuMeetIrreducible(mu));
    }
    let pts = jg.points();
    let alpha_pt = *pts.iter().filter(|p| p.x == mu.x && p.y > mu.y).max().unwrap();
    let beta_pt = *pts.iter().filter(|p| p.y == mu.y && p.x > mu.x).max().unwrap();
    let a_pt = GridPoint::new(mu.x, mu.y + 1);
    let b_pt = GridPoint::new(mu.x + 1, mu.y);
    let c_pt = GridPoint::new(mu.x + 1, mu.y + 1);
    for q in [a_pt, b_pt, c_pt] {
        if jg.element_at(q).is_none() {
            return Err(Error::TheoremViolation(format!("{q} missing next to μ = {mu}")));
        }
    }
    let alpha = jg.element_at(alpha_pt).unwrap();
    let beta = jg.element_at(beta_pt).unwrap();
    let jm = l.jm_irreducibles();
    if !jm.contains(alpha) || !jm.contains(beta) {
        return Err(Error::TheoremViolation(format!(
            "{alpha_pt} or {beta_pt} is not irreducible in ℒ"
        )));
    }
    let meet = l.meet(alpha, beta);
    if Some(meet) != jg.element_at(mu) {
        return Err(Error::TheoremViolation(format!("ℒ-meet of the pair is not μ = {mu}")));
    }
    let join = l.join(alpha, beta);
    let interval = l.interval(meet, join)?;
    Ok(IrreduciblePair { alpha, beta, meet, join, alpha_pt, beta_pt, mu_pt: mu, a_pt, b_pt, c_pt, interval })
}

/// All incomparable pairs of elements irreducible in ℒ, sorted by `μ`.
///
/// Computed from the non-meet-irreducible points of `J` and cross-checked
/// against a direct scan of ℒ's irreducibles.
pub fn irreducible_pairs(l: &DistLattice, jg: &JoinIrreducibleGrid) -> Result<Vec<IrreduciblePair>> {
    let jm = l.jm_irreducibles().to_vec();
    let mut direct = BTreeSet::new();
    for (k, &a) in jm.iter().enumerate() {
        for &b in &jm[k + 1..] {
            if !l.poset().comparable(a, b) {
                direct.insert((a, b));
            }
        }
    }
    let mut pairs = Vec::new();
    if let Some(g) = jg.grid() {
        for mu in g.non_meet_irreducibles() {
            pairs.push(pair_from_mu(l, jg, mu)?);
        }
    }
    let via_mu: BTreeSet<(usize, usize)> = pairs.iter().map(IrreduciblePair::key).collect();
    if via_mu != direct || via_mu.len() != pairs.len() {
        return Err(Error::EnumerationMismatch(format!(
            "{} direct pairs vs {} from μ",
            direct.len(),
            pairs.len()
        )));
    }
    pairs.sort_by_key(|p| (p.mu_pt.x, p.mu_pt.y));
    Ok(pairs)
}

/// `ℒ_{α,β} = ℒ ∖ [α ∧ β, α ∨ β]`, checked to be an embedded sublattice.
pub fn l_alpha_beta(l: &DistLattice, pair: &IrreduciblePair) -> Result<BitSet> {
    let d = BitSet::from_iter(l.len(), (0..l.len()).filter(|&x| !pair.interval.contains(x)));
    if !l.is_embedded_sublattice(&d) {
        return Err(Error::NotEmbedded);
    }
    Ok(d)
}

/// The lattice of order ideals of a grid, with each nonzero join
/// irreducible (a principal ideal) placed at its generating point.
pub fn ideals_of_grid(grid: &GridLattice) -> Result<(DistLattice, JoinIrreducibleGrid)> {
    let poset = grid.lattice().poset();
    let (l, members) = DistLattice::ideals_lattice_with_members(poset, DEFAULT_IDEAL_CAP)?;
    let jg = JoinIrreducibleGrid::with_coords(&l, |e| {
        let top = members[e]
            .iter()
            .max_by_key(|&i| poset.down_set(i).count())
            .expect("nonzero join irreducible");
        grid.points()[top]
    })?;
    Ok((l, jg))
}

/// A random connected grid lattice inside `[1, width] × [1, height]`.
///
/// Column `x` holds the run `lo(x) ..= hi(x)`, with `lo` and `hi` weakly
/// increasing and `lo(x + 1) <= hi(x)`. Such regions are closed under
/// coordinatewise min/max and every cover is a unit step.
pub fn random_grid<R: Rng + ?Sized>(width: u32, height: u32, rng: &mut R) -> Vec<GridPoint> {
    assert!(width >= 1 && height >= 1, "grid bounds must be positive");
    let cols = rng.gen_range(1..=width);
    let mut lo = rng.gen_range(1..=height);
    let mut hi = rng.gen_range(lo..=height);
    let mut points = Vec::new();
    for x in 1..=cols {
        if x > 1 {
            lo = rng.gen_range(lo..=hi);
            hi = rng.gen_range(hi.max(lo)..=height);
        }
        points.extend((lo..=hi).map(|y| GridPoint::new(x, y)));
    }
    points
}
