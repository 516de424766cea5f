//! The cone of a Hibi toric variety and its faces.
//!
//! Coordinates are indexed by the join irreducibles of ℒ, bottom included.
//! A face is named by its embedded sublattice `D`; its generators are the
//! members of `W` on which every `f_{I_α}`, `α ∈ D`, vanishes.

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::grid::{irreducible_pairs, l_alpha_beta, IrreduciblePair, JoinIrreducibleGrid};
use crate::lattice::DistLattice;
use crate::linalg::{bareiss_rank, integer_relations};

/// An integer vector indexed by the join irreducibles (positions in
/// [`HibiCone::coordinates`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ConeVector(pub Vec<i64>);

impl ConeVector {
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        ConeVector(v)
    }

    /// `e_lower − e_upper`.
    pub fn difference(dim: usize, lower: usize, upper: usize) -> Self {
        let mut v = vec![0; dim];
        v[lower] = 1;
        v[upper] = -1;
        ConeVector(v)
    }
}

/// `f_A = Σ_{z ∈ A} f_z` for a down-closed set `A` of join irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFunctional {
    support: BitSet,
}

impl IdealFunctional {
    pub fn support(&self) -> &BitSet {
        &self.support
    }

    pub fn eval(&self, v: &ConeVector) -> i64 {
        self.support.iter().map(|i| v.0[i]).sum()
    }
}

/// Where a generator of the cone comes from; ids are elements of ℒ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum GeneratorKind {
    /// `e_z` for `z` maximal among the join irreducibles.
    Max { z: usize },
    /// `e_lower − e_upper` for a cover among the join irreducibles.
    Cover { lower: usize, upper: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub vector: ConeVector,
}

/// The cone `σ` with its generator set `W` and the functionals `f_{I_α}`.
#[derive(Clone, Debug)]
pub struct HibiCone {
    coords: Vec<usize>,
    position: Vec<Option<usize>>,
    gens: Vec<Generator>,
    functionals: Vec<IdealFunctional>,
    /// For each element α of ℒ, the generators killed by `f_{I_α}`.
    zero_sets: Vec<BitSet>,
    lattice_len: usize,
}

impl HibiCone {
    pub fn new(l: &DistLattice) -> Result<HibiCone> {
        let coords = l.join_irreducibles().to_vec();
        let dim = coords.len();
        let mut position = vec![None; l.len()];
        for (i, &e) in coords.iter().enumerate() {
            position[e] = Some(i);
        }
        let poset = l.poset();
        let mut gens = Vec::new();
        for (i, &z) in coords.iter().enumerate() {
            if poset.up_set(z).intersection(l.join_irreducibles()).count() == 1 {
                gens.push(Generator { kind: GeneratorKind::Max { z }, vector: ConeVector::unit(dim, i) });
            }
        }
        for (i, &lower) in coords.iter().enumerate() {
            for (k, &upper) in coords.iter().enumerate() {
                if poset.lt(lower, upper) && is_cover_within(l, lower, upper) {
                    gens.push(Generator {
                        kind: GeneratorKind::Cover { lower, upper },
                        vector: ConeVector::difference(dim, i, k),
                    });
                }
            }
        }
        let functionals: Vec<IdealFunctional> = (0..l.len())
            .map(|a| IdealFunctional {
                support: BitSet::from_iter(dim, l.ideal_of(a).iter().map(|e| position[e].unwrap())),
            })
            .collect();
        let zero_sets = functionals
            .iter()
            .map(|f| BitSet::from_iter(gens.len(), (0..gens.len()).filter(|&g| f.eval(&gens[g].vector) == 0)))
            .collect();
        let cone = HibiCone { coords, position, gens, functionals, zero_sets, lattice_len: l.len() };
        let rank = bareiss_rank(&cone.gens.iter().map(|g| g.vector.0.clone()).collect::<Vec<_>>())?;
        if rank != dim {
            return Err(Error::TheoremViolation(format!("rank(W) = {rank}, expected {dim}")));
        }
        Ok(cone)
    }

    /// The join irreducibles indexing the coordinates, in id order.
    pub fn coordinates(&self) -> &[usize] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate index of a join irreducible.
    pub fn position(&self, e: usize) -> Option<usize> {
        self.position.get(e).copied().flatten()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// `f_{I_α}` for an element `α` of ℒ.
    pub fn functional(&self, alpha: usize) -> &IdealFunctional {
        &self.functionals[alpha]
    }

    /// Index in [`generators`](Self::generators) of `e_lower − e_upper`.
    pub fn cover_generator(&self, lower: usize, upper: usize) -> Option<usize> {
        self.gens
            .iter()
            .position(|g| g.kind == GeneratorKind::Cover { lower, upper })
    }

    /// The face whose embedded sublattice is `d`.
    pub fn face(&self, l: &DistLattice, d: &BitSet) -> Result<Face> {
        if d.universe() != self.lattice_len || !l.is_embedded_sublattice(d) {
            return Err(Error::NotEmbedded);
        }
        let mut keep = BitSet::full(self.gens.len());
        for alpha in d.iter() {
            keep.intersect_with(&self.zero_sets[alpha]);
        }
        let gens = keep.to_vec();
        let dim = self.rank_of(&gens)?;
        Ok(Face { d: d.clone(), gens, dim })
    }

    fn rank_of(&self, gens: &[usize]) -> Result<usize> {
        bareiss_rank(&gens.iter().map(|&g| self.gens[g].vector.0.clone()).collect::<Vec<_>>())
    }

    fn vectors(&self, face: &Face) -> Vec<Vec<i64>> {
        face.gens.iter().map(|&g| self.gens[g].vector.0.clone()).collect()
    }
}

fn is_cover_within(l: &DistLattice, lower: usize, upper: usize) -> bool {
    let between = l.poset().up_set(lower).intersection(l.poset().down_set(upper));
    between.intersection(l.join_irreducibles()).count() == 2
}

/// The generator vectors of `σ`.
pub fn cone_generators(l: &DistLattice) -> Result<Vec<ConeVector>> {
    Ok(HibiCone::new(l)?.gens.into_iter().map(|g| g.vector).collect())
}

/// A face `τ`, stored as its embedded sublattice `D_τ` and the indices of
/// its generators in `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub d: BitSet,
    pub gens: Vec<usize>,
    pub dim: usize,
}

/// The face of `ℒ_{α,β}`, checked against its expected four generators.
pub fn tau_ab(l: &DistLattice, cone: &HibiCone, jg: &JoinIrreducibleGrid, pair: &IrreduciblePair) -> Result<Face> {
    let d = l_alpha_beta(l, pair)?;
    let face = cone.face(l, &d)?;
    let el = |p| {
        jg.element_at(p)
            .ok_or_else(|| Error::TheoremViolation(format!("{p} is not in the grid")))
    };
    let (mu, a, b, c) = (el(pair.mu_pt)?, el(pair.a_pt)?, el(pair.b_pt)?, el(pair.c_pt)?);
    let mut expected = Vec::new();
    for (lo, hi) in [(mu, a), (mu, b), (a, c), (b, c)] {
        expected.push(cone.cover_generator(lo, hi).ok_or_else(|| {
            Error::TheoremViolation(format!("no cover generator {} < {}", l.label(lo), l.label(hi)))
        })?);
    }
    let mut sorted = expected.clone();
    sorted.sort_unstable();
    if face.gens != sorted {
        return Err(Error::TheoremViolation(format!(
            "face of the pair at μ = {} has {} generators, not the expected four",
            pair.mu_pt,
            face.gens.len()
        )));
    }
    if face.dim != 3 {
        return Err(Error::TheoremViolation(format!("face dimension {} != 3", face.dim)));
    }
    let g: Vec<&Vec<i64>> = expected.iter().map(|&i| &cone.gens[i].vector.0).collect();
    let relation_holds = (0..cone.dim()).all(|k| g[0][k] - g[1][k] + g[2][k] == g[3][k]);
    if !relation_holds {
        return Err(Error::TheoremViolation("g1 − g2 + g3 != g4".into()));
    }
    Ok(face)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum Classification {
    Smooth,
    /// Witnesses are `(α, β)` for each pair whose interval misses `D`.
    Singular { witnesses: Vec<(usize, usize)> },
}

impl Classification {
    pub fn is_singular(&self) -> bool {
        matches!(self, Classification::Singular { .. })
    }
}

/// Singular iff `D` misses some interval `[α ∧ β, α ∨ β]`.
pub fn structural_witnesses(face: &Face, pairs: &[IrreduciblePair]) -> Vec<(usize, usize)> {
    pairs
        .iter()
        .filter(|p| face.d.is_disjoint(&p.interval))
        .map(|p| (p.alpha, p.beta))
        .collect()
}

/// Singular iff the face's generators are linearly dependent.
pub fn linearly_dependent(face: &Face) -> bool {
    face.dim < face.gens.len()
}

/// Classifies a face by both the structural and the linear test and
/// requires them to agree.
pub fn classify_face(face: &Face, pairs: &[IrreduciblePair]) -> Result<Classification> {
    let witnesses = structural_witnesses(face, pairs);
    if witnesses.is_empty() == linearly_dependent(face) {
        return Err(Error::ClassifierDisagreement(face.d.to_vec()));
    }
    Ok(if witnesses.is_empty() {
        Classification::Smooth
    } else {
        Classification::Singular { witnesses }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityType {
    QuadricCone,
    SmoothPoint,
    Other,
}

pub fn singularity_type(cone: &HibiCone, face: &Face) -> Result<SingularityType> {
    if !linearly_dependent(face) {
        return Ok(SingularityType::SmoothPoint);
    }
    if face.gens.len() == 4 && face.dim == 3 {
        let rel = integer_relations(&cone.vectors(face))?;
        if let [c] = rel.as_slice() {
            let plus = c.iter().filter(|&&v| v == 1).count();
            let minus = c.iter().filter(|&&v| v == -1).count();
            if plus == 2 && minus == 2 {
                return Ok(SingularityType::QuadricCone);
            }
        }
    }
    Ok(SingularityType::Other)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitDims {
    pub face_dim: usize,
    pub orbit_dim: usize,
    pub orbit_closure_codim: usize,
}

pub fn orbit_dims(cone: &HibiCone, face: &Face) -> OrbitDims {
    OrbitDims {
        face_dim: face.dim,
        orbit_dim: cone.dim() - face.dim,
        orbit_closure_codim: face.dim,
    }
}

/// The point `P_τ`: 1 on `D`, 0 elsewhere, indexed by ℒ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DistinguishedPoint(pub Vec<u8>);

impl DistinguishedPoint {
    pub fn support(&self) -> BitSet {
        BitSet::from_iter(self.0.len(), (0..self.0.len()).filter(|&i| self.0[i] != 0))
    }
}

pub fn distinguished_point(face: &Face) -> DistinguishedPoint {
    let n = face.d.universe();
    DistinguishedPoint((0..n).map(|i| u8::from(face.d.contains(i))).collect())
}

/// Whether the point vanishes on all of `[α ∧ β, α ∨ β]`.
pub fn z_set_member(point: &DistinguishedPoint, pair: &IrreduciblePair) -> bool {
    pair.interval.iter().all(|t| point.0[t] == 0)
}

/// One irreducible component of the singular locus.
#[derive(Clone, Debug)]
pub struct SingularComponent {
    pub pair: IrreduciblePair,
    pub l_alpha_beta: BitSet,
    pub face: Face,
    pub dims: OrbitDims,
    pub kind: SingularityType,
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub dim: usize,
    pub components: Vec<SingularComponent>,
}

impl SingularLocus {
    pub fn is_smooth(&self) -> bool {
        self.components.is_empty()
    }

    pub fn pure_codim3(&self) -> bool {
        self.components.iter().all(|c| c.dims.orbit_closure_codim == 3)
    }
}

/// Everything needed to analyse one lattice whose join irreducibles form a
/// grid lattice.
#[derive(Clone, Debug)]
pub struct HibiData {
    pub cone: HibiCone,
    pub jgrid: JoinIrreducibleGrid,
    pub pairs: Vec<IrreduciblePair>,
}

impl HibiData {
    pub fn new(l: &DistLattice) -> Result<HibiData> {
        let jgrid = JoinIrreducibleGrid::new(l)?;
        Self::with_grid(l, jgrid)
    }

    pub fn with_grid(l: &DistLattice, jgrid: JoinIrreducibleGrid) -> Result<HibiData> {
        let cone = HibiCone::new(l)?;
        let pairs = irreducible_pairs(l, &jgrid)?;
        Ok(HibiData { cone, jgrid, pairs })
    }

    pub fn face(&self, l: &DistLattice, d: &BitSet) -> Result<Face> {
        self.cone.face(l, d)
    }

    pub fn classify(&self, face: &Face) -> Result<Classification> {
        classify_face(face, &self.pairs)
    }

    /// One component per irreducible pair, in `μ` order.
    pub fn singular_locus(&self, l: &DistLattice) -> Result<SingularLocus> {
        let mut components = Vec::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            let face = tau_ab(l, &self.cone, &self.jgrid, pair)?;
            let kind = singularity_type(&self.cone, &face)?;
            components.push(SingularComponent {
                pair: pair.clone(),
                l_alpha_beta: face.d.clone(),
                dims: orbit_dims(&self.cone, &face),
                face,
                kind,
            });
        }
        Ok(SingularLocus { dim: self.cone.dim(), components })
    }
}

pub fn singular_locus(l: &DistLattice) -> Result<SingularLocus> {
    HibiData::new(l)?.singular_locus(l)
}
