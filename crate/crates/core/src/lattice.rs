//! Finite distributive lattices and the Birkhoff correspondence.
//!
//! Join irreducibles are taken with the "at most one lower cover" rule, so the
//! bottom element is included. That full set is what indexes the torus of the
//! Hibi variety; [`DistLattice::nonzero_join_irreducibles`] drops the bottom
//! and gives the poset whose ideals rebuild the lattice.

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default cap on the number of ideals `ideals_lattice` will materialize.
pub const DEFAULT_IDEAL_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistLattice {
    name: String,
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    join_irr: BitSet,
    meet_irr: BitSet,
}

impl DistLattice {
    /// Checks that `poset` is a distributive lattice and fills in the tables.
    pub fn from_poset(poset: Poset) -> Result<DistLattice> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice("∅".into(), "∅".into(), "bottom element"));
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let ub = poset.up_set(i).intersection(poset.up_set(j));
                let ubc = ub.count();
                let lub = ub.iter().find(|&u| poset.up_set(u).count() == ubc).ok_or_else(|| {
                    Error::NotALattice(poset.label(i).into(), poset.label(j).into(), "join")
                })?;
                let lb = poset.down_set(i).intersection(poset.down_set(j));
                let lbc = lb.count();
                let glb = lb.iter().find(|&u| poset.down_set(u).count() == lbc).ok_or_else(|| {
                    Error::NotALattice(poset.label(i).into(), poset.label(j).into(), "meet")
                })?;
                join[i * n + j] = lub;
                join[j * n + i] = lub;
                meet[i * n + j] = glb;
                meet[j * n + i] = glb;
            }
        }
        let lattice = Self::from_tables(poset, join, meet);
        lattice.check_distributive()?;
        Ok(lattice)
    }

    /// Assembles a lattice from tables already known to be correct.
    pub(crate) fn from_tables(poset: Poset, join: Vec<usize>, meet: Vec<usize>) -> DistLattice {
        let n = poset.len();
        let bottom = poset.minimal_elements()[0];
        let top = poset.maximal_elements()[0];
        let join_irr = BitSet::from_iter(n, (0..n).filter(|&i| poset.lower_covers(i).len() <= 1));
        let meet_irr = BitSet::from_iter(n, (0..n).filter(|&i| poset.upper_covers(i).len() <= 1));
        DistLattice { name: String::new(), poset, join, meet, bottom, top, join_irr, meet_irr }
    }

    /// The lattice of all order ideals of `p` ordered by inclusion.
    ///
    /// Elements are sorted by (ideal size, label); each ideal is labelled by
    /// its maximal elements, e.g. `{a0,b1}`, and the empty ideal by `{}`.
    pub fn ideals_lattice(p: &Poset, cap: usize) -> Result<DistLattice> {
        Self::ideals_lattice_with_members(p, cap).map(|(l, _)| l)
    }

    /// As [`Self::ideals_lattice`], also returning each element's ideal.
    pub fn ideals_lattice_with_members(p: &Poset, cap: usize) -> Result<(DistLattice, Vec<BitSet>)> {
        let ideals = p.order_ideals(cap)?;
        let mut keyed: Vec<(usize, String, BitSet)> = ideals
            .into_iter()
            .map(|ideal| {
                let maxima: Vec<&str> = p.maxima_of(&ideal).iter().map(|&m| p.label(m)).collect();
                (ideal.count(), format!("{{{}}}", maxima.join(",")), ideal)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let index: HashMap<&BitSet, usize> =
            keyed.iter().enumerate().map(|(i, k)| (&k.2, i)).collect();
        let n = keyed.len();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let u = index[&keyed[i].2.union(&keyed[j].2)];
                let m = index[&keyed[i].2.intersection(&keyed[j].2)];
                join[i * n + j] = u;
                join[j * n + i] = u;
                meet[i * n + j] = m;
                meet[j * n + i] = m;
            }
        }
        let up = (0..n)
            .map(|i| BitSet::from_iter(n, (0..n).filter(|&j| keyed[i].2.is_subset(&keyed[j].2))))
            .collect();
        let labels = keyed.iter().map(|k| k.1.clone()).collect();
        let poset = Poset::from_up_sets(labels, up);
        let members = keyed.into_iter().map(|k| k.2).collect();
        Ok((Self::from_tables(poset, join, meet), members))
    }

    /// The `k`-element chain as a lattice (`k >= 1`).
    pub fn chain(k: usize) -> Result<DistLattice> {
        Self::from_poset(Poset::chain(k)).map(|l| l.with_name(format!("chain({k})")))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.len())
    }

    fn check_distributive(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    let lhs2 = self.join(x, self.meet(y, z));
                    let rhs2 = self.meet(self.join(x, y), self.join(x, z));
                    if lhs != rhs || lhs2 != rhs2 {
                        return Err(Error::NotDistributive(
                            self.label(x).into(),
                            self.label(y).into(),
                            self.label(z).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Join irreducibles by the at-most-one-lower-cover rule (includes the bottom).
    pub fn join_irreducibles(&self) -> &BitSet {
        &self.join_irr
    }

    pub fn meet_irreducibles(&self) -> &BitSet {
        &self.meet_irr
    }

    /// Elements that are both join and meet irreducible.
    pub fn jm_irreducibles(&self) -> BitSet {
        self.join_irr.intersection(&self.meet_irr)
    }

    /// Join irreducibles other than the bottom, in id order.
    pub fn nonzero_join_irreducibles(&self) -> Vec<usize> {
        self.join_irr.iter().filter(|&j| j != self.bottom).collect()
    }

    /// `I_a`: the join irreducibles (bottom included) below `a`.
    pub fn ideal_of(&self, a: usize) -> BitSet {
        self.poset.down_set(a).intersection(&self.join_irr)
    }

    /// `[mu, lam] = { t : mu <= t <= lam }`.
    pub fn interval(&self, mu: usize, lam: usize) -> Result<BitSet> {
        if !self.leq(mu, lam) {
            return Err(Error::NotComparable(self.label(mu).into(), self.label(lam).into()));
        }
        Ok(self.poset.up_set(mu).intersection(self.poset.down_set(lam)))
    }

    pub fn is_sublattice(&self, d: &BitSet) -> bool {
        let members = d.to_vec();
        members.iter().enumerate().all(|(k, &x)| {
            members[k + 1..]
                .iter()
                .all(|&y| d.contains(self.join(x, y)) && d.contains(self.meet(x, y)))
        })
    }

    /// Closed under join and meet, and `x ∨ y, x ∧ y ∈ D` forces `x, y ∈ D`.
    /// The empty set qualifies.
    pub fn is_embedded_sublattice(&self, d: &BitSet) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                let both = d.contains(x) && d.contains(y);
                let hull = d.contains(self.join(x, y)) && d.contains(self.meet(x, y));
                if both != hull {
                    return false;
                }
            }
        }
        true
    }

    /// The smallest embedded sublattice containing `seed`.
    pub fn embedded_closure(&self, seed: &BitSet) -> BitSet {
        let n = self.len();
        let mut d = seed.clone();
        loop {
            let mut grew = false;
            for x in 0..n {
                for y in x + 1..n {
                    let (j, m) = (self.join(x, y), self.meet(x, y));
                    if d.contains(x) && d.contains(y) {
                        grew |= d.insert(j);
                        grew |= d.insert(m);
                    } else if d.contains(j) && d.contains(m) {
                        grew |= d.insert(x);
                        grew |= d.insert(y);
                    }
                }
            }
            if !grew {
                return d;
            }
        }
    }

    /// Number of elements in a longest maximal chain.
    pub fn max_chain_cardinality(&self) -> usize {
        self.poset.heights()[self.top]
    }

    /// Whether every maximal chain has the same cardinality.
    pub fn is_graded(&self) -> bool {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.poset.down_set(i).count());
        let mut shortest = vec![1usize; self.len()];
        for &v in &order {
            if let Some(m) = self.poset.lower_covers(v).iter().map(|&w| shortest[w] + 1).min() {
                shortest[v] = m;
            }
        }
        shortest[self.top] == self.max_chain_cardinality()
    }

    /// Certifies `a ↦ I_a` as an isomorphism onto the ideals of the nonzero
    /// join irreducibles.
    pub fn birkhoff_roundtrip(&self) -> Result<BirkhoffWitness> {
        let jp = self.nonzero_join_irreducibles();
        let p = self.poset.induced(&jp);
        let (ideals, members) = DistLattice::ideals_lattice_with_members(&p, DEFAULT_IDEAL_CAP)?;
        if ideals.len() != self.len() {
            return Err(Error::RoundtripFailed(format!(
                "{} elements vs {} ideals",
                self.len(),
                ideals.len()
            )));
        }
        let by_members: HashMap<&BitSet, usize> =
            members.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut map = Vec::with_capacity(self.len());
        for a in 0..self.len() {
            let members =
                BitSet::from_iter(jp.len(), (0..jp.len()).filter(|&k| self.leq(jp[k], a)));
            let target = *by_members.get(&members).ok_or_else(|| {
                Error::RoundtripFailed(format!("I_{} is not an ideal", self.label(a)))
            })?;
            map.push(target);
        }
        let witness = BirkhoffWitness { ideals, map };
        witness.certify(self)?;
        Ok(witness)
    }
}

/// The isomorphism `a ↦ I_a` produced by [`DistLattice::birkhoff_roundtrip`].
#[derive(Clone, Debug)]
pub struct BirkhoffWitness {
    pub ideals: DistLattice,
    pub map: Vec<usize>,
}

impl BirkhoffWitness {
    fn certify(&self, l: &DistLattice) -> Result<()> {
        let n = l.len();
        let mut hit = vec![false; n];
        for &t in &self.map {
            if std::mem::replace(&mut hit[t], true) {
                return Err(Error::RoundtripFailed("map is not injective".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (fa, fb) = (self.map[a], self.map[b]);
                if l.leq(a, b) != self.ideals.leq(fa, fb)
                    || self.map[l.join(a, b)] != self.ideals.join(fa, fb)
                    || self.map[l.meet(a, b)] != self.ideals.meet(fa, fb)
                {
                    return Err(Error::RoundtripFailed(format!(
                        "structure not preserved at ({}, {})",
                        l.label(a),
                        l.label(b)
                    )));
                }
            }
        }
        Ok(())
    }
}
