//! Finite posets: construction from cover pairs, standard constructions
//! (chains, disjoint unions, products), order ideals and isomorphism search.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// A finite poset on element ids `0..n`.
///
/// `up[i]` holds every `j` with `i <= j` and `down[j]` every `i` with `i <= j`;
/// `covers` is the transitive reduction of that relation, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset from labelled elements and `(lower, upper)` pairs.
    ///
    /// Pairs may include implied relations; they are reduced away. Element ids
    /// follow the order of `labels`.
    pub fn from_covers<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut seen = HashSet::new();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::InvalidIndex(lo, hi, n));
            }
            if lo == hi {
                return Err(Error::CycleDetected(labels[lo].clone()));
            }
            if !seen.insert((lo, hi)) {
                return Err(Error::DuplicateCover(lo, hi));
            }
            succ[lo].push(hi);
            indeg[hi] += 1;
        }

        // Kahn's algorithm; anything left over sits on a cycle.
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::CycleDetected(labels[stuck].clone()));
        }

        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_iter(n, [i])).collect();
        for &v in topo.iter().rev() {
            for &w in &succ[v] {
                let above = up[w].clone();
                up[v].union_with(&above);
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    /// Builds from a reflexive, transitive, antisymmetric relation given as
    /// up-sets. Callers are responsible for those properties.
    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<BitSet>) -> Poset {
        let n = labels.len();
        let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (i, u) in up.iter().enumerate() {
            for j in u.iter() {
                down[j].insert(i);
            }
        }
        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for i in 0..n {
            for j in up[i].iter() {
                if i == j {
                    continue;
                }
                // i < j is a cover iff the open interval (i, j) is empty.
                let mut between = up[i].intersection(&down[j]);
                between.remove(i);
                between.remove(j);
                if between.is_empty() {
                    covers.push((i, j));
                    upper_covers[i].push(j);
                    lower_covers[j].push(i);
                }
            }
        }
        covers.sort_unstable();
        Poset { labels, covers, up, down, upper_covers, lower_covers }
    }

    /// Builds from a `leq` predicate on `0..n`.
    pub(crate) fn from_leq_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Poset {
        let n = labels.len();
        let up = (0..n).map(|i| BitSet::from_iter(n, (0..n).filter(|&j| leq(i, j)))).collect();
        Self::from_up_sets(labels, up)
    }

    /// The `k`-element chain `0 < 1 < ... < k-1`. `chain(0)` is the empty poset.
    pub fn chain(k: usize) -> Poset {
        Self::from_leq_fn((0..k).map(|i| i.to_string()).collect(), |i, j| i <= j)
    }

    pub fn antichain(k: usize) -> Poset {
        Self::from_leq_fn((0..k).map(|i| i.to_string()).collect(), |i, j| i == j)
    }

    /// Disjoint union; labels get an `a`/`b` prefix for the left/right summand.
    pub fn disjoint_union(p: &Poset, q: &Poset) -> Poset {
        let np = p.len();
        let labels = p
            .labels
            .iter()
            .map(|l| format!("a{l}"))
            .chain(q.labels.iter().map(|l| format!("b{l}")))
            .collect();
        Self::from_leq_fn(labels, |i, j| match (i < np, j < np) {
            (true, true) => p.leq(i, j),
            (false, false) => q.leq(i - np, j - np),
            _ => false,
        })
    }

    /// Cartesian product with the componentwise order, ids in row-major order.
    pub fn product(p: &Poset, q: &Poset) -> Poset {
        let nq = q.len();
        let labels = (0..p.len() * nq)
            .map(|k| format!("({},{})", p.labels[k / nq], q.labels[k % nq]))
            .collect();
        Self::from_leq_fn(labels, |i, j| p.leq(i / nq, j / nq) && q.leq(i % nq, j % nq))
    }

    /// The subposet induced on `elems`; new ids follow the order of `elems`.
    pub fn induced(&self, elems: &[usize]) -> Poset {
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Self::from_leq_fn(labels, |i, j| self.leq(elems[i], elems[j]))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The same order with new labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.len(), "label count must match");
        self.labels = labels;
        self
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `{ j : i <= j }`
    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// `{ j : j <= i }`
    pub fn down_set(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    /// Length of the longest chain ending at each element, counted in elements.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.down[i].count());
        let mut h = vec![1; self.len()];
        for &v in &order {
            for &w in &self.lower_covers[v] {
                h[v] = h[v].max(h[w] + 1);
            }
        }
        h
    }

    /// Whether `set` is downward closed.
    pub fn is_order_ideal(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.down[x].is_subset(set))
    }

    /// All order ideals, including the empty one, in discovery order.
    pub fn order_ideals(&self, cap: usize) -> Result<Vec<BitSet>> {
        let n = self.len();
        let empty = BitSet::new(n);
        let mut seen: HashSet<BitSet> = HashSet::from([empty.clone()]);
        let mut out = vec![empty.clone()];
        let mut stack = vec![empty];
        while let Some(ideal) = stack.pop() {
            for x in 0..n {
                if ideal.contains(x) || !self.lower_covers[x].iter().all(|&y| ideal.contains(y)) {
                    continue;
                }
                let mut next = ideal.clone();
                next.insert(x);
                if seen.insert(next.clone()) {
                    if out.len() >= cap {
                        return Err(Error::SizeCap(cap));
                    }
                    out.push(next.clone());
                    stack.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Counts order ideals by recursion on a minimal element, without
    /// materializing them.
    pub fn count_order_ideals(&self) -> u128 {
        fn go(p: &Poset, alive: BitSet, memo: &mut HashMap<BitSet, u128>) -> u128 {
            let Some(x) = alive.iter().find(|&x| p.down[x].intersection(&alive).count() == 1)
            else {
                return 1;
            };
            if let Some(&c) = memo.get(&alive) {
                return c;
            }
            // ideals avoiding x, plus ideals containing x (hence all of x's
            // predecessors are irrelevant: x is minimal in `alive`)
            let mut without = alive.clone();
            for y in p.up[x].iter() {
                without.remove(y);
            }
            let mut with = alive.clone();
            with.remove(x);
            let c = go(p, without, memo) + go(p, with, memo);
            memo.insert(alive, c);
            c
        }
        go(self, BitSet::full(self.len()), &mut HashMap::new())
    }

    /// Maximal elements of `set` under the induced order.
    pub fn maxima_of(&self, set: &BitSet) -> Vec<usize> {
        set.iter()
            .filter(|&x| self.up[x].intersection(set).count() == 1)
            .collect()
    }

    /// Finds an order isomorphism `self -> other`, if one exists.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig = |p: &Poset, i: usize| {
            (
                p.down[i].count(),
                p.up[i].count(),
                p.lower_covers[i].len(),
                p.upper_covers[i].len(),
            )
        };
        let mut mine: Vec<_> = (0..n).map(|i| sig(self, i)).collect();
        let mut theirs: Vec<_> = (0..n).map(|i| sig(other, i)).collect();
        let by_sig = {
            let (a, b) = (mine.clone(), theirs.clone());
            mine.sort_unstable();
            theirs.sort_unstable();
            if mine != theirs {
                return None;
            }
            (a, b)
        };
        // Linear extension of self: lower covers are always placed first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (self.down[i].count(), i));

        fn extend(
            k: usize,
            order: &[usize],
            p: &Poset,
            q: &Poset,
            sigs: &(Vec<(usize, usize, usize, usize)>, Vec<(usize, usize, usize, usize)>),
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let x = order[k];
            let want: BTreeSet<usize> = p.lower_covers[x].iter().map(|&c| map[c]).collect();
            for y in 0..q.len() {
                if used[y] || sigs.0[x] != sigs.1[y] {
                    continue;
                }
                let have: BTreeSet<usize> = q.lower_covers[y].iter().copied().collect();
                if have != want {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if extend(k + 1, order, p, q, sigs, map, used) {
                    return true;
                }
                used[y] = false;
            }
            false
        }

        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        extend(0, &order, self, other, &by_sig, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// A downward-closed subset of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderIdeal(BitSet);

impl OrderIdeal {
    pub fn new(poset: &Poset, members: BitSet) -> Option<OrderIdeal> {
        poset.is_order_ideal(&members).then_some(OrderIdeal(members))
    }

    /// The principal ideal `{ y : y <= x }`.
    pub fn principal(poset: &Poset, x: usize) -> OrderIdeal {
        OrderIdeal(poset.down_set(x).clone())
    }

    pub fn members(&self) -> &BitSet {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }
}
