//! Minuscule lattices, built by iterating the ideal-lattice construction,
//! and the grid coordinates of their join irreducibles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data;
use crate::error::{Error, Result};
use crate::grid::{canonical_points, validate_grid, GridLattice, GridPoint, JoinIrreducibleGrid};
use crate::lattice::{DistLattice, DEFAULT_IDEAL_CAP};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

/// A minuscule weight `ω_weight` of a root system of the given family and
/// rank; written `"A4:2"`, `"E6:1"` and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinusculeSpec {
    pub family: Family,
    pub rank: usize,
    pub weight: usize,
}

impl MinusculeSpec {
    pub fn new(family: Family, rank: usize, weight: usize) -> Result<Self> {
        let s = MinusculeSpec { family, rank, weight };
        let (r, w) = (rank, weight);
        let ok = match family {
            Family::A => r >= 1 && (1..=r).contains(&w),
            Family::B => r >= 2 && w == r,
            Family::C => r >= 1 && w == 1,
            Family::D => r >= 4 && (w == 1 || w == r - 1 || w == r),
            Family::E => (r == 6 && (w == 1 || w == 6)) || (r == 7 && w == 7),
        };
        if ok {
            Ok(s)
        } else {
            Err(Error::InvalidSpec(s.to_string(), "not a minuscule weight".into()))
        }
    }

    /// Every valid spec whose rank is at most `max_rank` (E6 and E7 included
    /// once the bound reaches them).
    pub fn all_up_to(max_rank: usize) -> Vec<MinusculeSpec> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E] {
            for rank in 1..=max_rank {
                for weight in 1..=rank {
                    if let Ok(s) = MinusculeSpec::new(family, rank, weight) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Builds the lattice.
    pub fn build(&self) -> Result<DistLattice> {
        let (r, w) = (self.rank, self.weight);
        let sum = |a, b| Poset::disjoint_union(&Poset::chain(a), &Poset::chain(b));
        let l = match self.family {
            Family::A => iterate_ideals(sum(w - 1, r - w), 2)?,
            Family::B => iterate_ideals(sum(1, r - 2), 3)?,
            Family::C => DistLattice::chain(2 * r)?,
            Family::D if w == 1 => iterate_ideals(sum(1, 1), r - 1)?,
            Family::D => iterate_ideals(sum(1, r - 3), 3)?,
            Family::E => iterate_ideals(sum(1, 2), r - 2)?,
        };
        Ok(l.with_name(self.to_string()))
    }

    /// Coordinates of the nonzero join irreducibles, family by family.
    pub fn grid_coords(&self) -> Vec<GridPoint> {
        let (r, w) = (self.rank as u32, self.weight as u32);
        let p = GridPoint::new;
        match self.family {
            // the block j × (n − j) with n = rank + 1
            Family::A => (1..=w).flat_map(|x| (1..=r + 1 - w).map(move |y| p(x, y))).collect(),
            Family::B => staircase(r + 1),
            Family::C => (1..2 * r).map(|y| p(1, y)).collect(),
            Family::D if w == 1 => {
                let mut v: Vec<GridPoint> = (1..r).map(|y| p(1, y)).collect();
                v.push(p(2, r - 2));
                v.extend((2..r).map(|x| p(x, r - 1)));
                v
            }
            Family::D => staircase(r),
            Family::E if r == 6 => data::h6(),
            Family::E => data::h7(),
        }
    }

    /// The coordinates as a validated grid lattice.
    pub fn grid(&self) -> Result<GridLattice> {
        validate_grid(self.grid_coords())
    }

    /// Whether the coordinates form a grid lattice.
    pub fn verify_grid_property(&self) -> bool {
        self.grid().is_ok()
    }

    /// Attaches the family coordinates to the join irreducibles of
    /// `l = self.build()`, checking that they describe the same poset.
    pub fn join_irreducible_grid(&self, l: &DistLattice) -> Result<JoinIrreducibleGrid> {
        let grid = self.grid().map_err(|e| Error::CoordinateMismatch(format!("{self}: {e}")))?;
        let computed = JoinIrreducibleGrid::new(l)?;
        let ours = canonical_points(grid.points().iter().copied())?;
        if computed.points().is_empty() || canonical_points(computed.points().iter().copied())? != ours {
            return Err(Error::CoordinateMismatch(format!(
                "{self}: {} listed points do not match the {} join irreducibles",
                grid.len(),
                computed.points().len()
            )));
        }
        let elems = l.nonzero_join_irreducibles();
        let jposet = l.poset().induced(&elems);
        let iso = jposet.find_isomorphism(grid.lattice().poset()).ok_or_else(|| {
            Error::CoordinateMismatch(format!("{self}: no order isomorphism onto the listed points"))
        })?;
        let pts = grid.points();
        JoinIrreducibleGrid::with_coords(l, |e| {
            let k = elems.iter().position(|&x| x == e).expect("nonzero join irreducible");
            pts[iso[k]]
        })
    }
}

/// `{(i, j) : 1 <= i < j <= n}`.
fn staircase(n: u32) -> Vec<GridPoint> {
    (1..=n).flat_map(|j| (1..j).map(move |i| GridPoint::new(i, j))).collect()
}

/// Applies the ideal-lattice construction `times` times, relabelling each
/// intermediate lattice by element index to keep labels short.
fn iterate_ideals(p: Poset, times: usize) -> Result<DistLattice> {
    let mut l = DistLattice::ideals_lattice(&p, DEFAULT_IDEAL_CAP)?;
    for _ in 1..times {
        let labels = (0..l.len()).map(|i| i.to_string()).collect();
        let q = l.poset().clone().with_labels(labels);
        l = DistLattice::ideals_lattice(&q, DEFAULT_IDEAL_CAP)?;
    }
    Ok(l)
}

impl fmt::Display for MinusculeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
        };
        write!(f, "{fam}{}:{}", self.rank, self.weight)
    }
}

impl FromStr for MinusculeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidSpec(s.to_string(), why.to_string());
        let (head, weight) = s.split_once(':').ok_or_else(|| bad("expected FAMILY RANK:WEIGHT"))?;
        let mut chars = head.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad("unknown family")),
        };
        let rank = chars.as_str().parse().map_err(|_| bad("rank is not a number"))?;
        let weight = weight.parse().map_err(|_| bad("weight is not a number"))?;
        MinusculeSpec::new(family, rank, weight)
    }
}

impl Serialize for MinusculeSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
