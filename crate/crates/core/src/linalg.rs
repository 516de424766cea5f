//! Exact integer linear algebra: rank and kernels without floating point.
//!
//! Two independent rank routines live here. [`bareiss_rank`] is dense
//! fraction-free elimination and is what the cone code uses;
//! [`SparseRank`] eliminates sparse rows incrementally with content
//! normalization and backs the Jacobian oracle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

/// Rank of an integer matrix by Bareiss elimination.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> Result<usize> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                // exact by Sylvester's identity
                let v = sub(mul(m[rank][col], m[r][c])?, mul(m[r][col], m[rank][c])?)?;
                m[r][c] = v / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    Ok(rank)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let (mut prev, mut sign) = (1i128, 1i128);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| m[r][k] != 0) else {
            return Ok(0);
        };
        if piv != k {
            m.swap(k, piv);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = sub(mul(m[k][k], m[r][c])?, mul(m[r][k], m[k][c])?)?;
                m[r][c] = v / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * prev)
}

/// Incremental rank of sparse integer rows.
///
/// Each stored row has a distinct leading column and is kept primitive (its
/// entries have gcd 1), which keeps coefficients small on the ±1 matrices
/// the oracle produces.
#[derive(Default, Debug)]
pub struct SparseRank {
    pivots: BTreeMap<usize, BTreeMap<usize, i128>>,
}

impl SparseRank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row given as `(column, value)` entries; returns whether the
    /// rank went up.
    pub fn add_row(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) -> Result<bool> {
        let mut row: BTreeMap<usize, i128> = BTreeMap::new();
        for (c, v) in entries {
            *row.entry(c).or_default() += v as i128;
        }
        row.retain(|_, v| *v != 0);
        loop {
            let Some((&lead, &lv)) = row.iter().next() else {
                return Ok(false);
            };
            let Some(p) = self.pivots.get(&lead) else {
                normalize(&mut row);
                self.pivots.insert(lead, row);
                return Ok(true);
            };
            let pv = p[&lead];
            // row <- pv * row - lv * p, which clears `lead`
            let mut next: BTreeMap<usize, i128> = BTreeMap::new();
            for (&c, &v) in &row {
                next.insert(c, mul(pv, v)?);
            }
            for (&c, &v) in p {
                let e = next.entry(c).or_default();
                *e = sub(*e, mul(lv, v)?)?;
            }
            next.retain(|_, v| *v != 0);
            normalize(&mut next);
            row = next;
        }
    }
}

fn normalize(row: &mut BTreeMap<usize, i128>) {
    let g = row.values().fold(0, |g, &v| gcd(g, v));
    if g > 1 {
        row.values_mut().for_each(|v| *v /= g);
    }
}

/// Rank of sparse rows via [`SparseRank`].
pub fn sparse_rank<I, R>(rows: I) -> Result<usize>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = (usize, i64)>,
{
    let mut s = SparseRank::new();
    for r in rows {
        s.add_row(r)?;
    }
    Ok(s.rank())
}

/// A basis of primitive integer vectors for `{ c : Σ c_i · vectors[i] = 0 }`.
pub fn integer_relations(vectors: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let m = vectors.len();
    let d = vectors.first().map_or(0, Vec::len);
    // d × m matrix whose columns are the vectors
    let mut a: Vec<Vec<i128>> =
        (0..d).map(|r| (0..m).map(|c| vectors[c][r] as i128).collect()).collect();

    // Integer row echelon form with primitive rows.
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..d).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        for r in 0..d {
            if r == row || a[r][col] == 0 {
                continue;
            }
            let (pv, rv) = (a[row][col], a[r][col]);
            for c in 0..m {
                a[r][c] = sub(mul(pv, a[r][c])?, mul(rv, a[row][c])?)?;
            }
            let g = a[r].iter().fold(0, |g, &v| gcd(g, v));
            if g > 1 {
                a[r].iter_mut().for_each(|v| *v /= g);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    // The form is now fully reduced: pivot column k is zero outside row k.
    let mut basis = Vec::new();
    for free in (0..m).filter(|c| !pivot_cols.contains(c)) {
        // c_free = L, c_pivot(k) = -L * a[k][free] / a[k][pivot(k)]
        let mut l = 1i128;
        for (k, &pc) in pivot_cols.iter().enumerate() {
            let den = a[k][pc].abs() / gcd(a[k][pc], a[k][free]).max(1);
            l = mul(l / gcd(l, den), den)?;
        }
        let mut c = vec![0i128; m];
        c[free] = l;
        for (k, &pc) in pivot_cols.iter().enumerate() {
            c[pc] = -mul(l, a[k][free])? / a[k][pc];
        }
        let g = c.iter().fold(0, |g, &v| gcd(g, v));
        let first_sign = c.iter().find(|&&v| v != 0).map_or(1, |v| v.signum());
        basis.push(
            c.iter()
                .map(|&v| i64::try_from(v / g * first_sign).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<i64>>>()?,
        );
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank over the rationals by plain Gaussian elimination on fractions;
    /// test-only reference.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<(i128, i128)>> =
            rows.iter().map(|r| r.iter().map(|&v| (v as i128, 1)).collect()).collect();
        let red = |(n, d): (i128, i128)| {
            let g = gcd(n, d).max(1);
            let s = if d < 0 { -1 } else { 1 };
            (s * n / g, s * d / g)
        };
        let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
        let mut rank = 0;
        for col in 0..nc {
            let Some(p) = (rank..nr).find(|&r| m[r][col].0 != 0) else { continue };
            m.swap(rank, p);
            for r in rank + 1..nr {
                if m[r][col].0 == 0 {
                    continue;
                }
                let (fnum, fden) = red((m[r][col].0 * m[rank][col].1, m[r][col].1 * m[rank][col].0));
                for c in col..nc {
                    let (a, b) = m[r][c];
                    let (x, y) = m[rank][c];
                    m[r][c] = red((a * y * fden - x * fnum * b, b * y * fden));
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(bareiss_rank(&[]).unwrap(), 0);
        assert_eq!(bareiss_rank(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
        assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(bareiss_rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap(), 3);
        assert_eq!(
            sparse_rank([vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)], vec![(0, 1), (2, -1)]]).unwrap(),
            2
        );
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[]).unwrap(), 1);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]).unwrap(), 6);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn quadric_relation() {
        // e_μ − e_A, e_μ − e_B, e_A − e_C, e_B − e_C on coordinates (μ, A, B, C)
        let g = vec![vec![1, -1, 0, 0], vec![1, 0, -1, 0], vec![0, 1, 0, -1], vec![0, 0, 1, -1]];
        assert_eq!(bareiss_rank(&g).unwrap(), 3);
        assert_eq!(integer_relations(&g).unwrap(), vec![vec![1, -1, 1, -1]]);
        let ind = vec![vec![1, 0], vec![0, 1]];
        assert!(integer_relations(&ind).unwrap().is_empty());
        assert_eq!(integer_relations(&[vec![2, 4], vec![3, 6]]).unwrap(), vec![vec![3, -2]]);
    }

    proptest! {
        #[test]
        fn rank_routines_agree(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 0..8)) {
            let expect = rational_rank(&rows);
            prop_assert_eq!(bareiss_rank(&rows).unwrap(), expect);
            let sparse = rows.iter().map(|r| r.iter().copied().enumerate().collect::<Vec<_>>());
            prop_assert_eq!(sparse_rank(sparse).unwrap(), expect);
        }

        #[test]
        fn relations_are_kernel_vectors(vs in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..7)) {
            let rel = integer_relations(&vs).unwrap();
            prop_assert_eq!(rel.len(), vs.len() - bareiss_rank(&vs).unwrap());
            for c in &rel {
                for k in 0..4 {
                    prop_assert_eq!(vs.iter().zip(c).map(|(v, ci)| v[k] * ci).sum::<i64>(), 0);
                }
            }
        }
    }
}
