//! Upper-triangular staircase matrices: nonnegative integer entries, no
//! row or column entirely zero, cells addressed with 1-based coordinates.
//!
//! The matrices of entry sum `n` are in bijection with ascent sequences of
//! length `n`. The forward map `zeta` folds a single-step growth rule over
//! the letters; the inverse `gamma` peels the steps back off, reading each
//! letter from the topmost nonzero row of the last column. A brute-force
//! enumerator of all matrices of a given sum serves as the independent
//! oracle for the bijection.

use crate::ascent::AscentSequence;
use crate::error::{Error, Result};

/// An upper-triangular nonnegative matrix with no zero row or column.
/// The empty matrix (dimension 0) is allowed and is the image of the empty
/// ascent sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StaircaseMatrix {
    dim: usize,
    cells: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixStats {
    /// Total of all entries.
    pub sum: usize,
    /// Number of nonzero cells.
    pub nonzero: usize,
    /// `sum - nonzero`.
    pub zeros: usize,
    /// Topmost row (1-based) with a nonzero entry in the last column.
    pub index: usize,
    pub dim: usize,
}

impl StaircaseMatrix {
    pub fn empty() -> Self {
        StaircaseMatrix {
            dim: 0,
            cells: Vec::new(),
        }
    }

    /// Validates and wraps a square row-major grid.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix("grid is not square"));
        }
        let cells: Vec<usize> = rows.into_iter().flatten().collect();
        let m = StaircaseMatrix { dim, cells };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let d = self.dim;
        for i in 1..=d {
            for j in 1..i {
                if self.get(i, j) != 0 {
                    return Err(Error::InvalidMatrix("nonzero below the diagonal"));
                }
            }
        }
        for i in 1..=d {
            if (1..=d).all(|j| self.get(i, j) == 0) {
                return Err(Error::InvalidMatrix("zero row"));
            }
            if (1..=d).all(|j| self.get(j, i) == 0) {
                return Err(Error::InvalidMatrix("zero column"));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }

    /// Entry at 1-based coordinates.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && j >= 1 && i <= self.dim && j <= self.dim);
        self.cells[(i - 1) * self.dim + (j - 1)]
    }

    fn set(&mut self, i: usize, j: usize, v: usize) {
        self.cells[(i - 1) * self.dim + (j - 1)] = v;
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.dim)
            .map(|i| self.cells[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn sum(&self) -> usize {
        self.cells.iter().sum()
    }

    pub fn max_entry(&self) -> usize {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    /// Smallest `i` with a nonzero entry at `(i, dim)`; errors on the empty
    /// matrix.
    pub fn index(&self) -> Result<usize> {
        if self.dim == 0 {
            return Err(Error::EmptyInput("index"));
        }
        Ok((1..=self.dim)
            .find(|&i| self.get(i, self.dim) != 0)
            .expect("last column of a staircase matrix is nonzero"))
    }

    pub fn stats(&self) -> Result<MatrixStats> {
        let index = self.index()?;
        let nonzero = self.cells.iter().filter(|&&c| c != 0).count();
        let sum = self.sum();
        Ok(MatrixStats {
            sum,
            nonzero,
            zeros: sum - nonzero,
            index,
            dim: self.dim,
        })
    }

    /// One growth step with parameter `0 <= m <= dim`. On the empty matrix
    /// only `m = 0` is legal and yields `(1)`. Otherwise:
    ///
    /// * `m < index`: increase the entry at `(m + 1, dim)` by one;
    /// * `m >= index`: insert a zero row and column after row/column `m`,
    ///   put a 1 at `(m + 1, dim + 1)`, and swap the entries of columns
    ///   `m + 1` and `dim + 1` in rows `1..=m`.
    ///
    /// Every step increases the entry sum by exactly one.
    pub fn add(&self, m: usize) -> Result<Self> {
        if m > self.dim {
            return Err(Error::IndexOutOfRange {
                index: m,
                max: self.dim,
            });
        }
        if self.dim == 0 {
            return StaircaseMatrix::from_rows(vec![vec![1]]);
        }
        let d = self.dim;
        let index = self.index().expect("nonempty");
        if m < index {
            let mut next = self.clone();
            next.set(m + 1, d, next.get(m + 1, d) + 1);
            Ok(next)
        } else {
            let mut next = StaircaseMatrix {
                dim: d + 1,
                cells: vec![0; (d + 1) * (d + 1)],
            };
            for i in 1..=d {
                for j in 1..=d {
                    let ni = if i <= m { i } else { i + 1 };
                    let nj = if j <= m { j } else { j + 1 };
                    next.set(ni, nj, self.get(i, j));
                }
            }
            next.set(m + 1, d + 1, 1);
            for i in 1..=m {
                let a = next.get(i, m + 1);
                let b = next.get(i, d + 1);
                next.set(i, m + 1, b);
                next.set(i, d + 1, a);
            }
            Ok(next)
        }
    }
}

impl std::fmt::Display for StaircaseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.dim == 0 {
            return write!(f, "[]");
        }
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            if i < self.dim {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Folds the growth step over the letters of an ascent sequence. The
/// resulting matrix has entry sum equal to the sequence length.
pub fn zeta(x: &AscentSequence) -> StaircaseMatrix {
    let mut a = StaircaseMatrix::empty();
    for &letter in x.entries() {
        a = a
            .add(letter)
            .expect("letters of a valid ascent sequence stay within 0..=dim");
    }
    a
}

/// Inverse of [`zeta`]: reads letters from `index - 1` while undoing one
/// growth step at a time.
///
/// Disambiguation of which rule to undo, with `r = index(A)` and
/// `d = dim(A)`: the splice rule left row `r` holding nothing but the fresh
/// 1 at `(r, d)`, while after an increment row `r` either has another
/// nonzero entry or holds at least 2 there. So undo the splice exactly when
/// `A[r][d] == 1` and row `r` has no other nonzero entry, else decrement.
pub fn gamma(a: &StaircaseMatrix) -> Result<AscentSequence> {
    let mut cur = a.clone();
    let mut letters = Vec::with_capacity(a.sum());
    while !cur.is_empty() {
        let r = cur.index()?;
        letters.push(r - 1);
        cur = undo_add(&cur, r)?;
    }
    letters.reverse();
    AscentSequence::new(letters)
}

fn undo_add(a: &StaircaseMatrix, r: usize) -> Result<StaircaseMatrix> {
    let d = a.dim();
    let splice = a.get(r, d) == 1 && (1..d).all(|j| a.get(r, j) == 0);
    if splice {
        let mut grid = a.rows();
        grid[r - 1][d - 1] = 0;
        for row in grid.iter_mut().take(r - 1) {
            row.swap(r - 1, d - 1);
        }
        if grid[r - 1].iter().any(|&c| c != 0) {
            return Err(Error::InvalidMatrix("spliced row is not removable"));
        }
        grid.remove(r - 1);
        for row in grid.iter_mut() {
            row.remove(r - 1);
        }
        if grid.is_empty() {
            return Ok(StaircaseMatrix::empty());
        }
        StaircaseMatrix::from_rows(grid)
    } else {
        let mut grid = a.rows();
        grid[r - 1][d - 1] -= 1;
        StaircaseMatrix::from_rows(grid)
    }
}

/// Brute-force oracle: every upper-triangular nonnegative matrix with entry
/// sum `n`, no zero row or column, and entries at most `max_entry` when
/// given. Results are ordered by dimension, then lexicographically by the
/// row-major grid.
pub fn enumerate_matrices(n: usize, max_entry: Option<usize>) -> Vec<StaircaseMatrix> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(StaircaseMatrix::empty());
        return out;
    }
    let cap = max_entry.unwrap_or(n);
    if cap == 0 {
        return out;
    }
    for d in 1..=n {
        let mut grid = vec![vec![0usize; d]; d];
        fill(&mut grid, d, 1, 1, n, cap, &mut out);
    }
    out
}

fn fill(
    grid: &mut Vec<Vec<usize>>,
    d: usize,
    i: usize,
    j: usize,
    remaining: usize,
    cap: usize,
    out: &mut Vec<StaircaseMatrix>,
) {
    if i > d {
        if remaining == 0 {
            out.push(StaircaseMatrix::from_rows(grid.clone()).expect("pruned to validity"));
        }
        return;
    }
    let (ni, nj) = if j == d { (i + 1, i + 1) } else { (i, j + 1) };
    for v in 0..=cap.min(remaining) {
        grid[i - 1][j - 1] = v;
        if j == d && grid[i - 1][i - 1..].iter().all(|&c| c == 0) {
            continue; // completed row i would be zero
        }
        if i == j && (0..i).all(|r| grid[r][j - 1] == 0) {
            continue; // column j has no cells left below the diagonal
        }
        // every later row still needs at least one unit
        if remaining - v < d - i {
            continue;
        }
        // the cells still open must be able to absorb the rest
        let cells_left = (d - j) + (d - i) * (d - i + 1) / 2;
        if remaining - v > cap * cells_left {
            continue;
        }
        fill(grid, d, ni, nj, remaining - v, cap, out);
    }
    grid[i - 1][j - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ascent::{enumerate, AscentSequence};
    use std::collections::BTreeSet;

    fn seq(entries: &[usize]) -> AscentSequence {
        AscentSequence::new(entries.to_vec()).unwrap()
    }

    fn mat(rows: &[&[usize]]) -> StaircaseMatrix {
        StaircaseMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn stats_of_reference_matrix() {
        let a = mat(&[&[1, 3, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 5], &[0, 0, 0, 2]]);
        let s = a.stats().unwrap();
        assert_eq!(s.sum, 13);
        assert_eq!(s.nonzero, 5);
        assert_eq!(s.zeros, 8);
        assert_eq!(s.index, 3);
        assert_eq!(s.dim, 4);
    }

    #[test]
    fn stats_of_tiny_matrices() {
        let s = mat(&[&[1]]).stats().unwrap();
        assert_eq!((s.sum, s.nonzero, s.zeros, s.index), (1, 1, 0, 1));

        let s = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).stats().unwrap();
        assert_eq!((s.sum, s.zeros, s.index), (3, 0, 3));

        assert!(StaircaseMatrix::empty().stats().is_err());
    }

    #[test]
    fn rejects_invalid_grids() {
        assert!(StaircaseMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(StaircaseMatrix::from_rows(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(StaircaseMatrix::from_rows(vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(StaircaseMatrix::from_rows(vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn add_splices_row_and_column() {
        let a = mat(&[&[1, 7, 1], &[0, 9, 3], &[0, 0, 2]]);
        let b = a.add(2).unwrap();
        assert_eq!(
            b,
            mat(&[&[1, 7, 1, 0], &[0, 9, 3, 0], &[0, 0, 0, 1], &[0, 0, 0, 2],])
        );
    }

    #[test]
    fn add_base_cases() {
        assert_eq!(StaircaseMatrix::empty().add(0).unwrap(), mat(&[&[1]]));
        assert!(StaircaseMatrix::empty().add(1).is_err());
        assert_eq!(mat(&[&[1]]).add(0).unwrap(), mat(&[&[2]]));
    }

    #[test]
    fn add_increases_sum_by_one_and_never_decreases_cells() {
        for n in 0..=6 {
            for x in enumerate(n, None) {
                let a = zeta(&x);
                for m in 0..=a.dim() {
                    let b = a.add(m).unwrap();
                    assert_eq!(b.sum(), a.sum() + 1);
                    assert!(b.max_entry() >= a.max_entry());
                }
            }
        }
    }

    #[test]
    fn zeta_images_of_length_three() {
        let images: BTreeSet<StaircaseMatrix> = enumerate(3, None).map(|x| zeta(&x)).collect();
        let expected: BTreeSet<StaircaseMatrix> = [
            mat(&[&[3]]),
            mat(&[&[2, 0], &[0, 1]]),
            mat(&[&[1, 1], &[0, 1]]),
            mat(&[&[1, 0], &[0, 2]]),
            mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(images, expected);
    }

    #[test]
    fn zeta_point_values() {
        assert_eq!(zeta(&seq(&[0])), mat(&[&[1]]));
        assert_eq!(zeta(&AscentSequence::empty()), StaircaseMatrix::empty());
    }

    #[test]
    fn zeta_transfers_statistics() {
        for n in 1..=7 {
            for x in enumerate(n, None) {
                let a = zeta(&x);
                let ms = a.stats().unwrap();
                let xs = x.stats();
                assert_eq!(ms.sum, n);
                assert_eq!(ms.dim - 1, xs.asc);
                assert_eq!(ms.index - 1, xs.last.unwrap());
                assert_eq!(ms.zeros, xs.zeros);
            }
        }
    }

    #[test]
    fn zeta_image_equals_oracle() {
        for n in 0..=6 {
            let images: BTreeSet<StaircaseMatrix> = enumerate(n, None).map(|x| zeta(&x)).collect();
            let oracle: BTreeSet<StaircaseMatrix> =
                enumerate_matrices(n, None).into_iter().collect();
            assert_eq!(
                images.len(),
                enumerate(n, None).count(),
                "zeta is injective"
            );
            assert_eq!(images, oracle);
        }
    }

    #[test]
    fn gamma_point_values() {
        assert_eq!(gamma(&mat(&[&[1]])).unwrap(), seq(&[0]));
        assert_eq!(
            gamma(&StaircaseMatrix::empty()).unwrap(),
            AscentSequence::empty()
        );
        // index is 3, so the final letter is 2
        let a = mat(&[&[1, 7, 1, 0], &[0, 9, 3, 0], &[0, 0, 0, 1], &[0, 0, 0, 2]]);
        assert_eq!(*gamma(&a).unwrap().entries().last().unwrap(), 2);
    }

    #[test]
    fn gamma_inverts_zeta_exhaustively() {
        for n in 0..=6 {
            for x in enumerate(n, None) {
                assert_eq!(gamma(&zeta(&x)).unwrap(), x);
            }
            for a in enumerate_matrices(n, None) {
                assert_eq!(zeta(&gamma(&a).unwrap()), a);
            }
        }
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(enumerate_matrices(3, None).len(), 5);
        assert_eq!(enumerate_matrices(0, None).len(), 1);
        assert_eq!(enumerate_matrices(4, Some(1)).len(), 5);
    }

    #[test]
    fn bounded_entries_match_bounded_runs() {
        for n in 0..=6 {
            for k in 1..=3 {
                for x in enumerate(n, None) {
                    let bounded = zeta(&x).max_entry() <= k;
                    assert_eq!(bounded, x.stats().max_run <= k);
                }
                let images: BTreeSet<StaircaseMatrix> =
                    enumerate(n, Some(k)).map(|x| zeta(&x)).collect();
                let oracle: BTreeSet<StaircaseMatrix> =
                    enumerate_matrices(n, Some(k)).into_iter().collect();
                assert_eq!(images, oracle);
            }
        }
    }
}
