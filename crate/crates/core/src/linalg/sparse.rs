use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::Rational;
use crate::error::LinalgError;

/// Row-major sparse matrix over the rationals. Rows are sorted by column and
/// never store zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { n_rows, n_cols, rows: vec![Vec::new(); n_rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed; resulting zeros are dropped.
    pub fn from_triplets<I>(n_rows: usize, n_cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n_rows];
        for (r, c, v) in entries {
            if r >= n_rows || c >= n_cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, n_rows, n_cols });
            }
            rows[r].push((c, v));
        }
        for row in rows.iter_mut() {
            normalize_row(row);
        }
        Ok(SparseMatrix { n_rows, n_cols, rows })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        let row = &self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => row[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.n_cols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix { n_rows: self.n_cols, n_cols: self.n_rows, rows }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.n_cols != rhs.n_rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.n_rows, self.n_cols),
                right: (rhs.n_rows, rhs.n_cols),
            });
        }
        let mut rows = Vec::with_capacity(self.n_rows);
        for row in &self.rows {
            let mut acc: Vec<(usize, Rational)> = Vec::new();
            for (k, a) in row {
                for (c, b) in &rhs.rows[*k] {
                    acc.push((*c, a * b));
                }
            }
            normalize_row(&mut acc);
            rows.push(acc);
        }
        Ok(SparseMatrix { n_rows: self.n_rows, n_cols: rhs.n_cols, rows })
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.n_rows];
        for (r, c, v) in self.entries() {
            rows[row_perm[r]].push((col_perm[c], v.clone()));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
        }
        SparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        Eliminator::new(self).run()
    }

    /// Schur complement after eliminating the pivot at `(row, col)`: the
    /// matrix `A' = A - A[:, col] A[row, :] / A[row, col]` with the pivot row
    /// and column deleted.
    pub fn eliminate_pivot(&self, row: usize, col: usize) -> Result<SparseMatrix, LinalgError> {
        if row >= self.n_rows || col >= self.n_cols {
            return Err(LinalgError::OutOfBounds { row, col, n_rows: self.n_rows, n_cols: self.n_cols });
        }
        let pivot = self.get(row, col);
        if pivot.is_zero() {
            return Err(LinalgError::ZeroPivot { row, col });
        }
        let pivot_row = &self.rows[row];
        let shift = |c: usize| if c > col { c - 1 } else { c };
        let mut rows = Vec::with_capacity(self.n_rows - 1);
        for (r, cur) in self.rows.iter().enumerate() {
            if r == row {
                continue;
            }
            let a = match cur.binary_search_by_key(&col, |e| e.0) {
                Ok(k) => Some(&cur[k].1 / &pivot),
                Err(_) => None,
            };
            let mut out: Vec<(usize, Rational)> = Vec::with_capacity(cur.len());
            match a {
                None => out.extend(cur.iter().map(|(c, v)| (shift(*c), v.clone()))),
                Some(f) => {
                    let merged = axpy(cur, &f, pivot_row);
                    out.extend(merged.into_iter().filter(|e| e.0 != col).map(|(c, v)| (shift(c), v)));
                }
            }
            rows.push(out);
        }
        Ok(SparseMatrix { n_rows: self.n_rows - 1, n_cols: self.n_cols - 1, rows })
    }
}

fn normalize_row(row: &mut Vec<(usize, Rational)>) {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = &last.1 + &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    *row = out;
}

/// `x - f * y` for sorted sparse rows, dropping cancelled entries.
fn axpy<K: Ord + Copy>(x: &[(K, Rational)], f: &Rational, y: &[(K, Rational)]) -> Vec<(K, Rational)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(f * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - &(f * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse Gaussian elimination with a Markowitz-style pivot choice: the
/// column with fewest live entries, then the shortest row within it.
struct Eliminator {
    rows: Vec<Option<Vec<(u32, Rational)>>>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
}

impl Eliminator {
    fn new(m: &SparseMatrix) -> Self {
        let mut col_rows = vec![Vec::new(); m.n_cols];
        let mut col_count = vec![0u32; m.n_cols];
        let rows = m
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                if row.is_empty() {
                    return None;
                }
                for (c, _) in row {
                    col_rows[*c].push(r as u32);
                    col_count[*c] += 1;
                }
                Some(row.iter().map(|(c, v)| (*c as u32, v.clone())).collect())
            })
            .collect();
        let heap = col_count
            .iter()
            .enumerate()
            .filter(|(_, n)| **n > 0)
            .map(|(c, n)| Reverse((*n, c as u32)))
            .collect();
        Eliminator { rows, col_rows, col_count, heap }
    }

    fn run(mut self) -> usize {
        let mut rank = 0;
        while let Some(Reverse((count, col))) = self.heap.pop() {
            let c = col as usize;
            if self.col_count[c] != count || count == 0 {
                continue;
            }
            let Some(pivot_row) = self.choose_row(c) else { continue };
            self.eliminate(pivot_row, c);
            rank += 1;
        }
        rank
    }

    fn choose_row(&mut self, c: usize) -> Option<usize> {
        let rows = &self.rows;
        let col = c as u32;
        let mut live: Vec<u32> = self.col_rows[c]
            .iter()
            .copied()
            .filter(|&r| {
                rows[r as usize]
                    .as_ref()
                    .is_some_and(|row| row.binary_search_by_key(&col, |e| e.0).is_ok())
            })
            .collect();
        live.sort_unstable();
        live.dedup();
        let best = live.iter().copied().min_by_key(|&r| {
            let row = rows[r as usize].as_ref().unwrap();
            let k = row.binary_search_by_key(&col, |e| e.0).unwrap();
            (row.len(), !row[k].1.is_unit_magnitude(), r)
        });
        self.col_rows[c] = live;
        best.map(|r| r as usize)
    }

    fn eliminate(&mut self, p: usize, c: usize) {
        let col = c as u32;
        let pivot_row = self.rows[p].take().unwrap();
        let k = pivot_row.binary_search_by_key(&col, |e| e.0).unwrap();
        let pivot = pivot_row[k].1.clone();
        let mut touched: Vec<u32> = Vec::new();
        for (cc, _) in &pivot_row {
            self.col_count[*cc as usize] -= 1;
            touched.push(*cc);
        }
        let others: Vec<u32> = core::mem::take(&mut self.col_rows[c]);
        for r in others {
            let r = r as usize;
            if r == p {
                continue;
            }
            let Some(row) = self.rows[r].as_ref() else { continue };
            let Ok(kr) = row.binary_search_by_key(&col, |e| e.0) else { continue };
            let factor = &row[kr].1 / &pivot;
            let updated = axpy(row, &factor, &pivot_row);
            for (cc, _) in row.iter() {
                self.col_count[*cc as usize] -= 1;
            }
            for (cc, _) in updated.iter() {
                self.col_count[*cc as usize] += 1;
                if row.binary_search_by_key(cc, |e| e.0).is_err() {
                    self.col_rows[*cc as usize].push(r as u32);
                }
            }
            touched.extend(updated.iter().map(|e| e.0));
            self.rows[r] = if updated.is_empty() { None } else { Some(updated) };
        }
        touched.sort_unstable();
        touched.dedup();
        for cc in touched {
            let n = self.col_count[cc as usize];
            if n > 0 {
                self.heap.push(Reverse((n, cc)));
            }
        }
    }
}
