use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Q;
use crate::error::{Error, Result};

/// Sparse matrix over the rationals in coordinate form.
///
/// Entries are kept sorted by `(row, col)`, without duplicates and without
/// explicit zeros, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Q)>,
}

impl SparseMatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, Q::one())).collect();
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Builds a matrix from triplets. Duplicate positions are summed and
    /// zeros dropped; out-of-range indices are rejected.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            *acc.entry((r, c)).or_insert_with(Q::zero) += v;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        Self::from_triplets(
            rows,
            cols,
            triplets
                .into_iter()
                .map(|(r, c, v)| (r, c, Q::from_integer(v.into()))),
        )
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged dense matrix".into()));
        }
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dense: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Q)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.entries.len() as f64 / cells as f64
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        match self
            .entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
        {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// Row-wise view: for each row the sorted `(col, value)` pairs.
    pub fn row_lists(&self) -> Vec<Vec<(usize, Q)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, v)| (*c, *r, v.clone()))
            .collect();
        entries.sort_by_key(|a| (a.0, a.1));
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scale(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| (*r, *c, v * factor))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(&other.entries).cloned(),
        )
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.row_lists();
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rhs_rows[*k] {
                *acc.entry((*r, *c)).or_insert_with(Q::zero) += a * b;
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(rows: usize, blocks: &[&SparseMatrixQ]) -> Result<Self> {
        let mut entries = Vec::new();
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!(
                    "hstack block has {} rows, expected {rows}",
                    b.rows
                )));
            }
            entries.extend(
                b.entries
                    .iter()
                    .map(|(r, c, v)| (*r, c + offset, v.clone())),
            );
            offset += b.cols;
        }
        entries.sort_by_key(|a| (a.0, a.1));
        Ok(Self {
            rows,
            cols: offset,
            entries,
        })
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(cols: usize, blocks: &[&SparseMatrixQ]) -> Result<Self> {
        let mut entries = Vec::new();
        let mut offset = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "vstack block has {} cols, expected {cols}",
                    b.cols
                )));
            }
            entries.extend(
                b.entries
                    .iter()
                    .map(|(r, c, v)| (r + offset, *c, v.clone())),
            );
            offset += b.rows;
        }
        Ok(Self {
            rows: offset,
            cols,
            entries,
        })
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut pos = vec![None; self.rows];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = Some(new);
        }
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .filter_map(|(r, c, v)| pos[*r].map(|nr| (nr, *c, v.clone())))
            .collect();
        entries.sort_by_key(|a| (a.0, a.1));
        Self {
            rows: keep.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> Self {
        self.transpose().select_rows(keep).transpose()
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, v)| (row_perm[*r], col_perm[*c], v.clone()))
            .collect();
        entries.sort_by_key(|a| (a.0, a.1));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&SparseMatrixQ]) -> Self {
        let mut entries = Vec::new();
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            entries.extend(
                b.entries
                    .iter()
                    .map(|(r, c, v)| (r + ro, c + co, v.clone())),
            );
            ro += b.rows;
            co += b.cols;
        }
        Self {
            rows: ro,
            cols: co,
            entries,
        }
    }
}

impl fmt::Debug for SparseMatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrixQ {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}
