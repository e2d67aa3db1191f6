//! Exact linear algebra over the rationals.
//!
//! Everything the homological engines need reduces to ranks of sparse
//! rational matrices: kernel and image dimensions, cohomology of a
//! two-step window of a complex, and quotient dimensions of nested spans.

mod elimination;
mod sparse;

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use elimination::{rank_dense_bareiss, rank_rational, rank_sparse_fraction_free, rref};
pub use sparse::SparseMatrixQ;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Knobs for the rank dispatcher.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EliminationOptions {
    /// Matrices with density above this fraction use dense Bareiss.
    pub dense_threshold: f64,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        Self {
            dense_threshold: 0.15,
        }
    }
}

pub fn rank(m: &SparseMatrixQ) -> usize {
    rank_with(m, EliminationOptions::default())
}

pub fn rank_with(m: &SparseMatrixQ, opts: EliminationOptions) -> usize {
    if m.is_zero() {
        0
    } else if m.density() > opts.dense_threshold {
        rank_dense_bareiss(m)
    } else {
        rank_sparse_fraction_free(m)
    }
}

pub fn kernel_dim(m: &SparseMatrixQ) -> usize {
    m.cols() - rank(m)
}

/// A basis of the right kernel, one column per free variable.
///
/// Each basis vector is 1 at its free column and 0 at every other free
/// column, so the free coordinates of any kernel vector are its coordinates
/// in this basis.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub basis: SparseMatrixQ,
    pub free_columns: Vec<usize>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.free_columns.len()
    }

    /// Coordinates (w.r.t. `basis`) of vectors known to lie in the kernel.
    pub fn coordinates(&self, vectors: &SparseMatrixQ) -> SparseMatrixQ {
        vectors.select_rows(&self.free_columns)
    }
}

pub fn kernel_basis(m: &SparseMatrixQ) -> KernelBasis {
    let (reduced, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free_columns: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut triplets = Vec::new();
    for (k, &f) in free_columns.iter().enumerate() {
        triplets.push((f, k, Q::one()));
        for (row, &p) in reduced.iter().zip(&pivots) {
            if !row[f].is_zero() {
                triplets.push((p, k, -row[f].clone()));
            }
        }
    }
    let basis = SparseMatrixQ::from_triplets(m.cols(), free_columns.len(), triplets)
        .expect("indices in range by construction");
    KernelBasis {
        basis,
        free_columns,
    }
}

/// True iff `b * a == 0`, i.e. `a` followed by `b` is the zero map.
pub fn compose_check(a: &SparseMatrixQ, b: &SparseMatrixQ) -> Result<bool> {
    Ok(b.mul(a)?.is_zero())
}

/// Cohomology at the middle of `X --d_in--> Y --d_out--> Z`.
pub fn cohomology_dims(d_in: &SparseMatrixQ, d_out: &SparseMatrixQ) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in lands in dimension {}, d_out starts from {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !compose_check(d_in, d_out)? {
        return Err(Error::MalformedComplex("d_out * d_in is nonzero".into()));
    }
    Ok(d_out.cols() - rank(d_out) - rank(d_in))
}

/// Dimension of span(total) / span(sub), both given by column generators in
/// a common ambient space.
pub fn quotient_dim(total: &SparseMatrixQ, sub: &SparseMatrixQ) -> Result<usize> {
    if total.rows() != sub.rows() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {} differ",
            total.rows(),
            sub.rows()
        )));
    }
    let r_total = rank(total);
    let stacked = SparseMatrixQ::hstack(total.rows(), &[total, sub])?;
    if rank(&stacked) != r_total {
        return Err(Error::NotContained);
    }
    Ok(r_total - rank(sub))
}

/// Rank of the column span of several generator blocks together.
pub fn span_rank(ambient: usize, blocks: &[&SparseMatrixQ]) -> Result<usize> {
    Ok(rank(&SparseMatrixQ::hstack(ambient, blocks)?))
}

/// Finite-dimensional space with a basis of opaque, unique labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIndexedSpace<L> {
    basis: Vec<L>,
}

impl<L: Eq + Hash + Clone> BasisIndexedSpace<L> {
    pub fn new(basis: Vec<L>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(basis.len());
        if basis.iter().any(|l| !seen.insert(l.clone())) {
            return Err(Error::DimensionMismatch("duplicate basis label".into()));
        }
        Ok(Self { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[L] {
        &self.basis
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }
}
