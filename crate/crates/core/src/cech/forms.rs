//! Twisted differential forms on opens of `P^d`, modelled in homogeneous
//! coordinates `T_0, ..., T_d`.
//!
//! A section of `Omega^p(k)` over `D(prod_{s in S} T_s)` is a Laurent form
//! `sum_I f_I dT_I` with `|I| = p`, total degree `k` (each `dT_i` counts
//! one), killed by contraction with the Euler field `sum T_i d/dT_i`.
//! Everything is graded by the exponent multidegree in `Z^{d+1}`, where
//! `T^a dT_I` has multidegree `a + e_I`. At a fixed multidegree `m` the
//! exponent of the symbol with form indices `I` is forced to be `m - e_I`,
//! so a slice is indexed by the admissible index sets `I` alone.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, KernelBasis, SparseMatrixQ, Q};

pub const MAX_D: usize = 8;

/// Exponent multidegree in `Z^{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn zero(d: usize) -> Self {
        Self(vec![0; d + 1])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The affine open `D(prod_{s in S} T_s)`, stored as a bitmask of `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenSet {
    mask: u32,
}

impl OpenSet {
    pub fn new(d: usize, members: &[usize]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidOpen(
                "open sets need a nonempty index set".into(),
            ));
        }
        let mut mask = 0u32;
        for &s in members {
            if s > d {
                return Err(Error::InvalidOpen(format!("index {s} exceeds d = {d}")));
            }
            mask |= 1 << s;
        }
        Ok(Self { mask })
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            mask: self.mask | other.mask,
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.mask & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn members(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members().iter().map(|i| format!("T{i}")).collect();
        write!(f, "D({})", parts.join(""))
    }
}

/// Index sets `I` of size `p` in `{0..=d}`, as bitmasks in increasing order.
fn index_sets(d: usize, p: usize) -> Vec<u32> {
    (0u32..1 << (d + 1))
        .filter(|m| m.count_ones() as usize == p)
        .collect()
}

/// Basis symbol `T^a dT_I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormSymbol {
    pub exponent: Vec<i64>,
    pub indices: Vec<usize>,
}

impl fmt::Display for FormSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono: Vec<String> = self
            .exponent
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("T{i}")
                } else {
                    format!("T{i}^{e}")
                }
            })
            .collect();
        let mono = if mono.is_empty() {
            "1".to_string()
        } else {
            mono.join("*")
        };
        if self.indices.is_empty() {
            write!(f, "{mono}")
        } else {
            let forms: Vec<String> = self.indices.iter().map(|i| format!("dT{i}")).collect();
            write!(f, "{mono} {}", forms.join("^"))
        }
    }
}

/// All Laurent `p`-forms of multidegree `m` regular on an open set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentFormSlice {
    pub multidegree: Multidegree,
    pub p: usize,
    pub open: OpenSet,
    /// Bitmasks of the admissible index sets, increasing.
    symbols: Vec<u32>,
}

impl LaurentFormSlice {
    pub fn new(multidegree: &Multidegree, p: usize, open: OpenSet) -> Self {
        let d = multidegree.d();
        let m = &multidegree.0;
        let symbols = if p > d + 1 {
            Vec::new()
        } else {
            index_sets(d, p)
                .into_iter()
                .filter(|&set| {
                    (0..=d).all(|k| open.contains(k) || m[k] - i64::from(set >> k & 1 == 1) >= 0)
                })
                .collect()
        };
        Self {
            multidegree: multidegree.clone(),
            p,
            open,
            symbols,
        }
    }

    pub fn d(&self) -> usize {
        self.multidegree.d()
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn position(&self, set: u32) -> Option<usize> {
        self.symbols.binary_search(&set).ok()
    }

    pub fn symbol(&self, i: usize) -> FormSymbol {
        let set = self.symbols[i];
        let d = self.d();
        let indices: Vec<usize> = (0..=d).filter(|&k| set >> k & 1 == 1).collect();
        let exponent = (0..=d)
            .map(|k| self.multidegree.0[k] - i64::from(set >> k & 1 == 1))
            .collect();
        FormSymbol { exponent, indices }
    }

    pub fn symbols(&self) -> Vec<FormSymbol> {
        (0..self.dim()).map(|i| self.symbol(i)).collect()
    }

    fn same_grading(&self, other: &Self) -> Result<()> {
        if self.multidegree != other.multidegree {
            return Err(Error::SliceMismatch(format!(
                "multidegrees {} and {} differ",
                self.multidegree, other.multidegree
            )));
        }
        Ok(())
    }

    /// Contraction with the Euler field, into the `(p-1)`-form slice on the
    /// same open: `T^a dT_I -> sum_r (-1)^r T^{a + e_{i_r}} dT_{I \ i_r}`.
    pub fn euler_contraction(&self) -> SparseMatrixQ {
        if self.p == 0 {
            return SparseMatrixQ::zeros(0, self.dim());
        }
        let target = LaurentFormSlice::new(&self.multidegree, self.p - 1, self.open);
        let mut triplets = Vec::new();
        for (col, &set) in self.symbols.iter().enumerate() {
            let mut r = 0;
            for k in 0..=self.d() {
                if set >> k & 1 == 1 {
                    let row = target
                        .position(set & !(1 << k))
                        .expect("contraction stays regular");
                    let sign = if r % 2 == 0 { Q::one() } else { -Q::one() };
                    triplets.push((row, col, sign));
                    r += 1;
                }
            }
        }
        SparseMatrixQ::from_triplets(target.dim(), self.dim(), triplets).expect("in range")
    }

    /// Exterior derivative into `target` (the `(p+1)`-form slice of the same
    /// multidegree on the same open):
    /// `d(T^a dT_I) = sum_{i not in I} a_i T^{a - e_i} dT_i ^ dT_I`.
    pub fn de_rham_map(&self, target: &LaurentFormSlice) -> Result<SparseMatrixQ> {
        self.same_grading(target)?;
        if target.p != self.p + 1 || target.open != self.open {
            return Err(Error::SliceMismatch(format!(
                "d maps p = {} forms on {} to p = {} forms on the same open, not p = {} on {}",
                self.p,
                self.open,
                self.p + 1,
                target.p,
                target.open
            )));
        }
        let m = &self.multidegree.0;
        let mut triplets = Vec::new();
        for (col, &set) in self.symbols.iter().enumerate() {
            for (i, &mi) in m.iter().enumerate() {
                if set >> i & 1 == 1 || mi == 0 {
                    continue;
                }
                let before = (set & ((1u32 << i) - 1)).count_ones();
                let row = target.position(set | 1 << i).ok_or_else(|| {
                    Error::SliceMismatch("exterior derivative left the regular forms".into())
                })?;
                let coeff = Q::from_integer(mi.into());
                triplets.push((row, col, if before.is_multiple_of(2) { coeff } else { -coeff }));
            }
        }
        SparseMatrixQ::from_triplets(target.dim(), self.dim(), triplets)
    }

    /// Restriction to a smaller open `D(S')`, `S <= S'`: every symbol stays
    /// regular, so this is a coordinate inclusion.
    pub fn restriction_map(&self, target: &LaurentFormSlice) -> Result<SparseMatrixQ> {
        self.same_grading(target)?;
        if target.p != self.p || !self.open.is_subset_of(target.open) {
            return Err(Error::SliceMismatch(format!(
                "cannot restrict from {} to {}",
                self.open, target.open
            )));
        }
        let triplets = self.symbols.iter().enumerate().map(|(col, &set)| {
            (
                target.position(set).expect("restriction keeps symbols"),
                col,
                Q::one(),
            )
        });
        SparseMatrixQ::from_triplets(target.dim(), self.dim(), triplets)
    }
}

/// Forms in a slice killed by Euler contraction: the sections of
/// `Omega^p(k)` in that multidegree.
#[derive(Debug, Clone)]
pub struct EulerReducedSlice {
    pub ambient: LaurentFormSlice,
    kernel: KernelBasis,
}

impl EulerReducedSlice {
    pub fn new(multidegree: &Multidegree, p: usize, open: OpenSet) -> Self {
        let ambient = LaurentFormSlice::new(multidegree, p, open);
        let kernel = kernel_basis(&ambient.euler_contraction());
        Self { ambient, kernel }
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// Basis vectors as columns in ambient coordinates.
    pub fn basis(&self) -> &SparseMatrixQ {
        &self.kernel.basis
    }

    /// Coordinates of ambient vectors that lie in this slice.
    pub fn coordinates(&self, ambient_vectors: &SparseMatrixQ) -> SparseMatrixQ {
        self.kernel.coordinates(ambient_vectors)
    }

    /// True iff every column lies in the reduced slice.
    pub fn contains(&self, ambient_vectors: &SparseMatrixQ) -> Result<bool> {
        Ok(self
            .ambient
            .euler_contraction()
            .mul(ambient_vectors)?
            .is_zero())
    }

    /// Matrix, in reduced coordinates, of an ambient map whose image is known
    /// to land in `target`.
    fn reduce_map(
        &self,
        target: &EulerReducedSlice,
        ambient_map: &SparseMatrixQ,
    ) -> Result<SparseMatrixQ> {
        let image = ambient_map.mul(self.basis())?;
        if !target.contains(&image)? {
            return Err(Error::SliceMismatch(
                "image leaves the Euler-reduced slice".into(),
            ));
        }
        Ok(target.coordinates(&image))
    }

    pub fn restriction_to(&self, target: &EulerReducedSlice) -> Result<SparseMatrixQ> {
        let r = self.ambient.restriction_map(&target.ambient)?;
        self.reduce_map(target, &r)
    }

    /// Exterior derivative in reduced coordinates. Only total degree zero is
    /// preserved by `d`, since `d i_E + i_E d` is multiplication by the degree.
    pub fn de_rham_to(&self, target: &EulerReducedSlice) -> Result<SparseMatrixQ> {
        let dm = self.ambient.de_rham_map(&target.ambient)?;
        self.reduce_map(target, &dm)
    }
}
