use num_traits::One;

use super::spectral::{FilteredComplex, SpectralPage};
use super::ChainComplex;
use crate::error::{Error, Result};
use crate::exactla::{compose_check, SparseMatrixQ, Q};

/// First-quadrant double complex `K^{c,r}` with horizontal maps
/// `h: K^{c,r} -> K^{c+1,r}` and vertical maps `v: K^{c,r} -> K^{c,r+1}`.
/// The squares commute; the total differential is `h + (-1)^c v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleComplex {
    dims: Vec<Vec<usize>>,
    horizontal: Vec<Vec<SparseMatrixQ>>,
    vertical: Vec<Vec<SparseMatrixQ>>,
}

impl DoubleComplex {
    /// `dims[c][r]`; `horizontal[c][r]` for `c + 1 < columns`,
    /// `vertical[c][r]` for `r + 1 < rows`.
    pub fn new(
        dims: Vec<Vec<usize>>,
        horizontal: Vec<Vec<SparseMatrixQ>>,
        vertical: Vec<Vec<SparseMatrixQ>>,
    ) -> Result<Self> {
        let cols = dims.len();
        let rows = dims.first().map_or(0, Vec::len);
        if dims.iter().any(|c| c.len() != rows) {
            return Err(Error::MalformedComplex("ragged double complex".into()));
        }
        if horizontal.len() != cols.saturating_sub(1) || horizontal.iter().any(|c| c.len() != rows)
        {
            return Err(Error::MalformedComplex(
                "wrong number of horizontal maps".into(),
            ));
        }
        if vertical.len() != cols || vertical.iter().any(|c| c.len() != rows.saturating_sub(1)) {
            return Err(Error::MalformedComplex(
                "wrong number of vertical maps".into(),
            ));
        }
        let shape = |m: &SparseMatrixQ, r: usize, c: usize, what: &str| {
            if m.rows() == r && m.cols() == c {
                Ok(())
            } else {
                Err(Error::MalformedComplex(format!(
                    "{what} map has shape {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )))
            }
        };
        for c in 0..cols {
            for r in 0..rows {
                if c + 1 < cols {
                    shape(&horizontal[c][r], dims[c + 1][r], dims[c][r], "horizontal")?;
                }
                if r + 1 < rows {
                    shape(&vertical[c][r], dims[c][r + 1], dims[c][r], "vertical")?;
                }
            }
        }
        for c in 0..cols {
            for r in 0..rows {
                if c + 2 < cols && !compose_check(&horizontal[c][r], &horizontal[c + 1][r])? {
                    return Err(Error::MalformedComplex(format!("h h != 0 at ({c},{r})")));
                }
                if r + 2 < rows && !compose_check(&vertical[c][r], &vertical[c][r + 1])? {
                    return Err(Error::MalformedComplex(format!("v v != 0 at ({c},{r})")));
                }
                if c + 1 < cols && r + 1 < rows {
                    let hv = horizontal[c][r + 1].mul(&vertical[c][r])?;
                    let vh = vertical[c + 1][r].mul(&horizontal[c][r])?;
                    if hv != vh {
                        return Err(Error::MalformedComplex(format!(
                            "square at ({c},{r}) does not commute"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            dims,
            horizontal,
            vertical,
        })
    }

    pub fn columns(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.dims.first().map_or(0, Vec::len)
    }

    pub fn dim(&self, c: usize, r: usize) -> usize {
        self.dims
            .get(c)
            .and_then(|col| col.get(r))
            .copied()
            .unwrap_or(0)
    }

    /// The summands `(c, r)` of total degree `n`, in increasing `c`.
    fn summands(&self, n: usize) -> Vec<(usize, usize)> {
        (0..self.columns())
            .filter(|&c| c <= n && n - c < self.rows())
            .map(|c| (c, n - c))
            .collect()
    }

    fn offsets(&self, n: usize) -> Vec<((usize, usize), usize)> {
        let mut off = 0;
        self.summands(n)
            .into_iter()
            .map(|cr| {
                let here = off;
                off += self.dim(cr.0, cr.1);
                (cr, here)
            })
            .collect()
    }

    pub fn total_complex(&self) -> Result<ChainComplex> {
        let top = (self.columns() + self.rows()).saturating_sub(1);
        let dims: Vec<usize> = (0..top)
            .map(|n| self.summands(n).iter().map(|&(c, r)| self.dim(c, r)).sum())
            .collect();
        let mut differentials = Vec::with_capacity(top.saturating_sub(1));
        for n in 0..top.saturating_sub(1) {
            let src = self.offsets(n);
            let tgt = self.offsets(n + 1);
            let find =
                |c: usize, r: usize| tgt.iter().find(|(cr, _)| *cr == (c, r)).map(|(_, o)| *o);
            let mut triplets = Vec::new();
            for &((c, r), so) in &src {
                if c + 1 < self.columns() {
                    let to = find(c + 1, r).expect("summand present");
                    for (i, k, v) in self.horizontal[c][r].entries() {
                        triplets.push((to + i, so + k, v.clone()));
                    }
                }
                if r + 1 < self.rows() {
                    let to = find(c, r + 1).expect("summand present");
                    let sign = if c % 2 == 0 { Q::one() } else { -Q::one() };
                    for (i, k, v) in self.vertical[c][r].entries() {
                        triplets.push((to + i, so + k, v * &sign));
                    }
                }
            }
            differentials.push(SparseMatrixQ::from_triplets(
                dims[n + 1],
                dims[n],
                triplets,
            )?);
        }
        ChainComplex::new(dims, differentials)
    }

    fn filtered_by(&self, level: impl Fn(usize, usize) -> i64) -> Result<FilteredComplex> {
        let total = self.total_complex()?;
        let levels = (0..total.len())
            .map(|n| {
                self.summands(n)
                    .into_iter()
                    .flat_map(|(c, r)| std::iter::repeat_n(level(c, r), self.dim(c, r)))
                    .collect()
            })
            .collect();
        FilteredComplex::new(total, levels)
    }

    /// Total complex filtered by row index: `E_0` carries `h`, so `E_1` is
    /// row-wise horizontal cohomology.
    pub fn row_filtration(&self) -> Result<FilteredComplex> {
        self.filtered_by(|_, r| r as i64)
    }

    /// Total complex filtered by column index.
    pub fn column_filtration(&self) -> Result<FilteredComplex> {
        self.filtered_by(|c, _| c as i64)
    }

    /// The complex `(K^{., r}, h)`.
    pub fn row(&self, r: usize) -> Result<ChainComplex> {
        ChainComplex::new(
            (0..self.columns()).map(|c| self.dim(c, r)).collect(),
            (0..self.columns().saturating_sub(1))
                .map(|c| self.horizontal[c][r].clone())
                .collect(),
        )
    }

    /// `E_1^{p,q} = H^q(K^{., p}, h)` computed directly from each row.
    pub fn row_e1(&self) -> Result<SpectralPage> {
        let mut page = SpectralPage::new(1);
        for r in 0..self.rows() {
            for (c, h) in self.row(r)?.cohomology_dims().into_iter().enumerate() {
                page.add(r as i64, c as i64, h);
            }
        }
        Ok(page)
    }
}
