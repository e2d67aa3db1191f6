use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::{self, kernel_basis, rank, SparseMatrixQ, Q};

/// Bounded cochain complex `C^0 -> C^1 -> ... -> C^n` of finite-dimensional
/// rational spaces. `differentials[i]` maps `C^i` to `C^{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    differentials: Vec<SparseMatrixQ>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<SparseMatrixQ>) -> Result<Self> {
        if dims.is_empty() {
            if differentials.is_empty() {
                return Ok(Self {
                    dims,
                    differentials,
                });
            }
            return Err(Error::MalformedComplex(
                "differentials without spaces".into(),
            ));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::MalformedComplex(format!(
                "{} spaces need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(Error::MalformedComplex(format!(
                    "differential {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for (i, pair) in differentials.windows(2).enumerate() {
            if !exactla::compose_check(&pair[0], &pair[1])? {
                return Err(Error::MalformedComplex(format!("d^{} d^{} != 0", i + 1, i)));
            }
        }
        Ok(Self {
            dims,
            differentials,
        })
    }

    pub fn zero() -> Self {
        Self {
            dims: Vec::new(),
            differentials: Vec::new(),
        }
    }

    /// A single space in degree 0.
    pub fn single(dim: usize) -> Self {
        Self {
            dims: vec![dim],
            differentials: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[SparseMatrixQ] {
        &self.differentials
    }

    /// `d^n : C^n -> C^{n+1}`, zero outside the stored range.
    pub fn differential(&self, n: usize) -> SparseMatrixQ {
        self.differentials
            .get(n)
            .cloned()
            .unwrap_or_else(|| SparseMatrixQ::zeros(self.dim(n + 1), self.dim(n)))
    }

    /// `d^{n-1} : C^{n-1} -> C^n`, zero for `n = 0`.
    pub fn incoming(&self, n: usize) -> SparseMatrixQ {
        if n == 0 {
            SparseMatrixQ::zeros(self.dim(0), 0)
        } else {
            self.differential(n - 1)
        }
    }

    pub fn cohomology_dim(&self, n: usize) -> usize {
        let out_rank = self.differentials.get(n).map_or(0, rank);
        let in_rank = if n == 0 {
            0
        } else {
            self.differentials.get(n - 1).map_or(0, rank)
        };
        self.dim(n) - out_rank - in_rank
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(rank).collect();
        (0..self.dims.len())
            .map(|n| {
                let out_rank = ranks.get(n).copied().unwrap_or(0);
                let in_rank = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - out_rank - in_rank
            })
            .collect()
    }

    /// Column generators of the cocycles `Z^n`.
    pub fn cocycles(&self, n: usize) -> SparseMatrixQ {
        kernel_basis(&self.differential(n)).basis
    }

    /// Column generators of the coboundaries `B^n`.
    pub fn coboundaries(&self, n: usize) -> SparseMatrixQ {
        self.incoming(n)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Degree-wise linear maps `source^n -> target^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<SparseMatrixQ>,
}

impl ChainMap {
    /// Validates shapes and the chain-map identity `f d = d f`.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        maps: Vec<SparseMatrixQ>,
    ) -> Result<Self> {
        let n = source.len().max(target.len());
        if maps.len() != n {
            return Err(Error::MalformedComplex(format!(
                "chain map needs {n} components, got {}",
                maps.len()
            )));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.cols() != source.dim(i) || f.rows() != target.dim(i) {
                return Err(Error::MalformedComplex(format!(
                    "chain map component {i} has wrong shape"
                )));
            }
        }
        for i in 0..n.saturating_sub(1) {
            let lhs = maps[i + 1].mul(&source.differential(i))?;
            let rhs = target.differential(i).mul(&maps[i])?;
            if lhs != rhs {
                return Err(Error::MalformedComplex(format!(
                    "chain map fails to commute in degree {i}"
                )));
            }
        }
        Ok(Self { maps })
    }

    pub fn component(&self, n: usize) -> &SparseMatrixQ {
        &self.maps[n]
    }

    /// Rank of the induced map `H^n(source) -> H^n(target)`.
    pub fn induced_rank(
        &self,
        source: &ChainComplex,
        target: &ChainComplex,
        n: usize,
    ) -> Result<usize> {
        if n >= self.maps.len() {
            return Ok(0);
        }
        let image_of_cycles = self.maps[n].mul(&source.cocycles(n))?;
        let boundaries = target.coboundaries(n);
        let both = exactla::span_rank(target.dim(n), &[&image_of_cycles, &boundaries])?;
        Ok(both - rank(&boundaries))
    }
}

/// Mapping cone shifted by one, so that it sits in the long exact sequence
/// `... -> H^{n-1}(B) -> H^n(cone) -> H^n(A) -> H^n(B) -> ...`.
///
/// `cone^n = A^n (+) B^{n-1}` with `D(a, b) = (d a, f a - d b)`. Returns the
/// complex together with the projection onto `A`.
pub fn relative_cone(
    source: &ChainComplex,
    target: &ChainComplex,
    f: &ChainMap,
) -> Result<(ChainComplex, ChainMap)> {
    let len = source.len().max(target.len() + 1);
    let dims: Vec<usize> = (0..len)
        .map(|n| source.dim(n) + if n == 0 { 0 } else { target.dim(n - 1) })
        .collect();
    let mut differentials = Vec::with_capacity(len.saturating_sub(1));
    for n in 0..len.saturating_sub(1) {
        let (a_n, a_next) = (source.dim(n), source.dim(n + 1));
        let b_prev = if n == 0 { 0 } else { target.dim(n - 1) };
        let b_n = target.dim(n);
        let da = source.differential(n);
        let fa = if n < f.maps.len() {
            f.maps[n].clone()
        } else {
            SparseMatrixQ::zeros(b_n, a_n)
        };
        let db = if n == 0 {
            SparseMatrixQ::zeros(b_n, 0)
        } else {
            target.differential(n - 1).scale(&-Q::one())
        };
        let top = SparseMatrixQ::hstack(a_next, &[&da, &SparseMatrixQ::zeros(a_next, b_prev)])?;
        let bottom = SparseMatrixQ::hstack(b_n, &[&fa, &db])?;
        differentials.push(SparseMatrixQ::vstack(a_n + b_prev, &[&top, &bottom])?);
    }
    let cone = ChainComplex::new(dims, differentials)?;
    let projection: Vec<SparseMatrixQ> = (0..len)
        .map(|n| {
            let b_prev = if n == 0 { 0 } else { target.dim(n - 1) };
            SparseMatrixQ::hstack(
                source.dim(n),
                &[
                    &SparseMatrixQ::identity(source.dim(n)),
                    &SparseMatrixQ::zeros(source.dim(n), b_prev),
                ],
            )
        })
        .collect::<Result<_>>()?;
    let source_padded = ChainComplex {
        dims: (0..len).map(|n| source.dim(n)).collect(),
        differentials: (0..len.saturating_sub(1))
            .map(|n| source.differential(n))
            .collect(),
    };
    let proj = ChainMap::new(&cone, &source_padded, projection)?;
    Ok((cone, proj))
}

/// A complex of subquotients `Z^n / B^n` of ambient spaces, with the
/// differential induced from ambient maps `d^n`.
///
/// Requires `B^n <= Z^n`, `d Z^n <= Z^{n+1}` and `d B^n <= B^{n+1}`.
#[derive(Debug, Clone)]
pub struct SubquotientComplex {
    pub ambient_dims: Vec<usize>,
    pub numerators: Vec<SparseMatrixQ>,
    pub denominators: Vec<SparseMatrixQ>,
    pub maps: Vec<SparseMatrixQ>,
}

impl SubquotientComplex {
    pub fn validate(&self) -> Result<()> {
        let n = self.ambient_dims.len();
        if self.numerators.len() != n
            || self.denominators.len() != n
            || self.maps.len() + 1 != n.max(1)
        {
            return Err(Error::MalformedComplex(
                "subquotient complex has inconsistent lengths".into(),
            ));
        }
        for i in 0..n {
            exactla::quotient_dim(&self.numerators[i], &self.denominators[i])?;
        }
        for i in 0..self.maps.len() {
            let dz = self.maps[i].mul(&self.numerators[i])?;
            let db = self.maps[i].mul(&self.denominators[i])?;
            exactla::quotient_dim(&self.numerators[i + 1], &dz)
                .map_err(|_| Error::MalformedComplex(format!("d Z^{i} not inside Z^{}", i + 1)))?;
            exactla::quotient_dim(&self.denominators[i + 1], &db)
                .map_err(|_| Error::MalformedComplex(format!("d B^{i} not inside B^{}", i + 1)))?;
        }
        Ok(())
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.numerators
            .iter()
            .zip(&self.denominators)
            .map(|(z, b)| rank(z) - rank(b))
            .collect()
    }

    /// Cohomology of the induced complex, by ranks of stacked generators.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        let n = self.ambient_dims.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let z = &self.numerators[i];
            let b = &self.denominators[i];
            let dim_z = rank(z);
            let dim_b = rank(b);
            // dim {z in Z : d z in B^{i+1}}
            let cycles = if i < self.maps.len() {
                let dz = self.maps[i].mul(z)?;
                let b_next = &self.denominators[i + 1];
                let amb = self.ambient_dims[i + 1];
                dim_z - (exactla::span_rank(amb, &[&dz, b_next])? - rank(b_next))
            } else {
                dim_z
            };
            let boundaries = if i > 0 {
                let dz_prev = self.maps[i - 1].mul(&self.numerators[i - 1])?;
                exactla::span_rank(self.ambient_dims[i], &[&dz_prev, b])?
            } else {
                dim_b
            };
            out.push(cycles - boundaries);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> SparseMatrixQ {
        SparseMatrixQ::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let d0 = m(&[vec![1], vec![1]]);
        let d1 = m(&[vec![1, 0]]);
        assert!(matches!(
            ChainComplex::new(vec![1, 2, 1], vec![d0, d1]),
            Err(Error::MalformedComplex(_))
        ));
    }

    #[test]
    fn simplicial_circle() {
        // vertices -> edges of a triangle
        let d0 = m(&[vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]]);
        let c = ChainComplex::new(vec![3, 3], vec![d0]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![1, 1]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let d0 = m(&[vec![1, -1]]);
        let a = ChainComplex::new(vec![2, 1], vec![d0]).unwrap();
        let id = ChainMap::new(
            &a,
            &a,
            vec![SparseMatrixQ::identity(2), SparseMatrixQ::identity(1)],
        )
        .unwrap();
        let (cone, _) = relative_cone(&a, &a, &id).unwrap();
        assert!(cone.cohomology_dims().iter().all(|&h| h == 0));
    }

    #[test]
    fn cone_of_zero_map_splits() {
        let a = ChainComplex::single(2);
        let b = ChainComplex::single(3);
        let f = ChainMap::new(&a, &b, vec![SparseMatrixQ::zeros(3, 2)]).unwrap();
        let (cone, proj) = relative_cone(&a, &b, &f).unwrap();
        // H^0 = H^0(A), H^1 = H^0(B)
        assert_eq!(cone.cohomology_dims(), vec![2, 3]);
        assert_eq!(proj.component(0).cols(), 2);
    }

    #[test]
    fn induced_rank_of_inclusion() {
        let a = ChainComplex::single(1);
        let b = ChainComplex::single(2);
        let f = ChainMap::new(&a, &b, vec![m(&[vec![1], vec![0]])]).unwrap();
        assert_eq!(f.induced_rank(&a, &b, 0).unwrap(), 1);
    }

    #[test]
    fn subquotient_matches_plain_complex() {
        // Z = everything, B = 0 reproduces ordinary cohomology.
        let d0 = m(&[vec![1, 1], vec![0, 0]]);
        let c = ChainComplex::new(vec![2, 2], vec![d0.clone()]).unwrap();
        let sq = SubquotientComplex {
            ambient_dims: vec![2, 2],
            numerators: vec![SparseMatrixQ::identity(2), SparseMatrixQ::identity(2)],
            denominators: vec![SparseMatrixQ::zeros(2, 0), SparseMatrixQ::zeros(2, 0)],
            maps: vec![d0],
        };
        sq.validate().unwrap();
        assert_eq!(sq.cohomology_dims().unwrap(), c.cohomology_dims());
    }

    #[test]
    fn subquotient_kills_denominator() {
        // Q^2 / span(e1) -> Q via projection to e2: an isomorphism.
        let sq = SubquotientComplex {
            ambient_dims: vec![2, 1],
            numerators: vec![SparseMatrixQ::identity(2), SparseMatrixQ::identity(1)],
            denominators: vec![m(&[vec![1], vec![0]]), SparseMatrixQ::zeros(1, 0)],
            maps: vec![m(&[vec![0, 1]])],
        };
        sq.validate().unwrap();
        assert_eq!(sq.term_dims(), vec![1, 1]);
        assert_eq!(sq.cohomology_dims().unwrap(), vec![0, 0]);
    }
}
