use num_traits::One;
use serde::{Deserialize, Serialize};

use super::forms::{EulerReducedSlice, Multidegree, OpenSet, MAX_D};
use super::Window;
use crate::error::{Error, Result};
use crate::exactla::{SparseMatrixQ, Q};
use crate::homology::{ChainComplex, ChainMap};

/// The bundle `Omega^p(k)` on `P^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormBundle {
    pub p: usize,
    pub k: i64,
}

impl FormBundle {
    pub fn new(p: usize, k: i64) -> Self {
        Self { p, k }
    }

    pub fn forms(p: usize) -> Self {
        Self { p, k: 0 }
    }
}

/// One summand of a Čech cochain group: the sections over the intersection
/// of the cover members listed in `members`.
#[derive(Debug, Clone)]
pub struct CechTerm {
    pub members: Vec<usize>,
    pub open: OpenSet,
    pub slice: EulerReducedSlice,
    pub offset: usize,
}

/// Alternating Čech complex of `Omega^p(k)` at one multidegree.
#[derive(Debug, Clone)]
pub struct CechComplex {
    pub cover: Vec<OpenSet>,
    pub bundle: FormBundle,
    pub multidegree: Multidegree,
    pub terms: Vec<Vec<CechTerm>>,
    pub complex: ChainComplex,
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// The cover `{D(T_k)}_{k in indices}`.
pub fn standard_cover(d: usize, indices: impl IntoIterator<Item = usize>) -> Result<Vec<OpenSet>> {
    indices.into_iter().map(|k| OpenSet::new(d, &[k])).collect()
}

impl CechComplex {
    pub fn build(
        cover: &[OpenSet],
        bundle: FormBundle,
        multidegree: &Multidegree,
        window: Window,
    ) -> Result<Self> {
        if cover.is_empty() {
            return Err(Error::EmptyCover);
        }
        let d = multidegree.d();
        if d == 0 || d > MAX_D {
            return Err(Error::InvalidOpen(format!("d = {d} outside 1..={MAX_D}")));
        }
        if bundle.p > d {
            return Err(Error::FormDegreeOutOfRange { p: bundle.p, d });
        }
        window.check(multidegree)?;
        if multidegree.total() != bundle.k {
            return Err(Error::SliceMismatch(format!(
                "multidegree {multidegree} has total degree {}, bundle twist is {}",
                multidegree.total(),
                bundle.k
            )));
        }
        let n = cover.len();
        let mut terms: Vec<Vec<CechTerm>> = Vec::with_capacity(n);
        for q in 0..n {
            let mut offset = 0;
            let mut level = Vec::new();
            for members in subsets_of_size(n, q + 1) {
                let open = members
                    .iter()
                    .skip(1)
                    .fold(cover[members[0]], |acc, &i| acc.union(cover[i]));
                let slice = EulerReducedSlice::new(multidegree, bundle.p, open);
                let dim = slice.dim();
                level.push(CechTerm {
                    members,
                    open,
                    slice,
                    offset,
                });
                offset += dim;
            }
            terms.push(level);
        }
        let dims: Vec<usize> = terms
            .iter()
            .map(|l| l.iter().map(|t| t.slice.dim()).sum())
            .collect();
        let mut differentials = Vec::with_capacity(n.saturating_sub(1));
        for q in 0..n.saturating_sub(1) {
            let mut triplets = Vec::new();
            for target in &terms[q + 1] {
                for omit in 0..target.members.len() {
                    let mut face = target.members.clone();
                    face.remove(omit);
                    let source = terms[q]
                        .iter()
                        .find(|t| t.members == face)
                        .expect("every face is a lower term");
                    let block = source.slice.restriction_to(&target.slice)?;
                    let sign = if omit % 2 == 0 { Q::one() } else { -Q::one() };
                    for (r, c, v) in block.entries() {
                        triplets.push((target.offset + r, source.offset + c, v * &sign));
                    }
                }
            }
            differentials.push(SparseMatrixQ::from_triplets(
                dims[q + 1],
                dims[q],
                triplets,
            )?);
        }
        let complex = ChainComplex::new(dims, differentials)?;
        Ok(Self {
            cover: cover.to_vec(),
            bundle,
            multidegree: multidegree.clone(),
            terms,
            complex,
        })
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.complex.cohomology_dims()
    }

    /// The exterior derivative `C^q(Omega^p) -> C^q(Omega^{p+1})`, applied
    /// summand by summand. Both complexes must share the cover and the
    /// multidegree, which must have total degree 0.
    pub fn de_rham_chain_map(&self, target: &CechComplex) -> Result<ChainMap> {
        if self.cover != target.cover || self.multidegree != target.multidegree {
            return Err(Error::SliceMismatch(
                "de Rham map needs matching cover and multidegree".into(),
            ));
        }
        if target.bundle.p != self.bundle.p + 1 || self.bundle.k != 0 || target.bundle.k != 0 {
            return Err(Error::SliceMismatch(
                "de Rham map goes from Omega^p to Omega^{p+1}, untwisted".into(),
            ));
        }
        let mut maps = Vec::with_capacity(self.terms.len());
        for (src_level, tgt_level) in self.terms.iter().zip(&target.terms) {
            let rows = tgt_level.iter().map(|t| t.slice.dim()).sum();
            let cols = src_level.iter().map(|t| t.slice.dim()).sum();
            let mut triplets = Vec::new();
            for (s, t) in src_level.iter().zip(tgt_level) {
                let block = s.slice.de_rham_to(&t.slice)?;
                for (r, c, v) in block.entries() {
                    triplets.push((t.offset + r, s.offset + c, v.clone()));
                }
            }
            maps.push(SparseMatrixQ::from_triplets(rows, cols, triplets)?);
        }
        ChainMap::new(&self.complex, &target.complex, maps)
    }

    /// Restriction of cochains to a subcover: member `i` of `sub` is member
    /// `embedding[i]` of `self`. Components whose members all lie in the
    /// subcover are kept, the rest dropped.
    pub fn restriction_to_subcover(
        &self,
        sub: &CechComplex,
        embedding: &[usize],
    ) -> Result<ChainMap> {
        if embedding.len() != sub.cover.len()
            || embedding
                .iter()
                .zip(&sub.cover)
                .any(|(&i, o)| self.cover.get(i) != Some(o))
        {
            return Err(Error::SliceMismatch(
                "subcover embedding does not match the covers".into(),
            ));
        }
        let len = self.terms.len().max(sub.terms.len());
        let mut maps = Vec::with_capacity(len);
        for q in 0..len {
            let rows = sub.complex.dim(q);
            let cols = self.complex.dim(q);
            let mut triplets = Vec::new();
            if let Some(level) = sub.terms.get(q) {
                for t in level {
                    let members: Vec<usize> = t.members.iter().map(|&i| embedding[i]).collect();
                    let source = self.terms[q]
                        .iter()
                        .find(|s| s.members == members)
                        .expect("embedded members index a term");
                    for i in 0..t.slice.dim() {
                        triplets.push((t.offset + i, source.offset + i, Q::one()));
                    }
                }
            }
            maps.push(SparseMatrixQ::from_triplets(rows, cols, triplets)?);
        }
        ChainMap::new(&self.complex, &sub.complex, maps)
    }
}

/// Public entry point matching the engine's operation list.
pub fn cech_complex(
    cover: &[OpenSet],
    bundle: FormBundle,
    multidegree: &Multidegree,
    window: Window,
) -> Result<CechComplex> {
    CechComplex::build(cover, bundle, multidegree, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree(v.to_vec())
    }

    #[test]
    fn constants_on_p1() {
        let cover = standard_cover(1, 0..=1).unwrap();
        let c = cech_complex(
            &cover,
            FormBundle::new(0, 0),
            &md(&[0, 0]),
            Window::default(),
        )
        .unwrap();
        assert_eq!(c.cohomology_dims(), vec![1, 0]);
    }

    #[test]
    fn h1_of_o_minus_two() {
        let cover = standard_cover(1, 0..=1).unwrap();
        let c = cech_complex(
            &cover,
            FormBundle::new(0, -2),
            &md(&[-1, -1]),
            Window::default(),
        )
        .unwrap();
        assert_eq!(c.cohomology_dims(), vec![0, 1]);
    }

    #[test]
    fn constants_on_complement_of_point() {
        let cover = standard_cover(2, 1..=2).unwrap();
        let c = cech_complex(
            &cover,
            FormBundle::new(0, 0),
            &md(&[0, 0, 0]),
            Window::default(),
        )
        .unwrap();
        assert_eq!(c.cohomology_dims()[0], 1);
    }

    #[test]
    fn errors() {
        let cover = standard_cover(1, 0..=1).unwrap();
        assert_eq!(
            cech_complex(&[], FormBundle::new(0, 0), &md(&[0, 0]), Window::default()).unwrap_err(),
            Error::EmptyCover
        );
        let err = cech_complex(
            &cover,
            FormBundle::new(0, 0),
            &md(&[9, -9]),
            Window::new(5).unwrap(),
        );
        assert!(matches!(err, Err(Error::WindowExceeded(_))));
        let err = cech_complex(
            &cover,
            FormBundle::new(0, 1),
            &md(&[0, 0]),
            Window::default(),
        );
        assert!(matches!(err, Err(Error::SliceMismatch(_))));
    }

    #[test]
    fn de_rham_commutes_with_cech_differential() {
        let cover = standard_cover(2, 0..=2).unwrap();
        for m in [md(&[0, 0, 0]), md(&[1, -2, 1]), md(&[-1, -1, 2])] {
            let c: Vec<_> = (0..=2)
                .map(|p| cech_complex(&cover, FormBundle::forms(p), &m, Window::default()).unwrap())
                .collect();
            c[0].de_rham_chain_map(&c[1]).unwrap();
            c[1].de_rham_chain_map(&c[2]).unwrap();
        }
    }

    #[test]
    fn restriction_to_subcover_is_a_chain_map() {
        let full = standard_cover(2, 0..=2).unwrap();
        let sub = standard_cover(2, [2]).unwrap();
        let m = md(&[1, 0, -1]);
        let a = cech_complex(&full, FormBundle::forms(0), &m, Window::default()).unwrap();
        let b = cech_complex(&sub, FormBundle::forms(0), &m, Window::default()).unwrap();
        let f = a.restriction_to_subcover(&b, &[2]).unwrap();
        // H^0(P^2, O) vanishes at this multidegree, H^0(V, O) does not
        assert_eq!(a.cohomology_dims()[0], 0);
        assert_eq!(b.cohomology_dims()[0], 1);
        assert_eq!(f.induced_rank(&a.complex, &b.complex, 0).unwrap(), 0);
    }
}
