//! Multidegree-by-multidegree pipelines built from Čech complexes of
//! differential forms on `V = P^d \ P^j`.

use serde::Serialize;

use super::double::DoubleComplex;
use super::spectral::{spectral_sequence, SpectralPage, SpectralSequence};
use super::SubquotientComplex;
use crate::cech::{
    cech_complex, local_pair, map_slices, standard_cover, FormBundle, Multidegree, Window, MAX_D,
};
use crate::error::{Error, Result};
use crate::exactla::SparseMatrixQ;

fn check(d: usize, j: usize) -> Result<()> {
    if d == 0 || d > MAX_D {
        return Err(Error::InvalidOpen(format!("d = {d} outside 1..={MAX_D}")));
    }
    if j >= d {
        return Err(Error::SubspaceIndexOutOfRange { j, max: d - 1 });
    }
    Ok(())
}

/// The Čech-de Rham double complex of `V` at one multidegree: column `q` is
/// the Čech degree over the cover `D(T_{j+1}), ..., D(T_d)`, row `p` the form
/// degree.
pub fn cech_de_rham_double_complex(
    j: usize,
    m: &Multidegree,
    window: Window,
) -> Result<DoubleComplex> {
    let d = m.d();
    check(d, j)?;
    let cover = standard_cover(d, j + 1..=d)?;
    let rows: Vec<_> = (0..=d)
        .map(|p| cech_complex(&cover, FormBundle::forms(p), m, window))
        .collect::<Result<_>>()?;
    let cols = d - j;
    let dims = (0..cols)
        .map(|q| rows.iter().map(|c| c.complex.dim(q)).collect())
        .collect();
    let horizontal = (0..cols - 1)
        .map(|q| rows.iter().map(|c| c.complex.differential(q)).collect())
        .collect();
    let de_rham: Vec<_> = rows
        .windows(2)
        .map(|w| w[0].de_rham_chain_map(&w[1]))
        .collect::<Result<_>>()?;
    let vertical = (0..cols)
        .map(|q| de_rham.iter().map(|f| f.component(q).clone()).collect())
        .collect();
    DoubleComplex::new(dims, horizontal, vertical)
}

/// Algebraic de Rham cohomology of `V` summed over a window of multidegrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeRhamReport {
    pub d: usize,
    pub j: usize,
    pub window: i64,
    /// `dim H^n_dR(V)` for `n = 0, ..., 2d - j - 1`.
    pub dims: Vec<usize>,
    /// Multidegrees carrying nonzero total cohomology.
    pub support: Vec<Multidegree>,
    /// `E_1^{p,q} = H^q(V, Omega^p)` summed over the window.
    pub e1: SpectralPage,
}

impl DeRhamReport {
    /// The expected answer: `V` retracts onto `P^{d-j-1}`.
    pub fn expected_dims(d: usize, j: usize) -> Vec<usize> {
        let top = 2 * d - j - 1;
        (0..=top)
            .map(|n| usize::from(n % 2 == 0 && n <= 2 * (d - j - 1)))
            .collect()
    }

    pub fn matches_expected(&self) -> bool {
        self.dims == Self::expected_dims(self.d, self.j)
            && self.support == vec![Multidegree::zero(self.d)]
    }
}

pub fn de_rham_of_v(d: usize, j: usize, window: Window) -> Result<DeRhamReport> {
    check(d, j)?;
    let ms = window.multidegrees(d, 0);
    let slices = map_slices(&ms, |m| {
        let dc = cech_de_rham_double_complex(j, m, window)?;
        Ok((dc.total_complex()?.cohomology_dims(), dc.row_e1()?))
    })?;
    let mut dims = vec![0; 2 * d - j];
    let mut support = Vec::new();
    let mut e1 = SpectralPage::new(1);
    for (m, (h, page)) in ms.iter().zip(slices) {
        if h.iter().any(|&x| x > 0) {
            support.push(m.clone());
        }
        for (n, x) in h.into_iter().enumerate() {
            dims[n] += x;
        }
        for (&(p, q), &v) in &page.entries {
            e1.add(p, q, v);
        }
    }
    Ok(DeRhamReport {
        d,
        j,
        window: window.bound(),
        dims,
        support,
        e1,
    })
}

/// Every page of the row-filtration spectral sequence at one multidegree.
pub fn de_rham_spectral_sequence(
    j: usize,
    m: &Multidegree,
    window: Window,
) -> Result<SpectralSequence> {
    spectral_sequence(&cech_de_rham_double_complex(j, m, window)?.row_filtration()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityFailure {
    pub p: usize,
    pub multidegree: Multidegree,
    pub dim: usize,
}

/// Cohomology of the complexes `H^{d-j-1}(V, Omega^.)` ("intermediate") and
/// `H~(Omega^.)` ("reduced"), summed over a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub d: usize,
    pub j: usize,
    pub window: i64,
    pub intermediate: Vec<usize>,
    pub intermediate_support: Vec<(usize, Multidegree)>,
    pub reduced_terms: Vec<usize>,
    pub reduced: Vec<usize>,
    pub failures: Vec<AcyclicityFailure>,
}

impl AcyclicityReport {
    pub fn acyclic(&self) -> bool {
        self.failures.is_empty()
    }

    /// Intermediate cohomology is one-dimensional, in degree `d - j - 1`, at
    /// multidegree zero.
    pub fn intermediate_as_expected(&self) -> bool {
        let t = self.d - self.j - 1;
        let mut expected = vec![0; self.d + 1];
        expected[t] = 1;
        self.intermediate == expected
            && self.intermediate_support == vec![(t, Multidegree::zero(self.d))]
    }
}

struct SliceAcyclicity {
    intermediate: Vec<usize>,
    reduced_terms: Vec<usize>,
    reduced: Vec<usize>,
}

fn acyclicity_slice(j: usize, m: &Multidegree, window: Window) -> Result<SliceAcyclicity> {
    let d = m.d();
    let t = d - j - 1;
    let pairs: Vec<_> = (0..=d)
        .map(|p| local_pair(j, FormBundle::forms(p), m, window))
        .collect::<Result<_>>()?;
    let maps: Vec<SparseMatrixQ> = pairs
        .windows(2)
        .map(|w| {
            Ok(w[0]
                .open
                .de_rham_chain_map(&w[1].open)?
                .component(t)
                .clone())
        })
        .collect::<Result<_>>()?;
    let ambient_dims: Vec<usize> = pairs.iter().map(|pr| pr.open.complex.dim(t)).collect();
    let numerators: Vec<SparseMatrixQ> =
        pairs.iter().map(|pr| pr.open.complex.cocycles(t)).collect();
    let boundaries: Vec<SparseMatrixQ> = pairs
        .iter()
        .map(|pr| pr.open.complex.coboundaries(t))
        .collect();
    let intermediate = SubquotientComplex {
        ambient_dims: ambient_dims.clone(),
        numerators: numerators.clone(),
        denominators: boundaries.clone(),
        maps: maps.clone(),
    };
    intermediate.validate()?;
    let enlarged: Vec<SparseMatrixQ> = pairs
        .iter()
        .zip(&boundaries)
        .zip(&ambient_dims)
        .map(|((pr, b), &amb)| {
            let global = pr
                .restriction
                .component(t)
                .mul(&pr.full.complex.cocycles(t))?;
            SparseMatrixQ::hstack(amb, &[b, &global])
        })
        .collect::<Result<_>>()?;
    let reduced = SubquotientComplex {
        ambient_dims,
        numerators,
        denominators: enlarged,
        maps,
    };
    reduced.validate()?;
    Ok(SliceAcyclicity {
        intermediate: intermediate.cohomology_dims()?,
        reduced_terms: reduced.term_dims(),
        reduced: reduced.cohomology_dims()?,
    })
}

/// Checks that `0 -> H~(O) -> H~(Omega^1) -> ... -> H~(Omega^d) -> 0` is
/// exact at every multidegree of the window.
pub fn reduced_local_acyclicity(d: usize, j: usize, window: Window) -> Result<AcyclicityReport> {
    check(d, j)?;
    let ms = window.multidegrees(d, 0);
    let slices = map_slices(&ms, |m| acyclicity_slice(j, m, window))?;
    let mut report = AcyclicityReport {
        d,
        j,
        window: window.bound(),
        intermediate: vec![0; d + 1],
        intermediate_support: Vec::new(),
        reduced_terms: vec![0; d + 1],
        reduced: vec![0; d + 1],
        failures: Vec::new(),
    };
    for (m, s) in ms.iter().zip(slices) {
        for p in 0..=d {
            report.intermediate[p] += s.intermediate[p];
            if s.intermediate[p] > 0 {
                report.intermediate_support.push((p, m.clone()));
            }
            report.reduced_terms[p] += s.reduced_terms[p];
            report.reduced[p] += s.reduced[p];
            if s.reduced[p] > 0 {
                report.failures.push(AcyclicityFailure {
                    p,
                    multidegree: m.clone(),
                    dim: s.reduced[p],
                });
            }
        }
    }
    report.intermediate_support.sort();
    Ok(report)
}
