use super::complex::{cech_complex, standard_cover, CechComplex, FormBundle};
use super::forms::{Multidegree, MAX_D};
use super::table::{GradedDimensionTable, TableHeader};
use super::{map_slices, Window};
use crate::error::{Error, Result};
use crate::homology::{relative_cone, ChainMap};

fn check_d(d: usize, p: usize) -> Result<()> {
    if d == 0 || d > MAX_D {
        return Err(Error::InvalidOpen(format!("d = {d} outside 1..={MAX_D}")));
    }
    if p > d {
        return Err(Error::FormDegreeOutOfRange { p, d });
    }
    Ok(())
}

fn check_j(j: usize, d: usize) -> Result<()> {
    if j >= d {
        return Err(Error::SubspaceIndexOutOfRange {
            j,
            max: d.saturating_sub(1),
        });
    }
    Ok(())
}

/// Čech complexes of `P^d` (cover `D(T_0), ..., D(T_d)`) and of
/// `V = P^d \ P^j` (cover `D(T_{j+1}), ..., D(T_d)`) at one multidegree,
/// with the restriction between them.
#[derive(Debug, Clone)]
pub struct LocalPair {
    pub full: CechComplex,
    pub open: CechComplex,
    pub restriction: ChainMap,
}

impl LocalPair {
    /// Rank of `H^i(P^d) -> H^i(V)`.
    pub fn restriction_rank(&self, i: usize) -> Result<usize> {
        self.restriction
            .induced_rank(&self.full.complex, &self.open.complex, i)
    }
}

pub fn local_pair(
    j: usize,
    bundle: FormBundle,
    multidegree: &Multidegree,
    window: Window,
) -> Result<LocalPair> {
    let d = multidegree.d();
    check_j(j, d)?;
    let full = cech_complex(&standard_cover(d, 0..=d)?, bundle, multidegree, window)?;
    let open = cech_complex(&standard_cover(d, j + 1..=d)?, bundle, multidegree, window)?;
    let embedding: Vec<usize> = (j + 1..=d).collect();
    let restriction = full.restriction_to_subcover(&open, &embedding)?;
    Ok(LocalPair {
        full,
        open,
        restriction,
    })
}

fn fill(table: &mut GradedDimensionTable, ms: &[Multidegree], rows: Vec<Vec<usize>>) {
    for (m, dims) in ms.iter().zip(rows) {
        for (i, dim) in dims.into_iter().enumerate() {
            table.insert(i, m.clone(), dim);
        }
    }
}

fn header(
    kind: &str,
    d: usize,
    j: Option<usize>,
    bundle: FormBundle,
    window: Window,
) -> TableHeader {
    TableHeader {
        kind: kind.into(),
        d,
        j,
        p: bundle.p,
        k: bundle.k,
        window: window.bound(),
    }
}

fn padded(mut dims: Vec<usize>, d: usize) -> Vec<usize> {
    dims.resize(d + 1, 0);
    dims
}

/// `H^i(P^d, Omega^p(k))` per multidegree over the full standard cover.
///
/// The cohomology is supported in multidegrees that are entirely `>= 0` or
/// entirely `<= 0`, so every entry satisfies `|m_i| <= |k|`; the window
/// totals are the true dimensions once `window >= |k|`.
pub fn sheaf_cohomology_pd(
    bundle: FormBundle,
    d: usize,
    window: Window,
) -> Result<GradedDimensionTable> {
    check_d(d, bundle.p)?;
    let cover = standard_cover(d, 0..=d)?;
    let ms = window.multidegrees(d, bundle.k);
    let rows = map_slices(&ms, |m| {
        Ok(padded(
            cech_complex(&cover, bundle, m, window)?.cohomology_dims(),
            d,
        ))
    })?;
    let mut table =
        GradedDimensionTable::new(header("sheaf_cohomology", d, None, bundle, window), d);
    fill(&mut table, &ms, rows);
    Ok(table)
}

/// True iff the window contains the whole support of `H^*(P^d, Omega^p(k))`.
pub fn window_covers_support(bundle: FormBundle, window: Window) -> bool {
    window.bound() >= bundle.k.abs()
}

/// `H^i(V, Omega^p(k))` for `V = P^d \ P^j`.
pub fn cohomology_of_v(
    j: usize,
    bundle: FormBundle,
    d: usize,
    window: Window,
) -> Result<GradedDimensionTable> {
    check_d(d, bundle.p)?;
    check_j(j, d)?;
    let cover = standard_cover(d, j + 1..=d)?;
    let ms = window.multidegrees(d, bundle.k);
    let rows = map_slices(&ms, |m| {
        Ok(padded(
            cech_complex(&cover, bundle, m, window)?.cohomology_dims(),
            d,
        ))
    })?;
    let mut table =
        GradedDimensionTable::new(header("cohomology_of_v", d, Some(j), bundle, window), d);
    fill(&mut table, &ms, rows);
    Ok(table)
}

/// Local cohomology dimensions at one multidegree from the long exact
/// sequence `H^{i-1}(P^d) -> H^{i-1}(V) -> H^i_Z -> H^i(P^d) -> H^i(V)`.
fn local_dims_les(pair: &LocalPair, d: usize) -> Result<Vec<usize>> {
    let h_full = padded(pair.full.cohomology_dims(), d);
    let h_open = padded(pair.open.cohomology_dims(), d);
    let ranks: Vec<usize> = (0..=d)
        .map(|i| pair.restriction_rank(i))
        .collect::<Result<_>>()?;
    Ok((0..=d)
        .map(|i| {
            let coker_prev = if i == 0 {
                0
            } else {
                h_open[i - 1] - ranks[i - 1]
            };
            coker_prev + (h_full[i] - ranks[i])
        })
        .collect())
}

/// `H^i_{P^j}(P^d, Omega^p(k))` per multidegree, assembled from the long
/// exact sequence of the pair `(P^d, V)`.
pub fn local_cohomology(
    j: usize,
    bundle: FormBundle,
    d: usize,
    window: Window,
) -> Result<GradedDimensionTable> {
    check_d(d, bundle.p)?;
    check_j(j, d)?;
    let ms = window.multidegrees(d, bundle.k);
    let rows = map_slices(&ms, |m| {
        local_dims_les(&local_pair(j, bundle, m, window)?, d)
    })?;
    let mut table =
        GradedDimensionTable::new(header("local_cohomology", d, Some(j), bundle, window), d);
    fill(&mut table, &ms, rows);
    Ok(table)
}

/// Same quantity as [`local_cohomology`], computed as the cohomology of the
/// relative complex (mapping cone of the restriction) instead.
pub fn local_cohomology_via_cone(
    j: usize,
    bundle: FormBundle,
    d: usize,
    window: Window,
) -> Result<GradedDimensionTable> {
    check_d(d, bundle.p)?;
    check_j(j, d)?;
    let ms = window.multidegrees(d, bundle.k);
    let rows = map_slices(&ms, |m| {
        let pair = local_pair(j, bundle, m, window)?;
        let (cone, _) = relative_cone(&pair.full.complex, &pair.open.complex, &pair.restriction)?;
        Ok(padded(cone.cohomology_dims(), d))
    })?;
    let mut table =
        GradedDimensionTable::new(header("local_cohomology", d, Some(j), bundle, window), d);
    fill(&mut table, &ms, rows);
    Ok(table)
}

/// The reduced module `coker(H^{d-j-1}(P^d) -> H^{d-j-1}(V))`, recorded in
/// cohomological degree `d - j`.
pub fn tilde_h(
    j: usize,
    bundle: FormBundle,
    d: usize,
    window: Window,
) -> Result<GradedDimensionTable> {
    check_d(d, bundle.p)?;
    check_j(j, d)?;
    let top = d - j - 1;
    let ms = window.multidegrees(d, bundle.k);
    let rows = map_slices(&ms, |m| {
        let pair = local_pair(j, bundle, m, window)?;
        let h_open = pair.open.complex.cohomology_dim(top);
        Ok(h_open - pair.restriction_rank(top)?)
    })?;
    let mut table = GradedDimensionTable::new(header("tilde_h", d, Some(j), bundle, window), d);
    for (m, dim) in ms.iter().zip(rows) {
        table.insert(d - j, m.clone(), dim);
    }
    Ok(table)
}

/// The reduced module as `ker(H^{d-j}_{P^j}(P^d) -> H^{d-j}(P^d))`, with
/// local cohomology taken from the relative complex.
pub fn tilde_h_kernel(
    j: usize,
    bundle: FormBundle,
    d: usize,
    window: Window,
) -> Result<GradedDimensionTable> {
    check_d(d, bundle.p)?;
    check_j(j, d)?;
    let degree = d - j;
    let ms = window.multidegrees(d, bundle.k);
    let rows = map_slices(&ms, |m| {
        let pair = local_pair(j, bundle, m, window)?;
        let (cone, projection) =
            relative_cone(&pair.full.complex, &pair.open.complex, &pair.restriction)?;
        let target = projection_target(&pair)?;
        let h = cone.cohomology_dim(degree);
        Ok(h - projection.induced_rank(&cone, &target, degree)?)
    })?;
    let mut table = GradedDimensionTable::new(header("tilde_h", d, Some(j), bundle, window), d);
    for (m, dim) in ms.iter().zip(rows) {
        table.insert(degree, m.clone(), dim);
    }
    Ok(table)
}

/// The full Čech complex padded to the cone's length, matching the target
/// of the projection returned by [`relative_cone`].
fn projection_target(pair: &LocalPair) -> Result<crate::homology::ChainComplex> {
    let full = &pair.full.complex;
    let len = full.len().max(pair.open.complex.len() + 1);
    crate::homology::ChainComplex::new(
        (0..len).map(|n| full.dim(n)).collect(),
        (0..len.saturating_sub(1))
            .map(|n| full.differential(n))
            .collect(),
    )
}
