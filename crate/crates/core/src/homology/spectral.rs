//! Spectral sequence of a filtered cochain complex, computed from explicit
//! subspaces.
//!
//! Filtrations are basis-adapted: every basis vector of `C^n` carries a level
//! and `F^s C^n` is spanned by the vectors of level `>= s`. With
//! `Z_r^s = {x in F^s : dx in F^{s+r}}` (and `Z_{-1}^s = F^s`) the pages are
//! `E_r^s = Z_r^s / (Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1})`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, span_rank, SparseMatrixQ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: ChainComplex,
    levels: Vec<Vec<i64>>,
}

impl FilteredComplex {
    pub fn new(complex: ChainComplex, levels: Vec<Vec<i64>>) -> Result<Self> {
        if levels.len() != complex.len()
            || levels
                .iter()
                .enumerate()
                .any(|(n, l)| l.len() != complex.dim(n))
        {
            return Err(Error::NotSubcomplex(
                "one level per basis vector is required".into(),
            ));
        }
        for (n, d) in complex.differentials().iter().enumerate() {
            for (r, c, _) in d.entries() {
                if levels[n + 1][*r] < levels[n][*c] {
                    return Err(Error::NotSubcomplex(format!(
                        "d^{n} sends a level-{} vector to level {}",
                        levels[n][*c],
                        levels[n + 1][*r]
                    )));
                }
            }
        }
        Ok(Self { complex, levels })
    }

    /// The one-step filtration `F^0 = C`, `F^1 = 0`.
    pub fn trivial(complex: ChainComplex) -> Self {
        let levels = complex.dims().iter().map(|&d| vec![0; d]).collect();
        Self { complex, levels }
    }

    /// The stupid filtration `F^s = C^{>= s}`.
    pub fn stupid(complex: ChainComplex) -> Self {
        let levels = complex
            .dims()
            .iter()
            .enumerate()
            .map(|(n, &d)| vec![n as i64; d])
            .collect();
        Self { complex, levels }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    fn level_range(&self) -> Option<(i64, i64)> {
        let all = self.levels.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }

    fn indices_in(&self, n: usize, lo: i64, hi: Option<i64>) -> Vec<usize> {
        self.levels
            .get(n)
            .map(|l| {
                l.iter()
                    .enumerate()
                    .filter(|(_, &v)| v >= lo && hi.is_none_or(|h| v < h))
                    .map(|(i, _)| i)
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Column generators (in `C^n` coordinates) of `Z_r^{s,n}`.
    fn z(&self, r: i64, s: i64, n: usize) -> SparseMatrixQ {
        let dim = self.complex.dim(n);
        let fs = self.indices_in(n, s, None);
        let inclusion = SparseMatrixQ::from_triplets(
            dim,
            fs.len(),
            fs.iter()
                .enumerate()
                .map(|(k, &i)| (i, k, crate::exactla::q(1))),
        )
        .expect("in range");
        if r <= 0 {
            return inclusion;
        }
        let rows = self.indices_in(n + 1, s, Some(s + r));
        let restricted = self
            .complex
            .differential(n)
            .select_rows(&rows)
            .mul(&inclusion)
            .expect("shapes agree");
        let kernel = kernel_basis(&restricted);
        inclusion.mul(&kernel.basis).expect("shapes agree")
    }

    /// `(dim E_r^{s,n}, rank of d_r leaving it)`.
    fn page_entry(&self, r: i64, s: i64, n: usize) -> Result<(usize, usize)> {
        let dim = self.complex.dim(n);
        let z = self.z(r, s, n);
        let z_next = self.z(r - 1, s + 1, n);
        let boundary = if n == 0 {
            SparseMatrixQ::zeros(dim, 0)
        } else {
            self.complex
                .differential(n - 1)
                .mul(&self.z(r - 1, s - r + 1, n - 1))?
        };
        let denominator = span_rank(dim, &[&z_next, &boundary])?;
        // ker d_r = (Z_{r+1}^s + D) / D, with D the denominator
        let kernel = span_rank(dim, &[&self.z(r + 1, s, n), &z_next, &boundary])?;
        Ok((rank(&z) - denominator, rank(&z) - kernel))
    }
}

/// Dimensions of one page, keyed by `(p, q)` with `p` the filtration degree
/// and `p + q` the total degree. Zero entries are omitted.
///
/// `differential_ranks[(p, q)]` is the rank of `d_r : E_r^{p,q} -> E_r^{p+r,q-r+1}`
/// when the page came out of [`spectral_sequence`]; pages assembled by hand
/// leave it empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralPage {
    pub r: usize,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(i64, i64), usize>,
    #[serde(serialize_with = "serialize_entries")]
    pub differential_ranks: BTreeMap<(i64, i64), usize>,
}

#[derive(Serialize)]
struct PageCell {
    p: i64,
    q: i64,
    dim: usize,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(i64, i64), usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(entries.len()))?;
    for (&(p, q), &dim) in entries {
        seq.serialize_element(&PageCell { p, q, dim })?;
    }
    seq.end()
}

impl SpectralPage {
    pub fn new(r: usize) -> Self {
        Self {
            r,
            entries: BTreeMap::new(),
            differential_ranks: BTreeMap::new(),
        }
    }

    pub fn get(&self, p: i64, q: i64) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, p: i64, q: i64, dim: usize) {
        if dim > 0 {
            *self.entries.entry((p, q)).or_insert(0) += dim;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn differential_rank(&self, p: i64, q: i64) -> usize {
        self.differential_ranks.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Dimensions of `H(E_r, d_r)`, from the recorded ranks.
    pub fn next_page_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let r = self.r as i64;
        let mut out = BTreeMap::new();
        for (&(p, q), &v) in &self.entries {
            let incoming = self.differential_rank(p - r, q + r - 1);
            let h = v - self.differential_rank(p, q) - incoming;
            if h > 0 {
                out.insert((p, q), h);
            }
        }
        out
    }

    /// `sum_{p+q=n} dim E^{p,q}`.
    pub fn total_degree_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(p, q), &v) in &self.entries {
            *out.entry(p + q).or_insert(0) += v;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|(&(p, q), &v)| {
                if (p + q).rem_euclid(2) == 0 {
                    v as i64
                } else {
                    -(v as i64)
                }
            })
            .sum()
    }

    /// JSON rows `(p, q, r, dim)`.
    pub fn to_json_rows(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(&(p, q), &dim)| serde_json::json!({ "p": p, "q": q, "r": self.r, "dim": dim }))
                .collect(),
        )
    }

    /// Plain-text grid with `q` increasing upwards and `p` to the right.
    pub fn render_grid(&self) -> String {
        if self.entries.is_empty() {
            return format!("E_{}: (empty)\n", self.r);
        }
        let ps: Vec<i64> = self.entries.keys().map(|k| k.0).collect();
        let qs: Vec<i64> = self.entries.keys().map(|k| k.1).collect();
        let (p0, p1) = (*ps.iter().min().unwrap(), *ps.iter().max().unwrap());
        let (q0, q1) = (*qs.iter().min().unwrap(), *qs.iter().max().unwrap());
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2);
        let mut out = format!("E_{}:\n", self.r);
        for q in (q0..=q1).rev() {
            out.push_str(&format!("{q:>4} |"));
            for p in p0..=p1 {
                let v = self.get(p, q);
                let cell = if v == 0 {
                    ".".to_string()
                } else {
                    v.to_string()
                };
                out.push_str(&format!(" {cell:>width$}"));
            }
            out.push('\n');
        }
        out.push_str("     +");
        out.push_str(&"-".repeat((p1 - p0 + 1) as usize * (width + 1)));
        out.push_str("\n      ");
        for p in p0..=p1 {
            out.push_str(&format!("{p:>width$} "));
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralSequence {
    /// `E_0, E_1, ...` up to the first page past which every differential is
    /// forced to vanish.
    pub pages: Vec<SpectralPage>,
    /// First `r` with `E_r = E_infinity`.
    pub degeneration_page: usize,
    /// `dim H^n` of the underlying complex.
    pub cohomology: Vec<usize>,
}

impl SpectralSequence {
    pub fn infinity(&self) -> &SpectralPage {
        self.pages.last().expect("at least one page")
    }

    /// `E_r` for any `r`; pages past the last stored one equal `E_infinity`.
    pub fn page(&self, r: usize) -> SpectralPage {
        match self.pages.get(r) {
            Some(p) => p.clone(),
            None => SpectralPage {
                r,
                entries: self.infinity().entries.clone(),
                differential_ranks: BTreeMap::new(),
            },
        }
    }
}

pub fn spectral_sequence(fc: &FilteredComplex) -> Result<SpectralSequence> {
    let cohomology = fc.complex.cohomology_dims();
    let Some((lo, hi)) = fc.level_range() else {
        return Ok(SpectralSequence {
            pages: vec![SpectralPage::new(0)],
            degeneration_page: 0,
            cohomology,
        });
    };
    let last = (hi - lo + 1) as usize;
    let mut pages = Vec::with_capacity(last + 1);
    for r in 0..=last {
        let mut page = SpectralPage::new(r);
        for n in 0..fc.complex.len() {
            for s in lo..=hi {
                let (dim, out_rank) = fc.page_entry(r as i64, s, n)?;
                page.add(s, n as i64 - s, dim);
                if out_rank > 0 {
                    page.differential_ranks.insert((s, n as i64 - s), out_rank);
                }
            }
        }
        pages.push(page);
    }
    debug_assert!(pages
        .windows(2)
        .all(|w| w[0].next_page_dims() == w[1].entries));
    let limit = pages.last().expect("nonempty").entries.clone();
    let degeneration_page = pages
        .iter()
        .position(|p| p.entries == limit)
        .expect("last page matches");
    Ok(SpectralSequence {
        pages,
        degeneration_page,
        cohomology,
    })
}
