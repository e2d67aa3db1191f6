//! Finite-field size analogs: flag varieties of GL(n) over F_q and the
//! dimensions of generalized Steinberg representations, as polynomials in q.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weights::{is_dominant, weyl_dim, Weight};
use crate::SCHEMA;

/// Ordered parts summing to `n = d + 1`; a standard parabolic of GL(n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.iter().sum::<usize>() != n {
            return Err(Error::InvalidComposition { parts, n });
        }
        Ok(Self { parts })
    }

    /// `(n)`, the whole group.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(vec![n], n)
    }

    /// `(1, ..., 1)`, the Borel subgroup.
    pub fn borel(n: usize) -> Result<Self> {
        Self::new(vec![1; n], n)
    }

    /// `(d + 1 - i, 1, ..., 1)`.
    pub fn hook(d: usize, i: usize) -> Result<Self> {
        if i > d {
            return Err(Error::InvalidComposition {
                parts: vec![],
                n: d + 1,
            });
        }
        let mut parts = vec![d + 1 - i];
        parts.extend(std::iter::repeat_n(1, i));
        Self::new(parts, d + 1)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `P_(3,1,1)`.
    pub fn label(&self) -> String {
        let p: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        format!("P_({})", p.join(","))
    }

    /// All compositions obtained by merging adjacent parts, `self` included.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let cuts = self.parts.len() - 1;
        let mut out = Vec::with_capacity(1 << cuts);
        for keep in 0u32..(1 << cuts) {
            let mut parts = Vec::new();
            let mut acc = 0;
            for (i, &p) in self.parts.iter().enumerate() {
                acc += p;
                if i == cuts || keep & (1 << i) != 0 {
                    parts.push(acc);
                    acc = 0;
                }
            }
            out.push(Composition { parts });
        }
        out.sort();
        out
    }

    /// Every composition of `n`.
    pub fn all(n: usize) -> Vec<Composition> {
        Self::borel(n).map(|b| b.coarsenings()).unwrap_or_default()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Integer polynomial in `q`; `coeffs[k]` multiplies `q^k`. No trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<i64>,
}

impl QPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                a.checked_add(other.coeffs.get(i).copied().unwrap_or(0))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(*b).ok_or(Error::Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Shifts by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn eval(&self, q: i64) -> Result<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(q as i128)
                .and_then(|a| a.checked_add(c as i128))
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

fn gaussian_cache() -> &'static RwLock<HashMap<(usize, usize), QPolynomial>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), QPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Gaussian binomial `[n choose k]_q`, from `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<QPolynomial> {
    if k > n {
        return Ok(QPolynomial::zero());
    }
    if k == 0 || k == n {
        return Ok(QPolynomial::one());
    }
    if let Some(p) = gaussian_cache().read().expect("cache lock").get(&(n, k)) {
        return Ok(p.clone());
    }
    let value = gaussian_binomial(n - 1, k - 1)?.add(&gaussian_binomial(n - 1, k)?.shift(k))?;
    gaussian_cache()
        .write()
        .expect("cache lock")
        .insert((n, k), value.clone());
    Ok(value)
}

/// `#(GL_n / P_c)(F_q)`, the q-multinomial coefficient of `c`.
pub fn flag_count(c: &Composition) -> Result<QPolynomial> {
    let mut remaining = c.n();
    let mut acc = QPolynomial::one();
    for &part in c.parts() {
        acc = acc.mul(&gaussian_binomial(remaining, part)?)?;
        remaining -= part;
    }
    Ok(acc)
}

/// Dimension of the generalized Steinberg representation of GL_n(F_q)
/// attached to `c`, by inclusion-exclusion over the parabolics containing
/// `P_c`.
pub fn gen_steinberg_dim(c: &Composition) -> Result<QPolynomial> {
    let mut acc = QPolynomial::zero();
    for coarse in c.coarsenings() {
        let term = flag_count(&coarse)?;
        let sign = if (c.len() - coarse.len()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        acc = acc.add(&term.scale(sign)?)?;
    }
    Ok(acc)
}

/// One row `i` of the table: degree `i`, parabolic `(d+1-i, 1, ..., 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinbergRow {
    pub degree: usize,
    #[serde(serialize_with = "serialize_label")]
    pub parabolic: Composition,
    pub dim_v_lambda: u64,
    pub q_dim: QPolynomial,
}

fn serialize_label<S: Serializer>(c: &Composition, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.label())
}

/// Degree-wise cohomology of the twisted de Rham complex, with the
/// p-adic generalized Steinberg representations replaced by their
/// GL_{d+1}(F_q) counterparts. Only sizes are recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinbergTable {
    pub lambda: Weight,
    pub d: usize,
    pub rows: Vec<SteinbergRow>,
}

pub const ANALOG: &str = "finite-field";

pub fn cohomology_table(lambda: &Weight) -> Result<SteinbergTable> {
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let d = lambda.d();
    let dim = weyl_dim(lambda)?;
    let rows = (0..=d)
        .map(|i| {
            let parabolic = Composition::hook(d, i)?;
            let q_dim = gen_steinberg_dim(&parabolic)?;
            Ok(SteinbergRow {
                degree: i,
                parabolic,
                dim_v_lambda: dim,
                q_dim,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SteinbergTable {
        lambda: lambda.clone(),
        d,
        rows,
    })
}

impl SteinbergTable {
    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "degree": r.degree,
                    "parabolic": r.parabolic.label(),
                    "parts": r.parabolic.parts(),
                    "dim_v_lambda": r.dim_v_lambda,
                    "q_dim": r.q_dim.to_string(),
                    "q_dim_coefficients": r.q_dim.coeffs(),
                })
            })
            .collect();
        let value = serde_json::json!({
            "schema": SCHEMA,
            "kind": "steinberg_table",
            "analog": ANALOG,
            "d": self.d,
            "lambda": self.lambda.entries(),
            "rows": rows,
        });
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!(
            "# schema={SCHEMA},kind=steinberg_table,analog={ANALOG},d={},lambda={}\n",
            self.d, self.lambda
        );
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record([
            "degree",
            "parabolic",
            "dim_v_lambda",
            "q_dim",
            "q_dim_coefficients",
        ])?;
        for r in &self.rows {
            let coeffs: Vec<String> = r.q_dim.coeffs().iter().map(ToString::to_string).collect();
            writer.write_record([
                r.degree.to_string(),
                r.parabolic.label(),
                r.dim_v_lambda.to_string(),
                r.q_dim.to_string(),
                coeffs.join(";"),
            ])?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Serialization(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "lambda={} d={} (sizes are the {ANALOG} analog)\n",
            self.lambda, self.d
        );
        let width = self
            .rows
            .iter()
            .map(|r| r.parabolic.label().len())
            .max()
            .unwrap_or(0);
        for r in &self.rows {
            out.push_str(&format!(
                "  H^{}: {:<width$}  dim V(lambda) = {}  q-dim = {}\n",
                r.degree,
                r.parabolic.label(),
                r.dim_v_lambda,
                r.q_dim
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec(), parts.iter().sum()).unwrap()
    }

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(c.to_vec())
    }

    #[test]
    fn flag_count_examples() {
        assert_eq!(flag_count(&comp(&[2])).unwrap(), poly(&[1]));
        assert_eq!(flag_count(&comp(&[1, 1])).unwrap(), poly(&[1, 1]));
        assert_eq!(flag_count(&comp(&[2, 1])).unwrap(), poly(&[1, 1, 1]));
    }

    #[test]
    fn gen_steinberg_examples() {
        assert_eq!(gen_steinberg_dim(&comp(&[3])).unwrap(), poly(&[1]));
        assert_eq!(gen_steinberg_dim(&comp(&[1, 1])).unwrap(), poly(&[0, 1]));
        assert_eq!(
            gen_steinberg_dim(&comp(&[1, 1, 1])).unwrap(),
            poly(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn coarsenings_merge_adjacent_parts() {
        let c = comp(&[1, 2, 1]).coarsenings();
        assert_eq!(
            c,
            vec![comp(&[1, 2, 1]), comp(&[1, 3]), comp(&[3, 1]), comp(&[4])]
        );
        assert_eq!(Composition::all(4).len(), 8);
    }

    #[test]
    fn invalid_compositions() {
        assert!(Composition::new(vec![2, 0, 1], 3).is_err());
        assert!(Composition::new(vec![2, 2], 3).is_err());
        assert!(Composition::new(vec![], 0).is_err());
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(poly(&[0, 1, 1]).to_string(), "q^2 + q");
        assert_eq!(poly(&[1, -2, 0, 1]).to_string(), "q^3 - 2q + 1");
        assert_eq!(poly(&[-1]).to_string(), "-1");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn tables() {
        let t = cohomology_table(&Weight::zero(2).unwrap()).unwrap();
        let dims: Vec<String> = t.rows.iter().map(|r| r.q_dim.to_string()).collect();
        assert_eq!(dims, vec!["1", "q"]);
        let t = cohomology_table(&Weight::zero(3).unwrap()).unwrap();
        let dims: Vec<String> = t.rows.iter().map(|r| r.q_dim.to_string()).collect();
        assert_eq!(dims, vec!["1", "q^2 + q", "q^3"]);
        let labels: Vec<String> = t.rows.iter().map(|r| r.parabolic.label()).collect();
        assert_eq!(labels, vec!["P_(3)", "P_(2,1)", "P_(1,1,1)"]);
        let t = cohomology_table(&Weight::new(vec![1, 0, 0]).unwrap()).unwrap();
        assert!(t.rows.iter().all(|r| r.dim_v_lambda == 3));
        assert!(cohomology_table(&Weight::new(vec![0, 1, 0]).unwrap()).is_err());
    }

    #[test]
    fn serialized_tables_carry_the_analog_flag() {
        let t = cohomology_table(&Weight::zero(3).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(v["analog"], "finite-field");
        assert_eq!(v["schema"], "bggcoh/1");
        assert_eq!(
            v["rows"][1]["q_dim_coefficients"],
            serde_json::json!([0, 1, 1])
        );
        let csv = t.to_csv().unwrap();
        assert!(csv.lines().next().unwrap().contains("analog=finite-field"));
        assert!(csv.contains("\"P_(2,1)\""));
    }
}
