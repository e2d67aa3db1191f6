//! Weights of the diagonal torus of GL(d+1), the symmetric group acting on
//! them, and dimensions of irreducible representations.
//!
//! Convention: a permutation `w` acts on positions, `(w chi)_i = chi_{w^-1(i)}`.
//! The shift `rho` is the integral vector `(d, d-1, ..., 0)`; it differs from
//! the half sum of positive roots by a multiple of `(1, ..., 1)`, which the
//! dot action does not see.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_RANK {
            return Err(Error::UnsupportedRank(entries.len()));
        }
        Ok(Self(entries))
    }

    pub fn zero(rank: usize) -> Result<Self> {
        Self::new(vec![0; rank])
    }

    /// Unit vector `e_i` (zero-based position).
    pub fn unit(rank: usize, i: usize) -> Result<Self> {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self::new(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `d` for a weight of GL(d+1).
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// True iff some entry repeats.
    pub fn has_repeated_entry(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;

    /// Parses a comma-separated integer list such as `-1,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = trimmed
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Serialization(format!("bad weight {s:?}: {e}")))?;
        Self::new(entries)
    }
}

/// An element of the symmetric group S_{d+1}, stored zero-based:
/// `perm[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidPermutation(perm));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            perm: (0..rank).collect(),
        }
    }

    /// The cycle `(1 2 ... len)` in one-based notation, i.e. `i -> i+1` for
    /// `i < len` and `len -> 1`.
    pub fn cycle_prefix(rank: usize, len: usize) -> Self {
        let mut perm: Vec<usize> = (0..rank).collect();
        if len >= 2 {
            for (i, p) in perm.iter_mut().enumerate().take(len) {
                *p = (i + 1) % len;
            }
        }
        Self { perm }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(Self {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        })
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.perm.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.perm[i] > self.perm[j])
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Linear action `(w chi)_i = chi_{w^-1(i)}`.
    pub fn act(&self, chi: &Weight) -> Result<Weight> {
        if self.rank() != chi.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: chi.rank(),
            });
        }
        let mut out = vec![0; chi.rank()];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = chi.0[i];
        }
        Ok(Weight(out))
    }

    /// Cycle notation, one-based, e.g. `(1 2 3)`; the identity prints as `id`.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.perm.len()];
        let mut cycles = Vec::new();
        for start in 0..self.perm.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.perm[i];
            }
            cycles.push(format!("({})", cycle.join(" ")));
        }
        if cycles.is_empty() {
            "id".into()
        } else {
            cycles.concat()
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// The integral shift `(d, d-1, ..., 1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoShift {
    rho: Weight,
}

impl RhoShift {
    pub fn new(rank: usize) -> Result<Self> {
        let rho = Weight::new((0..rank as i64).rev().collect())?;
        Ok(Self { rho })
    }

    pub fn weight(&self) -> &Weight {
        &self.rho
    }
}

/// `w . chi = w(chi + rho) - rho`.
pub fn dot_action(w: &WeylElement, chi: &Weight) -> Result<Weight> {
    let rho = RhoShift::new(chi.rank())?;
    dot_action_with_shift(w, chi, rho.weight())
}

/// Dot action with an arbitrary shift vector; used to check that shifting
/// rho by a multiple of `(1, ..., 1)` changes nothing.
pub fn dot_action_with_shift(w: &WeylElement, chi: &Weight, shift: &Weight) -> Result<Weight> {
    w.act(&chi.add(shift)?)?.sub(shift)
}

pub fn is_dominant(lambda: &Weight) -> bool {
    lambda.0.windows(2).all(|w| w[0] >= w[1])
}

/// Dominance for the Levi factor of P_(1,d): positions 2..d+1 weakly
/// decreasing, position 1 free.
pub fn is_l_dominant(lambda: &Weight) -> bool {
    lambda.0[1..].windows(2).all(|w| w[0] >= w[1])
}

/// Minimal-length coset representatives `w_i = (1 2 ... i+1)`, `i = 0..=d`.
pub fn bgg_coset_reps(d: usize) -> Vec<WeylElement> {
    (0..=d)
        .map(|i| WeylElement::cycle_prefix(d + 1, i + 1))
        .collect()
}

fn weyl_dim_cache() -> &'static RwLock<HashMap<Weight, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<Weight, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Dimension of the irreducible GL(d+1)-representation of highest weight
/// `lambda`, by the Weyl dimension formula. Results are memoised.
pub fn weyl_dim(lambda: &Weight) -> Result<u64> {
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if let Some(&v) = weyl_dim_cache().read().expect("cache poisoned").get(lambda) {
        return Ok(v);
    }
    let n = lambda.rank();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= lambda.0[i] - lambda.0[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let dim = (num / den).to_u64().ok_or(Error::Overflow)?;
    weyl_dim_cache()
        .write()
        .expect("cache poisoned")
        .insert(lambda.clone(), dim);
    Ok(dim)
}

/// Number of Gelfand-Tsetlin patterns with top row `lambda`.
///
/// Counted by walking down the interlacing rows; independent of the product
/// formula in [`weyl_dim`].
pub fn gt_pattern_count(lambda: &Weight) -> Result<u64> {
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    fn count(row: &[i64], memo: &mut HashMap<Vec<i64>, u64>) -> u64 {
        if row.len() <= 1 {
            return 1;
        }
        if let Some(&c) = memo.get(row) {
            return c;
        }
        let mut below = Vec::with_capacity(row.len() - 1);
        let total = descend(row, 0, &mut below, memo);
        memo.insert(row.to_vec(), total);
        total
    }
    fn descend(
        row: &[i64],
        i: usize,
        below: &mut Vec<i64>,
        memo: &mut HashMap<Vec<i64>, u64>,
    ) -> u64 {
        if i + 1 == row.len() {
            return count(below, memo);
        }
        let mut total = 0;
        for v in row[i + 1]..=row[i] {
            below.push(v);
            total += descend(row, i + 1, below, memo);
            below.pop();
        }
        total
    }
    Ok(count(lambda.entries(), &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dot_action_examples() {
        let lambda = w(&[3, 1, 0]);
        assert_eq!(
            dot_action(&WeylElement::identity(3), &lambda).unwrap(),
            lambda
        );
        let s = WeylElement::cycle_prefix(2, 2);
        assert_eq!(dot_action(&s, &w(&[0, 0])).unwrap(), w(&[-1, 1]));
        let w2 = WeylElement::cycle_prefix(3, 3);
        assert_eq!(dot_action(&w2, &w(&[0, 0, 0])).unwrap(), w(&[-2, 1, 1]));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let err = dot_action(&WeylElement::identity(3), &w(&[0, 0])).unwrap_err();
        assert_eq!(
            err,
            Error::RankMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn dominance_examples() {
        assert!(is_dominant(&w(&[0, 0, 0])));
        assert!(is_dominant(&w(&[2, 1, 1])));
        assert!(!is_dominant(&w(&[-1, 1])));
        assert!(is_l_dominant(&w(&[-2, 1, 1])));
        assert!(!is_l_dominant(&w(&[0, 0, 1])));
        assert!(is_l_dominant(&w(&[5, 2, 2, -1])));
    }

    #[test]
    fn coset_reps() {
        let reps = bgg_coset_reps(1);
        assert_eq!(reps[0], WeylElement::identity(2));
        assert_eq!(reps[1].cycle_notation(), "(1 2)");
        let reps = bgg_coset_reps(2);
        let names: Vec<String> = reps.iter().map(|r| r.cycle_notation()).collect();
        assert_eq!(names, ["id", "(1 2)", "(1 2 3)"]);
        for d in 1..=6 {
            let lengths: Vec<usize> = bgg_coset_reps(d).iter().map(WeylElement::length).collect();
            assert_eq!(lengths, (0..=d).collect::<Vec<_>>());
        }
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(weyl_dim(&w(&[0, 0, 0, 0])).unwrap(), 1);
        assert_eq!(weyl_dim(&w(&[1, 0, 0])).unwrap(), 3);
        assert_eq!(weyl_dim(&w(&[2, 1, 0])).unwrap(), 8);
        assert!(matches!(weyl_dim(&w(&[0, 1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn gt_examples() {
        assert_eq!(gt_pattern_count(&w(&[0, 0])).unwrap(), 1);
        assert_eq!(gt_pattern_count(&w(&[1, 0])).unwrap(), 2);
        assert_eq!(gt_pattern_count(&w(&[2, 1, 0])).unwrap(), 8);
        assert!(gt_pattern_count(&w(&[0, 2, 1])).is_err());
    }

    #[test]
    fn parse_and_display() {
        let x: Weight = "-1,1,0".parse().unwrap();
        assert_eq!(x, w(&[-1, 1, 0]));
        assert_eq!(x.to_string(), "(-1,1,0)");
        assert!("1,,2".parse::<Weight>().is_err());
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(WeylElement::new(vec![0, 0, 1]).is_err());
        assert!(WeylElement::new(vec![0, 3, 1]).is_err());
    }
}
