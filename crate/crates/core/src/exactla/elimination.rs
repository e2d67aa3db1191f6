//! Rank and row reduction.
//!
//! The fraction-free routines clear denominators row by row and then work in
//! arbitrary-precision integers. The sparse variant removes the row content
//! after every update; the dense variant is classical Bareiss with exact
//! division by the previous pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{SparseMatrixQ, Q};

/// Scales a rational row to a primitive integer row.
fn integer_row(row: &[(usize, Q)]) -> Vec<(usize, BigInt)> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

fn entry_at(row: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `a * target - b * pivot`, merged over sorted column lists.
fn combine(
    target: &[(usize, BigInt)],
    pivot: &[(usize, BigInt)],
    a: &BigInt,
    b: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let next = match (target.get(i), pivot.get(j)) {
            (Some((ct, vt)), Some((cp, vp))) if ct == cp => {
                i += 1;
                j += 1;
                (*ct, a * vt - b * vp)
            }
            (Some((ct, vt)), Some((cp, _))) if ct < cp => {
                i += 1;
                (*ct, a * vt)
            }
            (Some((ct, vt)), None) => {
                i += 1;
                (*ct, a * vt)
            }
            (_, Some((cp, vp))) => {
                j += 1;
                (*cp, -(b * vp))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Fraction-free sparse elimination.
///
/// Pivot rule: the column with the fewest nonzeros among the active rows,
/// then the row whose entry in that column has the smallest magnitude; ties
/// go to the lower index.
pub fn rank_sparse_fraction_free(m: &SparseMatrixQ) -> usize {
    let mut active: Vec<Option<Vec<(usize, BigInt)>>> = m
        .row_lists()
        .iter()
        .map(|r| {
            if r.is_empty() {
                None
            } else {
                Some(integer_row(r))
            }
        })
        .collect();
    let mut counts = vec![0usize; m.cols()];
    let mut rank = 0;
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for row in active.iter().flatten() {
            for (c, _) in row {
                counts[*c] += 1;
            }
        }
        let Some(col) = (0..m.cols())
            .filter(|&c| counts[c] > 0)
            .min_by_key(|&c| (counts[c], c))
        else {
            break;
        };
        let pivot_idx = active
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.as_ref()
                    .and_then(|r| entry_at(r, col))
                    .map(|v| (i, v.abs()))
            })
            .min_by(|(ia, va), (ib, vb)| va.cmp(vb).then(ia.cmp(ib)))
            .map(|(i, _)| i)
            .expect("column count is positive");
        let pivot = active[pivot_idx].take().expect("pivot row is active");
        let a = entry_at(&pivot, col).expect("pivot entry").clone();
        rank += 1;
        for slot in active.iter_mut() {
            let Some(row) = slot.as_ref() else { continue };
            let Some(b) = entry_at(row, col) else {
                continue;
            };
            let g = a.gcd(b);
            let (fa, fb) = (&a / &g, b / &g);
            let updated = make_primitive(combine(row, &pivot, &fa, &fb));
            *slot = if updated.is_empty() {
                None
            } else {
                Some(updated)
            };
        }
    }
    rank
}

/// Dense Bareiss elimination over the integers.
pub fn rank_dense_bareiss(m: &SparseMatrixQ) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .row_lists()
        .iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); m.cols()];
            for (c, v) in integer_row(r) {
                dense[c] = v;
            }
            dense
        })
        .collect();
    let rows = a.len();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)))
        else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over the rationals, by plain Gauss-Jordan.
///
/// Returns the reduced rows and the pivot column of each nonzero row.
pub fn rref(m: &SparseMatrixQ) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut a = m.to_dense();
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank_rational(m: &SparseMatrixQ) -> usize {
    rref(m).1.len()
}
