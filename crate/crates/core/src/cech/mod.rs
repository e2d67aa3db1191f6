//! Čech cohomology of twisted differential forms on `P^d`, on the open
//! complement `V` of the linear subspace `P^j = V(T_{j+1}, ..., T_d)`, and
//! cohomology with supports in `P^j`, all graded by multidegree.

mod complex;
mod forms;
mod local;
mod table;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use complex::{cech_complex, standard_cover, CechComplex, CechTerm, FormBundle};
pub use forms::{EulerReducedSlice, FormSymbol, LaurentFormSlice, Multidegree, OpenSet, MAX_D};
pub use local::{
    cohomology_of_v, local_cohomology, local_cohomology_via_cone, local_pair, sheaf_cohomology_pd,
    tilde_h, tilde_h_kernel, window_covers_support, LocalPair,
};
pub use table::{GradedDimensionTable, TableHeader};

pub const MAX_WINDOW: i64 = 12;

/// The box `|m_i| <= bound` of multidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    bound: i64,
}

impl Default for Window {
    fn default() -> Self {
        Self { bound: 5 }
    }
}

impl Window {
    pub fn new(bound: i64) -> Result<Self> {
        if !(1..=MAX_WINDOW).contains(&bound) {
            return Err(Error::WindowExceeded(format!(
                "window bound {bound} outside 1..={MAX_WINDOW}"
            )));
        }
        Ok(Self { bound })
    }

    pub fn bound(self) -> i64 {
        self.bound
    }

    pub fn contains(self, m: &Multidegree) -> bool {
        m.max_abs() <= self.bound
    }

    pub fn check(self, m: &Multidegree) -> Result<()> {
        if self.contains(m) {
            Ok(())
        } else {
            Err(Error::WindowExceeded(format!(
                "multidegree {m} outside |m_i| <= {}",
                self.bound
            )))
        }
    }

    /// All multidegrees in the box with the given total degree, in
    /// lexicographic order.
    pub fn multidegrees(self, d: usize, total: i64) -> Vec<Multidegree> {
        let b = self.bound;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(d + 1);
        fn rec(
            pos: usize,
            d: usize,
            b: i64,
            remaining: i64,
            cur: &mut Vec<i64>,
            out: &mut Vec<Multidegree>,
        ) {
            if pos == d {
                if remaining.abs() <= b {
                    cur.push(remaining);
                    out.push(Multidegree(cur.clone()));
                    cur.pop();
                }
                return;
            }
            let left = (d - pos) as i64 * b;
            for v in -b..=b {
                if (remaining - v).abs() <= left {
                    cur.push(v);
                    rec(pos + 1, d, b, remaining - v, cur, out);
                    cur.pop();
                }
            }
        }
        rec(0, d, b, total, &mut current, &mut out);
        out
    }
}

/// Applies `f` to every multidegree, in parallel when the `parallel`
/// feature is on. Output order follows the input order.
pub(crate) fn map_slices<T, F>(items: &[Multidegree], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Multidegree) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_enumeration_counts() {
        let w = Window::new(2).unwrap();
        // pairs (a, -a) with |a| <= 2
        assert_eq!(w.multidegrees(1, 0).len(), 5);
        let all = w.multidegrees(2, 0);
        let brute = (-2..=2i64)
            .flat_map(|a| (-2..=2i64).map(move |b| (a, b)))
            .filter(|(a, b)| (a + b).abs() <= 2)
            .count();
        assert_eq!(all.len(), brute);
        assert!(all.iter().all(|m| m.total() == 0 && w.contains(m)));
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn window_bounds() {
        assert!(Window::new(0).is_err());
        assert!(Window::new(MAX_WINDOW + 1).is_err());
        assert!(Window::new(3)
            .unwrap()
            .check(&Multidegree(vec![4, -4]))
            .is_err());
    }
}
