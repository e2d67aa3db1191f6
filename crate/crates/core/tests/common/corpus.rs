//! Random filtered complexes with known cohomology.
//!
//! Each complex starts as a direct sum of pieces `e -> f` (acyclic) and lone
//! vectors (one class each), with levels chosen so the differential never
//! lowers the level. A random unipotent, filtration-preserving change of
//! basis is then applied in every degree.

use bggcoh::exactla::{q, SparseMatrixQ};
use bggcoh::homology::{ChainComplex, FilteredComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sample {
    pub filtered: FilteredComplex,
    pub cohomology: Vec<usize>,
}

/// `I + N` with `N` strictly lower triangular in the (level, index) order
/// and never lowering the level.
fn unipotent(levels: &[i64], rng: &mut ChaCha8Rng) -> (SparseMatrixQ, SparseMatrixQ) {
    let n = levels.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (levels[i], i));
    let mut triplets = Vec::new();
    for (a, &col) in order.iter().enumerate() {
        for &row in &order[a + 1..] {
            if rng.gen_bool(0.4) {
                triplets.push((row, col, q(rng.gen_range(-2..=2))));
            }
        }
    }
    let nil = SparseMatrixQ::from_triplets(n, n, triplets).unwrap();
    let id = SparseMatrixQ::identity(n);
    // (I + N)^{-1} = sum (-N)^k, finite because N is nilpotent
    let minus = nil.scale(&q(-1));
    let mut inverse = id.clone();
    let mut power = id.clone();
    for _ in 0..n {
        power = power.mul(&minus).unwrap();
        inverse = inverse.add(&power).unwrap();
    }
    (id.add(&nil).unwrap(), inverse)
}

pub fn sample(seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(2..=4);
    let mut levels: Vec<Vec<i64>> = vec![Vec::new(); len];
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut cohomology = vec![0; len];
    for _ in 0..rng.gen_range(2..=7) {
        let n = rng.gen_range(0..len);
        let level = rng.gen_range(0..=3);
        if n + 1 < len && rng.gen_bool(0.6) {
            let target_level = level + rng.gen_range(0..=2);
            edges.push((n, levels[n].len(), levels[n + 1].len()));
            levels[n].push(level);
            levels[n + 1].push(target_level);
        } else {
            levels[n].push(level);
            cohomology[n] += 1;
        }
    }
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut differentials: Vec<SparseMatrixQ> = (0..len - 1)
        .map(|n| {
            let t = edges
                .iter()
                .filter(|e| e.0 == n)
                .map(|&(_, s, t)| (t, s, q(1)));
            SparseMatrixQ::from_triplets(dims[n + 1], dims[n], t).unwrap()
        })
        .collect();
    let changes: Vec<_> = levels.iter().map(|l| unipotent(l, &mut rng)).collect();
    for (n, d) in differentials.iter_mut().enumerate() {
        *d = changes[n + 1].0.mul(d).unwrap().mul(&changes[n].1).unwrap();
    }
    let complex = ChainComplex::new(dims, differentials).unwrap();
    Sample {
        filtered: FilteredComplex::new(complex, levels).unwrap(),
        cohomology,
    }
}
