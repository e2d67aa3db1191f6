use std::collections::HashSet;

use bggcoh::steinberg::{flag_count, gen_steinberg_dim, Composition, QPolynomial};

/// All subspaces of F_q^n, each as the sorted set of its vectors (encoded
/// base q).
fn subspaces(n: usize, q: u32) -> Vec<Vec<u32>> {
    let size = q.pow(n as u32);
    let add = |a: u32, b: u32| -> u32 {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..n {
            out += ((a % q + b % q) % q) * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    };
    let scale = |c: u32, a: u32| (0..c).fold(0, |acc, _| add(acc, a));
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut frontier = vec![vec![0u32]];
    seen.insert(vec![0]);
    while let Some(space) = frontier.pop() {
        for v in 0..size {
            if space.contains(&v) {
                continue;
            }
            let mut bigger: HashSet<u32> = space.iter().copied().collect();
            for &s in &space {
                for c in 1..q {
                    bigger.insert(add(s, scale(c, v)));
                }
            }
            let mut sorted: Vec<u32> = bigger.into_iter().collect();
            sorted.sort_unstable();
            if seen.insert(sorted.clone()) {
                frontier.push(sorted);
            }
        }
    }
    seen.into_iter().collect()
}

/// Number of flags `V_1 < V_2 < ...` with `dim V_i = c_1 + ... + c_i`.
fn brute_flag_count(c: &Composition, q: u32) -> u64 {
    let n = c.n();
    let all = subspaces(n, q);
    let dim = |s: &Vec<u32>| (s.len() as f64).log(q as f64).round() as usize;
    let mut dims = Vec::new();
    let mut acc = 0;
    for &p in &c.parts()[..c.len() - 1] {
        acc += p;
        dims.push(acc);
    }
    fn count(
        prefix: &[u32],
        dims: &[usize],
        all: &[Vec<u32>],
        dim: &dyn Fn(&Vec<u32>) -> usize,
    ) -> u64 {
        let Some((&first, rest)) = dims.split_first() else {
            return 1;
        };
        all.iter()
            .filter(|s| dim(s) == first && prefix.iter().all(|v| s.binary_search(v).is_ok()))
            .map(|s| count(s, rest, all, dim))
            .sum()
    }
    count(&[0], &dims, &all, &dim)
}

#[test]
fn flag_counts_match_brute_force_over_small_fields() {
    for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        for c in Composition::all(n) {
            let expected = brute_flag_count(&c, q);
            assert_eq!(
                flag_count(&c).unwrap().eval(q as i64).unwrap(),
                expected as i128,
                "{c} over F_{q}"
            );
        }
    }
}

/// `|GL_n(F_q)| / |P_c(F_q)|`.
fn group_order_ratio(c: &Composition, q: i128) -> i128 {
    let gl = |n: usize| {
        (0..n)
            .map(|i| q.pow(n as u32) - q.pow(i as u32))
            .product::<i128>()
    };
    let levi: i128 = c.parts().iter().map(|&p| gl(p)).product();
    let mut unipotent_dim = 0;
    for (i, &a) in c.parts().iter().enumerate() {
        for &b in &c.parts()[i + 1..] {
            unipotent_dim += a * b;
        }
    }
    gl(c.n()) / (levi * q.pow(unipotent_dim as u32))
}

#[test]
fn flag_counts_match_group_orders() {
    for n in 1..=6 {
        for c in Composition::all(n) {
            for q in [2, 3, 5] {
                assert_eq!(
                    flag_count(&c).unwrap().eval(q as i64).unwrap(),
                    group_order_ratio(&c, q),
                    "{c}"
                );
            }
        }
    }
}

#[test]
fn steinberg_of_the_borel_is_a_power_of_q() {
    for d in 0..=5 {
        let c = Composition::borel(d + 1).unwrap();
        assert_eq!(
            gen_steinberg_dim(&c).unwrap(),
            QPolynomial::monomial(1, d * (d + 1) / 2)
        );
    }
}

#[test]
fn mobius_round_trip_and_positivity() {
    for n in 1..=5 {
        for c in Composition::all(n) {
            let mut sum = QPolynomial::zero();
            for coarse in c.coarsenings() {
                sum = sum.add(&gen_steinberg_dim(&coarse).unwrap()).unwrap();
            }
            assert_eq!(sum, flag_count(&c).unwrap(), "{c}");
            assert!(
                gen_steinberg_dim(&c).unwrap().has_nonnegative_coeffs(),
                "{c}"
            );
        }
    }
}

#[test]
fn borel_flag_count_at_one_is_the_weyl_group_order() {
    for d in 0..=6 {
        let c = Composition::borel(d + 1).unwrap();
        let factorial: i128 = (1..=(d as i128 + 1)).product();
        assert_eq!(flag_count(&c).unwrap().eval(1).unwrap(), factorial);
    }
}
