use bggcoh::bwb::bott_dims;
use bggcoh::cech::{
    cohomology_of_v, local_cohomology, local_cohomology_via_cone, sheaf_cohomology_pd, tilde_h,
    tilde_h_kernel, window_covers_support, FormBundle, Window,
};

fn w(b: i64) -> Window {
    Window::new(b).unwrap()
}

#[test]
fn cech_totals_match_bott_formula() {
    for d in 1..=3usize {
        let kmax = if d == 3 { 3 } else { 5 };
        for p in 0..=d {
            for k in -kmax..=kmax {
                let bundle = FormBundle::new(p, k);
                let window = w(k.abs().max(1));
                assert!(window_covers_support(bundle, window));
                let table = sheaf_cohomology_pd(bundle, d, window).unwrap();
                let expected: Vec<usize> = bott_dims(p, k, d)
                    .unwrap()
                    .dims()
                    .iter()
                    .map(|&x| x as usize)
                    .collect();
                assert_eq!(table.totals(), expected, "d={d} p={p} k={k}");
            }
        }
    }
}

#[test]
fn local_cohomology_vanishes_below_the_codimension() {
    let window = w(4);
    for d in 1..=2usize {
        for j in 0..d {
            for p in 0..=d {
                let bundle = FormBundle::forms(p);
                let local = local_cohomology(j, bundle, d, window).unwrap();
                let global = sheaf_cohomology_pd(bundle, d, window).unwrap();
                for (i, m, dim) in local.nonzero_entries() {
                    assert!(i >= d - j, "H^{i}_Z nonzero at {m}, d={d} j={j} p={p}");
                    if i > d - j {
                        assert_eq!(dim, global.dim(i, m));
                    }
                }
                for (i, m, dim) in global.nonzero_entries() {
                    if i > d - j {
                        assert_eq!(local.dim(i, m), dim);
                    }
                }
            }
        }
    }
}

#[test]
fn open_complement_agrees_with_projective_space_in_low_degrees() {
    let window = w(4);
    for d in 1..=3usize {
        for j in 0..d {
            let bundle = FormBundle::forms(0);
            let v = cohomology_of_v(j, bundle, d, window).unwrap();
            let p = sheaf_cohomology_pd(bundle, d, window).unwrap();
            for m in window.multidegrees(d, 0) {
                for i in 0..(d - j - 1) {
                    assert_eq!(v.dim(i, &m), p.dim(i, &m), "d={d} j={j} i={i} at {m}");
                }
            }
        }
    }
}

#[test]
fn independent_routes_agree() {
    let window = w(3);
    for d in 1..=3usize {
        for j in 0..d {
            for p in [0, d] {
                let b = FormBundle::forms(p);
                assert_eq!(
                    local_cohomology(j, b, d, window).unwrap(),
                    local_cohomology_via_cone(j, b, d, window).unwrap()
                );
                assert_eq!(
                    tilde_h(j, b, d, window).unwrap(),
                    tilde_h_kernel(j, b, d, window).unwrap()
                );
            }
        }
    }
}

#[test]
fn tables_are_deterministic() {
    let a = local_cohomology(0, FormBundle::forms(1), 2, w(4)).unwrap();
    let b = local_cohomology(0, FormBundle::forms(1), 2, w(4)).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
}
