use bggcoh_web::{bgg_complex_json, local_cohomology_json, steinberg_table_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn bgg_terms() {
    let v = parse(bgg_complex_json("0,0,0").unwrap());
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["delta_property"], true);
    assert!(bgg_complex_json("0,1,0")
        .unwrap_err()
        .contains("not dominant"));
    assert!(bgg_complex_json("1,x").is_err());
}

#[test]
fn steinberg_rows() {
    let v = parse(steinberg_table_json("0,0,0").unwrap());
    let q: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["q_dim"].as_str().unwrap())
        .collect();
    assert_eq!(q, ["1", "q^2 + q", "q^3"]);
    assert!(steinberg_table_json("0,0,0,0,0,0,0,0").is_err());
}

#[test]
fn local_heatmap_slice() {
    let v = parse(local_cohomology_json(2, 0, 0, 0, 3, false).unwrap());
    // the point has codimension 2: everything sits in degree 2
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["coh_degree"] == 2));
    let reduced = parse(local_cohomology_json(2, 1, 1, 0, 3, true).unwrap());
    assert_eq!(reduced["kind"], "tilde_h");
    assert!(local_cohomology_json(4, 0, 0, 0, 3, false).is_err());
    assert!(local_cohomology_json(2, 2, 0, 0, 3, false).is_err());
    assert!(local_cohomology_json(2, 0, 0, 0, 9, false).is_err());
}
