use bggcoh::bwb::{
    bgg_complex, bwb_homogeneous, bwb_line_bundle, BggComplexData, CohomologyProfile,
};
use bggcoh::cech::{
    local_cohomology, sheaf_cohomology_pd, tilde_h, FormBundle, GradedDimensionTable, Window,
};
use bggcoh::homology::{de_rham_of_v, reduced_local_acyclicity, AcyclicityReport, DeRhamReport};
use bggcoh::steinberg::cohomology_table;
use bggcoh::weights::Weight;
use bggcoh::{Error, SCHEMA};
use serde_json::json;

use crate::args::{
    BwbArgs, Command, Format, LocalArgs, PipelineArgs, TableArgs, MAX_D_CECH, MAX_D_COMBINATORIAL,
};

/// Exit status classes.
#[derive(Debug)]
pub enum Failure {
    BadArgs(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::BadArgs(_) => 2,
            Failure::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::BadArgs(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RankMismatch { .. }
            | Error::NotDominant(_)
            | Error::NotLDominant(_)
            | Error::InvalidPermutation(_)
            | Error::UnsupportedRank(_)
            | Error::FormDegreeOutOfRange { .. }
            | Error::SubspaceIndexOutOfRange { .. }
            | Error::WindowExceeded(_)
            | Error::InvalidComposition { .. }
            | Error::InvalidOpen(_) => Failure::BadArgs(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// Rendered output, plus the failed mathematical assertion if any.
pub struct Outcome {
    pub output: String,
    pub assertion: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            assertion: None,
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn bad(msg: impl Into<String>) -> Failure {
    Failure::BadArgs(msg.into())
}

fn check_d(d: usize, max: usize) -> Res<()> {
    if d == 0 || d > max {
        return Err(bad(format!("--d must lie in 1..={max}, got {d}")));
    }
    Ok(())
}

fn parse_weight(s: &str, d: usize, flag: &str) -> Res<Weight> {
    let w: Weight = s.parse().map_err(|e: Error| bad(format!("{flag}: {e}")))?;
    if w.rank() != d + 1 {
        return Err(bad(format!(
            "{flag} needs {} entries for d = {d}, got {}",
            d + 1,
            w.rank()
        )));
    }
    Ok(w)
}

fn window(bound: i64) -> Res<Window> {
    Ok(Window::new(bound)?)
}

fn to_json(v: &serde_json::Value) -> Res<String> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))
}

fn csv_lines(meta: &str, header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = format!("# schema={SCHEMA},{meta}\n{}\n", header.join(","));
    for r in rows {
        let quoted: Vec<String> = r
            .into_iter()
            .map(|c| {
                if c.contains(',') {
                    format!("\"{c}\"")
                } else {
                    c
                }
            })
            .collect();
        out.push_str(&quoted.join(","));
        out.push('\n');
    }
    out
}

pub fn run(command: &Command, format: Format) -> Res<Outcome> {
    match command {
        Command::Bwb(a) => bwb(a, format),
        Command::DerhamV(a) => derham_v(a, format),
        Command::Acyclicity(a) => acyclicity(a, format),
        Command::Local(a) => local(a, format),
        Command::Table(a) => table(a, format),
    }
}

fn bwb(a: &BwbArgs, format: Format) -> Res<Outcome> {
    check_d(a.d, MAX_D_COMBINATORIAL)?;
    if a.bgg {
        let Some(lambda) = &a.lambda else {
            return Err(bad("--bgg needs --lambda"));
        };
        let data = bgg_complex(&parse_weight(lambda, a.d, "--lambda")?)?;
        let assertion =
            (!data.delta_property).then(|| "BGG terms fail the delta property".to_string());
        return Ok(Outcome {
            output: render_bgg(&data, format)?,
            assertion,
        });
    }
    let Some(mu) = &a.mu else {
        return Err(bad("give --mu, or --lambda with --bgg"));
    };
    let mu = parse_weight(mu, a.d, "--mu")?;
    let (bundle, profile) = if a.flag_variety {
        ("line_bundle_on_flag_variety", bwb_line_bundle(&mu)?)
    } else {
        let p = bwb_homogeneous(&mu).map_err(|e| match e {
            Error::NotLDominant(_) => {
                bad(format!("{e}; use --flag-variety for a line bundle on G/B"))
            }
            other => other.into(),
        })?;
        ("homogeneous_on_projective_space", p)
    };
    Ok(Outcome::ok(render_profile(
        a.d, &mu, bundle, &profile, format,
    )?))
}

fn render_profile(
    d: usize,
    mu: &Weight,
    bundle: &str,
    p: &CohomologyProfile,
    format: Format,
) -> Res<String> {
    match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "kind": "bwb_profile",
            "bundle": bundle,
            "d": d,
            "mu": mu,
            "dims": p.dims(),
            "entries": p.entries,
        })),
        Format::Csv => Ok(csv_lines(
            &format!("kind=bwb_profile,bundle={bundle},d={d},mu={mu}"),
            &["degree", "dim", "highest_weight"],
            p.entries
                .iter()
                .map(|e| {
                    let hw = e
                        .highest_weight
                        .as_ref()
                        .map_or(String::new(), ToString::to_string);
                    vec![e.degree.to_string(), e.dim.to_string(), hw]
                })
                .collect(),
        )),
        Format::Text => {
            let mut out = format!("E_{mu} ({bundle}), d={d}\n");
            for e in &p.entries {
                out.push_str(&format!("  H^{}: {}", e.degree, e.dim));
                if let Some(hw) = &e.highest_weight {
                    out.push_str(&format!("  (highest weight {hw})"));
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn render_bgg(data: &BggComplexData, format: Format) -> Res<String> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(data).map_err(|e| Failure::Internal(e.to_string()))?;
            v["schema"] = json!(SCHEMA);
            v["kind"] = json!("bgg_complex");
            to_json(&v)
        }
        Format::Csv => Ok(csv_lines(
            &format!(
                "kind=bgg_complex,lambda={},dim_v_lambda={}",
                data.lambda, data.dim_v_lambda
            ),
            &[
                "index",
                "coset_rep",
                "weight",
                "l_dominant",
                "cohomology_dims",
            ],
            data.terms
                .iter()
                .map(|t| {
                    let dims: Vec<String> =
                        t.profile.dims().iter().map(ToString::to_string).collect();
                    vec![
                        t.index.to_string(),
                        t.coset_rep.cycle_notation(),
                        t.weight.to_string(),
                        t.l_dominant.to_string(),
                        dims.join(";"),
                    ]
                })
                .collect(),
        )),
        Format::Text => {
            let mut out = format!(
                "dual BGG complex of lambda={}  dim V(lambda) = {}\n",
                data.lambda, data.dim_v_lambda
            );
            for t in &data.terms {
                out.push_str(&format!(
                    "  {}: w = {:<12} w.lambda = {:<16} H^* dims {:?}\n",
                    t.index,
                    t.coset_rep.cycle_notation(),
                    t.weight.to_string(),
                    t.profile.dims()
                ));
            }
            out.push_str(&format!(
                "  delta property: {}\n",
                if data.delta_property {
                    "holds"
                } else {
                    "FAILS"
                }
            ));
            Ok(out)
        }
    }
}

fn pipeline_checks(a: &PipelineArgs) -> Res<Window> {
    check_d(a.d, MAX_D_CECH)?;
    if a.j >= a.d {
        return Err(bad(format!("--j must lie in 0..={}, got {}", a.d - 1, a.j)));
    }
    window(a.window)
}

fn derham_v(a: &PipelineArgs, format: Format) -> Res<Outcome> {
    let w = pipeline_checks(a)?;
    let r = de_rham_of_v(a.d, a.j, w)?;
    let expected = DeRhamReport::expected_dims(a.d, a.j);
    let pass = r.matches_expected();
    let output = match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "kind": "derham_v",
            "d": r.d,
            "j": r.j,
            "window": r.window,
            "dims": r.dims,
            "expected": expected,
            "support": r.support,
            "e1": r.e1.to_json_rows(),
            "pass": pass,
        }))?,
        Format::Csv => csv_lines(
            &format!("kind=derham_v,d={},j={},window={}", r.d, r.j, r.window),
            &["degree", "dim"],
            r.dims
                .iter()
                .enumerate()
                .map(|(n, x)| vec![n.to_string(), x.to_string()])
                .collect(),
        ),
        Format::Text => {
            let support: Vec<String> = r.support.iter().map(ToString::to_string).collect();
            format!(
                "H^*_dR(V), d={} j={} window={}\n  dims {:?}\n  support {}\n  {}\n{}",
                r.d,
                r.j,
                r.window,
                r.dims,
                support.join(" "),
                if pass { "PASS" } else { "FAIL" },
                r.e1.render_grid()
            )
        }
    };
    let assertion = (!pass).then(|| {
        format!(
            "de Rham dims {:?} or support {:?} differ from expected {:?} at multidegree 0",
            r.dims, r.support, expected
        )
    });
    Ok(Outcome { output, assertion })
}

fn acyclicity(a: &PipelineArgs, format: Format) -> Res<Outcome> {
    let w = pipeline_checks(a)?;
    let r: AcyclicityReport = reduced_local_acyclicity(a.d, a.j, w)?;
    let pass = r.acyclic() && r.intermediate_as_expected();
    let output = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&r).map_err(|e| Failure::Internal(e.to_string()))?;
            v["schema"] = json!(SCHEMA);
            v["kind"] = json!("acyclicity");
            v["pass"] = json!(pass);
            to_json(&v)?
        }
        Format::Csv => csv_lines(
            &format!(
                "kind=acyclicity,d={},j={},window={},pass={pass}",
                r.d, r.j, r.window
            ),
            &["p", "intermediate", "reduced_terms", "reduced_cohomology"],
            (0..=r.d)
                .map(|p| {
                    vec![
                        p.to_string(),
                        r.intermediate[p].to_string(),
                        r.reduced_terms[p].to_string(),
                        r.reduced[p].to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut out = format!(
                "{}  d={} j={} window={}\n  intermediate cohomology {:?}\n  reduced terms {:?}\n  reduced cohomology {:?}\n",
                if pass { "PASS" } else { "FAIL" },
                r.d,
                r.j,
                r.window,
                r.intermediate,
                r.reduced_terms,
                r.reduced
            );
            for f in &r.failures {
                out.push_str(&format!(
                    "  not exact at p={} multidegree {} (dim {})\n",
                    f.p, f.multidegree, f.dim
                ));
            }
            out
        }
    };
    let assertion = (!pass).then(|| {
        if r.acyclic() {
            format!(
                "intermediate cohomology {:?} is not concentrated in degree {}",
                r.intermediate,
                a.d - a.j - 1
            )
        } else {
            let spots: Vec<String> = r
                .failures
                .iter()
                .map(|f| format!("p={} at {}", f.p, f.multidegree))
                .collect();
            format!("reduced complex not exact: {}", spots.join(", "))
        }
    });
    Ok(Outcome { output, assertion })
}

fn render_table(t: &GradedDimensionTable, format: Format) -> Res<String> {
    Ok(match format {
        Format::Json => t.to_json()?,
        Format::Csv => t.to_csv()?,
        Format::Text => t.to_text(),
    })
}

fn local(a: &LocalArgs, format: Format) -> Res<Outcome> {
    check_d(a.d, MAX_D_CECH)?;
    if a.j >= a.d {
        return Err(bad(format!("--j must lie in 0..={}, got {}", a.d - 1, a.j)));
    }
    if a.p > a.d {
        return Err(bad(format!("--p must lie in 0..={}, got {}", a.d, a.p)));
    }
    let w = window(a.window)?;
    let bundle = FormBundle::new(a.p, a.k);
    if a.reduced {
        return Ok(Outcome::ok(render_table(
            &tilde_h(a.j, bundle, a.d, w)?,
            format,
        )?));
    }
    let t = local_cohomology(a.j, bundle, a.d, w)?;
    let global = sheaf_cohomology_pd(bundle, a.d, w)?;
    let codim = a.d - a.j;
    let mut violations = Vec::new();
    for (i, m, dim) in t.nonzero_entries() {
        if i < codim || (i > codim && dim != global.dim(i, m)) {
            violations.push(format!("H^{i} at {m}"));
        }
    }
    for (i, m, dim) in global.nonzero_entries() {
        if i > codim && t.dim(i, m) != dim {
            violations.push(format!("H^{i} at {m}"));
        }
    }
    let assertion = (!violations.is_empty()).then(|| {
        format!(
            "local cohomology off the expected pattern: {}",
            violations.join(", ")
        )
    });
    Ok(Outcome {
        output: render_table(&t, format)?,
        assertion,
    })
}

fn table(a: &TableArgs, format: Format) -> Res<Outcome> {
    check_d(a.d, MAX_D_COMBINATORIAL)?;
    let t = cohomology_table(&parse_weight(&a.lambda, a.d, "--lambda")?)?;
    Ok(Outcome::ok(match format {
        Format::Json => t.to_json()?,
        Format::Csv => t.to_csv()?,
        Format::Text => t.to_text(),
    }))
}
