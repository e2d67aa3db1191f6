use std::collections::BTreeMap;

use serde::Serialize;

use super::forms::Multidegree;
use super::Window;
use crate::error::Result;
use crate::SCHEMA;

/// What a table describes, and for which parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableHeader {
    pub kind: String,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub p: usize,
    pub k: i64,
    pub window: i64,
}

/// Graded dimensions indexed by cohomological degree and multidegree.
///
/// Only multidegrees inside `window` were computed; nothing is claimed
/// outside it. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDimensionTable {
    pub header: TableHeader,
    pub max_degree: usize,
    entries: BTreeMap<(usize, Multidegree), usize>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    coh_degree: usize,
    multidegree: &'a [i64],
    dim: usize,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    schema: &'static str,
    #[serde(flatten)]
    header: &'a TableHeader,
    totals: Vec<usize>,
    rows: Vec<JsonRow<'a>>,
}

impl GradedDimensionTable {
    pub fn new(header: TableHeader, max_degree: usize) -> Self {
        Self {
            header,
            max_degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> Window {
        Window::new(self.header.window).expect("tables are built from valid windows")
    }

    pub fn insert(&mut self, degree: usize, multidegree: Multidegree, dim: usize) {
        debug_assert!(degree <= self.max_degree);
        if dim > 0 {
            self.entries.insert((degree, multidegree), dim);
        } else {
            self.entries.remove(&(degree, multidegree));
        }
    }

    pub fn dim(&self, degree: usize, multidegree: &Multidegree) -> usize {
        self.entries
            .get(&(degree, multidegree.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Sum over the window in one cohomological degree.
    pub fn total(&self, degree: usize) -> usize {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == degree)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|i| self.total(i)).collect()
    }

    /// Multidegrees with a nonzero entry in the given degree.
    pub fn support(&self, degree: usize) -> Vec<Multidegree> {
        self.entries
            .keys()
            .filter(|(i, _)| *i == degree)
            .map(|(_, m)| m.clone())
            .collect()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, &Multidegree, usize)> {
        self.entries.iter().map(|((i, m), v)| (*i, m, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let table = JsonTable {
            schema: SCHEMA,
            header: &self.header,
            totals: self.totals(),
            rows: self
                .entries
                .iter()
                .map(|((i, m), v)| JsonRow {
                    coh_degree: *i,
                    multidegree: &m.0,
                    dim: *v,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&table)?)
    }

    /// CSV with a `#` metadata line, then `coh_degree,m0,...,md,dim`.
    pub fn to_csv(&self) -> Result<String> {
        let h = &self.header;
        let mut out = format!(
            "# schema={SCHEMA},kind={},d={},j={},p={},k={},window={}\n",
            h.kind,
            h.d,
            h.j.map_or_else(|| "-".to_string(), |j| j.to_string()),
            h.p,
            h.k,
            h.window
        );
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["coh_degree".to_string()];
        header.extend((0..=h.d).map(|i| format!("m{i}")));
        header.push("dim".into());
        writer.write_record(&header)?;
        for ((i, m), v) in &self.entries {
            let mut record = vec![i.to_string()];
            record.extend(m.0.iter().map(ToString::to_string));
            record.push(v.to_string());
            writer.write_record(&record)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| crate::Error::Serialization(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "{} d={} {}p={} k={} window={}\n",
            h.kind,
            h.d,
            h.j.map_or_else(String::new, |j| format!("j={j} ")),
            h.p,
            h.k,
            h.window
        );
        for (i, t) in self.totals().iter().enumerate() {
            out.push_str(&format!("  H^{i}: total {t}"));
            let support = self.support(i);
            if !support.is_empty() && support.len() <= 12 {
                let s: Vec<String> = support.iter().map(ToString::to_string).collect();
                out.push_str(&format!("  at {}", s.join(" ")));
            } else if !support.is_empty() {
                out.push_str(&format!("  over {} multidegrees", support.len()));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> GradedDimensionTable {
        let header = TableHeader {
            kind: "test".into(),
            d: 1,
            j: Some(0),
            p: 0,
            k: 0,
            window: 2,
        };
        let mut t = GradedDimensionTable::new(header, 1);
        t.insert(0, Multidegree(vec![0, 0]), 1);
        t.insert(1, Multidegree(vec![1, -1]), 2);
        t.insert(1, Multidegree(vec![2, -2]), 0);
        t
    }

    #[test]
    fn totals_and_support() {
        let t = table();
        assert_eq!(t.totals(), vec![1, 2]);
        assert_eq!(t.support(1), vec![Multidegree(vec![1, -1])]);
        assert_eq!(t.dim(1, &Multidegree(vec![2, -2])), 0);
    }

    #[test]
    fn csv_layout() {
        let csv = table().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# schema=bggcoh/1"));
        assert_eq!(lines[1], "coh_degree,m0,m1,dim");
        assert_eq!(lines[2], "0,0,0,1");
        assert_eq!(lines[3], "1,1,-1,2");
    }

    #[test]
    fn json_layout() {
        let v: serde_json::Value = serde_json::from_str(&table().to_json().unwrap()).unwrap();
        assert_eq!(v["schema"], "bggcoh/1");
        assert_eq!(v["window"], 2);
        assert_eq!(v["rows"][1]["multidegree"], serde_json::json!([1, -1]));
    }
}
