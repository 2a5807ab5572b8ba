//! The result object every command produces, and its two renderings.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

/// One graded dimension table. Entries are sorted by grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub axes: Vec<String>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub at: Vec<i64>,
    pub dim: i64,
}

impl Table {
    pub fn single(name: impl Into<String>, axis: &str, dims: &BTreeMap<i64, usize>) -> Self {
        Table {
            name: name.into(),
            axes: vec![axis.into()],
            entries: dims.iter().map(|(&k, &d)| Entry { at: vec![k], dim: d as i64 }).collect(),
        }
    }

    pub fn double(name: impl Into<String>, axes: [&str; 2], dims: &BTreeMap<(i64, i64), usize>) -> Self {
        Table {
            name: name.into(),
            axes: axes.iter().map(|s| s.to_string()).collect(),
            entries: dims.iter().map(|(&(a, b), &d)| Entry { at: vec![a, b], dim: d as i64 }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Acceptance criterion the check belongs to, for `selftest`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub criterion: Option<u8>,
    pub passed: bool,
    /// Number of individual comparisons behind the verdict.
    pub count: usize,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, count: usize, witnesses: Vec<String>) -> Self {
        Check { name: name.into(), criterion: None, passed, count, witnesses }
    }

    pub fn criterion(mut self, c: u8) -> Self {
        self.criterion = Some(c);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<String>,
    /// SHA-256 of the normalized input word.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input_hash: Option<String>,
    pub params: BTreeMap<String, String>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub dims: Vec<Table>,
    pub checks: Vec<Check>,
    pub meta: Meta,
}

impl RunResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        self.write_table(&mut out).expect("writing to a string");
        out
    }

    fn write_table(&self, out: &mut String) -> fmt::Result {
        write!(out, "{}", self.meta.command)?;
        if let Some(input) = &self.meta.input {
            write!(out, "  {input}")?;
        }
        writeln!(out)?;
        for t in &self.dims {
            writeln!(out, "\n{}", t.name)?;
            let header: Vec<String> = t.axes.iter().map(|a| format!("{a:>6}")).collect();
            writeln!(out, "{}  {:>5}", header.join(""), "dim")?;
            if t.entries.is_empty() {
                writeln!(out, "  (zero)")?;
            }
            for e in &t.entries {
                let at: Vec<String> = e.at.iter().map(|x| format!("{x:>6}")).collect();
                writeln!(out, "{}  {:>5}", at.join(""), e.dim)?;
            }
        }
        if !self.checks.is_empty() {
            writeln!(out)?;
        }
        for c in &self.checks {
            let tag = c.criterion.map(|k| format!("[{k}] ")).unwrap_or_default();
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {tag}{} ({} checked)", c.name, c.count)?;
            for w in c.witnesses.iter().take(10) {
                writeln!(out, "    {w}")?;
            }
            if c.witnesses.len() > 10 {
                writeln!(out, "    … {} more", c.witnesses.len() - 10)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunResult {
        RunResult {
            dims: vec![
                Table::single("total", "delta", &BTreeMap::from([(-1, 1), (1, 1)])),
                Table::double("e2", ["h", "q"], &BTreeMap::from([((0, 1), 1), ((0, -1), 1)])),
            ],
            checks: vec![Check::new("x", true, 3, vec![]).criterion(2), Check::new("y", false, 1, vec!["w".into()])],
            meta: Meta {
                command: "total".into(),
                input: Some("n=1; word=[]".into()),
                input_hash: None,
                params: BTreeMap::from([("window-margin".into(), "4".into())]),
                version: "0".into(),
            },
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(RunResult::from_json(&r.to_json()).unwrap(), r);
        assert!(!r.passed());
    }

    #[test]
    fn field_order_is_fixed() {
        let j = sample().to_json();
        let (d, c, m) = (j.find("\"dims\"").unwrap(), j.find("\"checks\"").unwrap(), j.find("\"meta\"").unwrap());
        assert!(d < c && c < m);
    }

    #[test]
    fn table_lists_every_entry() {
        let t = sample().to_table();
        assert!(t.contains("PASS [2] x (3 checked)"));
        assert!(t.contains("FAIL y"));
        assert!(t.contains("    w"));
    }
}
