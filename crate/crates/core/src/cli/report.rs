use std::cmp::Ordering;
use std::io::{self, Write};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::exact_math::{parse_rational, Rational};

/// One verified identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check_name: String,
    /// Parameters in their natural order; serialized as a JSON object.
    pub params: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
    /// Exact comparison result, or for bound-type checks whether the
    /// stated property holds.
    pub equal: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ParamKey {
    Num(Rational),
    Text(String),
}

impl CheckReport {
    fn param_keys(&self) -> Vec<ParamKey> {
        self.params
            .iter()
            .map(|(_, v)| match parse_rational(v) {
                Ok(r) => ParamKey::Num(r),
                Err(_) => ParamKey::Text(v.clone()),
            })
            .collect()
    }

    /// Report order: check name, then parameter values compared numerically
    /// where they parse as numbers.
    pub fn sort_order(&self, other: &Self) -> Ordering {
        self.check_name
            .cmp(&other.check_name)
            .then_with(|| self.param_keys().cmp(&other.param_keys()))
    }

    fn params_inline(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

struct ParamMap<'a>(&'a [(String, String)]);

impl Serialize for ParamMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CheckReport", 6)?;
        s.serialize_field("check_name", &self.check_name)?;
        s.serialize_field("params", &ParamMap(&self.params))?;
        s.serialize_field("lhs", &self.lhs)?;
        s.serialize_field("rhs", &self.rhs)?;
        s.serialize_field("equal", &self.equal)?;
        s.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        s.end()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// JSON Lines, one report per line.
    #[default]
    Json,
    Csv,
    Text,
}

pub fn write_reports<W: Write>(reports: &[CheckReport], format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Json => write_json(reports, out),
        Format::Csv => write_csv(reports, out),
        Format::Text => write_text(reports, out),
    }
}

fn write_json<W: Write>(reports: &[CheckReport], mut out: W) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

fn write_csv<W: Write>(reports: &[CheckReport], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check_name", "params", "lhs", "rhs", "equal", "elapsed_ms"])?;
    for r in reports {
        w.write_record([
            r.check_name.as_str(),
            &r.params_inline(),
            &r.lhs,
            &r.rhs,
            if r.equal { "true" } else { "false" },
            &r.elapsed_ms.to_string(),
        ])?;
    }
    w.flush()
}

fn write_text<W: Write>(reports: &[CheckReport], mut out: W) -> io::Result<()> {
    for r in reports {
        let tag = if r.equal { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {} [{}] lhs={} rhs={}", r.check_name, r.params_inline(), r.lhs, r.rhs)?;
    }
    let failed = reports.iter().filter(|r| !r.equal).count();
    writeln!(out, "{} checks, {} failed", reports.len(), failed)?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(name: &str, n: &str) -> CheckReport {
        CheckReport {
            check_name: name.into(),
            params: vec![("n".into(), n.into()), ("variant".into(), "pos".into())],
            lhs: "26/35".into(),
            rhs: r#"["1","-1"]"#.into(),
            equal: true,
            elapsed_ms: 3,
        }
    }

    #[test]
    fn json_field_names() {
        let mut buf = Vec::new();
        write_reports(&[report("moments", "2")], Format::Json, &mut buf).unwrap();
        let line = String::from_utf8(buf).unwrap();
        assert_eq!(
            line,
            "{\"check_name\":\"moments\",\"params\":{\"n\":\"2\",\"variant\":\"pos\"},\
             \"lhs\":\"26/35\",\"rhs\":\"[\\\"1\\\",\\\"-1\\\"]\",\"equal\":true,\"elapsed_ms\":3}\n"
        );
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["rhs"].as_str().unwrap().parse::<crate::Polynomial>().unwrap().degree(), 1);
    }

    #[test]
    fn csv_quotes_polynomials() {
        let mut buf = Vec::new();
        write_reports(&[report("moments", "2")], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rec = rd.records().next().unwrap().unwrap();
        assert_eq!(&rec[1], "n=2;variant=pos");
        assert_eq!(&rec[3], r#"["1","-1"]"#);
    }

    #[test]
    fn numeric_parameter_order() {
        let mut v = [report("b", "1"), report("a", "10"), report("a", "9"), report("a", "-1/2")];
        v.sort_by(CheckReport::sort_order);
        let order: Vec<_> = v.iter().map(|r| (r.check_name.as_str(), r.params[0].1.as_str())).collect();
        assert_eq!(order, [("a", "-1/2"), ("a", "9"), ("a", "10"), ("b", "1")]);
    }

    #[test]
    fn text_summary() {
        let mut bad = report("x", "1");
        bad.equal = false;
        let mut buf = Vec::new();
        write_reports(&[report("x", "0"), bad], Format::Text, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("FAIL x [n=1;variant=pos]"));
        assert!(text.ends_with("2 checks, 1 failed\n"));
    }
}
