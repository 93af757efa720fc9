//! Text formats. Every writer's output parses back to an equal value.
//!
//! * Orbit matrix: `v k lambda n`, the block orbit sizes, the point orbit
//!   sizes, then one line of entries per block orbit.
//! * Design: `v k lambda`, then one line of `0`/`1` characters per block.
//! * Code: `n k`, then the generator in reduced row-echelon form, one line
//!   of `0`/`1`/`2` characters per row.
//! * Weight report: `key=value` lines (`A<w>=<count>` for each computed
//!   weight, `beta=none` when undefined), or a JSON object with keys `n`,
//!   `k`, `d`, `classification`, `counts` and `beta`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use tern48_core::code::TernaryCode;
use tern48_core::design::{DesignParams, IncidenceStructure};
use tern48_core::gf3::TritMatrix;
use tern48_core::orbit_matrix::OrbitMatrix;
use tern48_core::weight::{Classification, WeightReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

type Result<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(ParseError { line, msg: msg.into() })
}

/// Non-empty lines with their 1-based numbers.
fn lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().or_else(|_| err(line, format!("{t:?} is not a non-negative integer"))))
        .collect()
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>, want: usize, what: &str) -> Result<(usize, Vec<usize>)> {
    let Some((no, l)) = it.next() else {
        return err(0, format!("missing {what} line"));
    };
    let v = numbers(no, l)?;
    if v.len() != want {
        return err(no, format!("{what} line needs {want} integers, found {}", v.len()));
    }
    Ok((no, v))
}

fn digits(line: usize, s: &str, max: u8) -> Result<Vec<u8>> {
    s.bytes()
        .map(|b| match b {
            b'0'..=b'9' if b - b'0' <= max => Ok(b - b'0'),
            _ => err(line, format!("unexpected character {:?}", b as char)),
        })
        .collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn params(line: usize, v: usize, k: usize, lambda: usize) -> Result<DesignParams> {
    DesignParams::new(v, k, lambda).or_else(|e| err(line, e.to_string()))
}

pub fn write_orbit_matrix(om: &OrbitMatrix) -> String {
    let p = om.params;
    let mut s = format!("{} {} {} {}\n", p.v, p.k, p.lambda, om.group_order);
    writeln!(s, "{}", join(&om.block_orbit_sizes)).unwrap();
    writeln!(s, "{}", join(&om.point_orbit_sizes)).unwrap();
    for row in &om.s {
        writeln!(s, "{}", join(row)).unwrap();
    }
    s
}

pub fn parse_orbit_matrix(s: &str) -> Result<OrbitMatrix> {
    let mut it = lines(s);
    let (no, h) = header(&mut it, 4, "parameter")?;
    let p = params(no, h[0], h[1], h[2])?;
    let Some((no, l)) = it.next() else {
        return err(0, "missing block orbit sizes");
    };
    let blocks = numbers(no, l)?;
    let Some((no, l)) = it.next() else {
        return err(0, "missing point orbit sizes");
    };
    let points = numbers(no, l)?;
    let mut rows = Vec::new();
    let mut last = no;
    for (no, l) in it {
        let r = numbers(no, l)?;
        if r.len() != points.len() {
            return err(no, format!("row has {} entries, expected {}", r.len(), points.len()));
        }
        rows.push(r);
        last = no;
    }
    if rows.len() != blocks.len() {
        return err(last, format!("{} rows, expected {}", rows.len(), blocks.len()));
    }
    OrbitMatrix::new(h[3], p, blocks, points, rows).or_else(|e| err(1, e.to_string()))
}

pub fn write_design(p: &DesignParams, d: &IncidenceStructure) -> String {
    let mut s = format!("{} {} {}\n", p.v, p.k, p.lambda);
    for row in d.to_rows() {
        s.extend(row.iter().map(|&b| char::from(b'0' + b)));
        s.push('\n');
    }
    s
}

/// A design file: `v` lines of `v` incidences after the parameters.
pub fn parse_design(s: &str) -> Result<(DesignParams, IncidenceStructure)> {
    let mut it = lines(s);
    let (no, h) = header(&mut it, 3, "parameter")?;
    let p = params(no, h[0], h[1], h[2])?;
    let rows: Vec<Vec<u8>> = it.map(|(no, l)| digits(no, l, 1)).collect::<Result<_>>()?;
    if rows.len() != p.v {
        return err(no, format!("{} blocks, expected {}", rows.len(), p.v));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != p.v) {
        return err(no + 1 + i, format!("block has {} entries, expected {}", rows[i].len(), p.v));
    }
    let d = IncidenceStructure::from_rows(&rows).or_else(|e| err(no, e.to_string()))?;
    Ok((p, d))
}

pub fn write_code(c: &TernaryCode) -> String {
    let mut s = format!("{} {}\n", c.length(), c.dimension());
    for row in c.generator().to_rows() {
        s.extend(row.iter().map(|&b| char::from(b'0' + b)));
        s.push('\n');
    }
    s
}

/// A code file; the rows must be independent.
pub fn parse_code(s: &str) -> Result<TernaryCode> {
    let mut it = lines(s);
    let (no, h) = header(&mut it, 2, "dimension")?;
    let (n, k) = (h[0], h[1]);
    let rows: Vec<Vec<u8>> = it.map(|(no, l)| digits(no, l, 2)).collect::<Result<_>>()?;
    if rows.len() != k {
        return err(no, format!("{} rows, expected {k}", rows.len()));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return err(no + 1 + i, format!("row has {} entries, expected {n}", rows[i].len()));
    }
    if k == 0 {
        return Ok(TernaryCode::from_generator(&TritMatrix::zeros(0, n)));
    }
    let g = TritMatrix::from_rows(&rows).or_else(|e| err(no, e.to_string()))?;
    TernaryCode::from_full_rank_generator(&g).or_else(|e| err(no, e.to_string()))
}

pub fn write_report(r: &WeightReport) -> String {
    let mut s = format!("n={}\nk={}\nd={}\nclassification={}\n", r.n, r.k, r.d, r.classification);
    match r.beta {
        Some(b) => writeln!(s, "beta={b}").unwrap(),
        None => s.push_str("beta=none\n"),
    }
    for (w, a) in &r.counts {
        writeln!(s, "A{w}={a}").unwrap();
    }
    s
}

pub fn parse_report(s: &str) -> Result<WeightReport> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for (no, l) in lines(s) {
        let Some((key, value)) = l.split_once('=') else {
            return err(no, "expected key=value");
        };
        if let Some(w) = key.strip_prefix('A') {
            let w: usize = w.parse().or_else(|_| err(no, format!("bad weight {w:?}")))?;
            let a: u64 = value.parse().or_else(|_| err(no, format!("bad count {value:?}")))?;
            if counts.insert(w, a).is_some() {
                return err(no, format!("A{w} given twice"));
            }
        } else if fields.insert(key, (no, value)).is_some() {
            return err(no, format!("{key} given twice"));
        }
    }
    let num = |key: &str| -> Result<usize> {
        let Some(&(no, v)) = fields.get(key) else {
            return err(0, format!("missing {key}"));
        };
        v.parse().or_else(|_| err(no, format!("bad {key} {v:?}")))
    };
    let (n, k, d) = (num("n")?, num("k")?, num("d")?);
    let classification = match fields.get("classification") {
        Some(&(no, v)) => Classification::parse(v).map_or_else(|| err(no, format!("bad classification {v:?}")), Ok)?,
        None => return err(0, "missing classification"),
    };
    let beta = match fields.get("beta") {
        Some(&(_, "none")) => None,
        Some(&(no, v)) => Some(v.parse().or_else(|_| err(no, format!("bad beta {v:?}")))?),
        None => return err(0, "missing beta"),
    };
    if let Some(extra) = fields.keys().find(|k| !["n", "k", "d", "classification", "beta"].contains(k)) {
        return err(fields[extra].0, format!("unknown key {extra}"));
    }
    Ok(WeightReport {
        n,
        k,
        d,
        counts,
        classification,
        beta,
    })
}

/// The JSON form of a [`WeightReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub classification: String,
    pub counts: BTreeMap<usize, u64>,
    pub beta: Option<u64>,
}

impl From<&WeightReport> for ReportJson {
    fn from(r: &WeightReport) -> Self {
        ReportJson {
            n: r.n,
            k: r.k,
            d: r.d,
            classification: r.classification.as_str().to_string(),
            counts: r.counts.clone(),
            beta: r.beta,
        }
    }
}

pub fn report_to_json(r: &WeightReport) -> String {
    serde_json::to_string(&ReportJson::from(r)).expect("plain data serializes")
}

pub fn report_from_json(s: &str) -> Result<WeightReport> {
    let j: ReportJson = serde_json::from_str(s).or_else(|e| err(e.line(), e.to_string()))?;
    let Some(classification) = Classification::parse(&j.classification) else {
        return err(1, format!("bad classification {:?}", j.classification));
    };
    Ok(WeightReport {
        n: j.n,
        k: j.k,
        d: j.d,
        counts: j.counts,
        classification,
        beta: j.beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tern48_core::code::tetracode;
    use tern48_core::design::fano_plane;

    #[test]
    fn appendix_matrix_text() {
        let om = OrbitMatrix::appendix(1).unwrap();
        let text = write_orbit_matrix(&om);
        assert!(text.starts_with("47 23 11 6\n1 2 2 3 3 6 6 6 6 6 6\n1 2 2 3 3 6 6 6 6 6 6\n0 2 0 3 0 6 6 6 0 0 0\n"));
        assert_eq!(parse_orbit_matrix(&text).unwrap(), om);
    }

    #[test]
    fn fano_text() {
        let p = DesignParams::new(7, 3, 1).unwrap();
        let text = write_design(&p, &fano_plane());
        assert_eq!(text.lines().nth(1), Some("0110100"));
        assert_eq!(parse_design(&text).unwrap(), (p, fano_plane()));
    }

    #[test]
    fn tetracode_text() {
        let text = write_code(&tetracode());
        assert_eq!(text.lines().next(), Some("4 2"));
        assert_eq!(parse_code(&text).unwrap(), tetracode());
    }

    #[test]
    fn malformed_inputs_name_the_line() {
        assert_eq!(parse_design("3 1 0\n100\n010\n").unwrap_err().line, 1);
        assert_eq!(parse_code("4 2\n1110\n01x1\n").unwrap_err().line, 3);
        assert!(parse_code("3 2\n111\n222\n").is_err());
        assert!(parse_orbit_matrix("7 3 1 1\n1\n1\n").is_err());
        assert!(parse_report("n=4\nk=2\nd=3\nclassification=odd\nbeta=none\n").is_err());
    }

    #[test]
    fn report_forms() {
        let r = WeightReport {
            n: 48,
            k: 24,
            d: 12,
            counts: [(0, 1), (3, 0), (12, 3760)].into_iter().collect(),
            classification: Classification::NearExtremal,
            beta: Some(470),
        };
        let text = write_report(&r);
        assert!(text.contains("classification=near_extremal\nbeta=470\n"));
        assert_eq!(parse_report(&text).unwrap(), r);
        let json = report_to_json(&r);
        assert_eq!(
            json,
            r#"{"n":48,"k":24,"d":12,"classification":"near_extremal","counts":{"0":1,"3":0,"12":3760},"beta":470}"#
        );
        assert_eq!(report_from_json(&json).unwrap(), r);
    }
}
