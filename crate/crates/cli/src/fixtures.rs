//! Printed reference values shipped with the binary.
//!
//! Polynomial tables are kept exactly as typeset: thousands separators, the
//! occasional capital `P`, and `p^{10}` braces all survive transcription and
//! are handled here. Known misprints are listed as `erratum` lines next to the
//! rows they affect rather than edited in place.

use std::collections::BTreeMap;

use num_bigint::BigInt;

const TABLES: [&str; 5] = [
    include_str!("../fixtures/table1.txt"),
    include_str!("../fixtures/table2.txt"),
    include_str!("../fixtures/table3.txt"),
    include_str!("../fixtures/table4.txt"),
    include_str!("../fixtures/table5.txt"),
];

const TABLE6: &str = include_str!("../fixtures/table6.csv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub n: i64,
    pub power: usize,
    pub printed: BigInt,
    pub actual: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedRow {
    pub n: i64,
    /// Ascending coefficients as printed, trailing zeros trimmed.
    pub coeffs: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedTable {
    pub alpha: i64,
    pub beta: i64,
    pub rows: Vec<PrintedRow>,
    pub errata: Vec<Erratum>,
}

impl PrintedTable {
    /// Printed coefficients with every erratum applied.
    pub fn corrected(&self) -> Vec<PrintedRow> {
        let mut rows = self.rows.clone();
        for e in &self.errata {
            if let Some(row) = rows.iter_mut().find(|r| r.n == e.n) {
                if row.coeffs.get(e.power) == Some(&e.printed) {
                    row.coeffs[e.power] = e.actual.clone();
                }
            }
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table6Entry {
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
    pub i_pn_star: f64,
    pub i_p_star: f64,
    pub advisory_pn_star: bool,
    pub advisory_p_star: bool,
    pub note: String,
}

fn bad(what: &str, line: &str) -> String {
    format!("{what}: {line:?}")
}

/// Parses one typeset polynomial such as `$1 - 1,816p^5 + 16P^{11}$`.
pub fn parse_printed_poly(expr: &str) -> Result<Vec<BigInt>, String> {
    let cleaned: String = expr
        .chars()
        .filter(|c| !matches!(c, '$' | ',' | ' ' | '{' | '}'))
        .map(|c| if c == 'P' { 'p' } else { c })
        .collect();
    if cleaned.is_empty() {
        return Err(bad("empty polynomial", expr));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in cleaned.char_indices() {
        if i > 0 && (ch == '+' || ch == '-') {
            terms.push(&cleaned[start..i]);
            start = i;
        }
    }
    terms.push(&cleaned[start..]);

    let mut coeffs: BTreeMap<usize, BigInt> = BTreeMap::new();
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let (digits, power) = match body.find('p') {
            None => (body, 0),
            Some(at) => {
                let rest = &body[at + 1..];
                let power = match rest.strip_prefix('^') {
                    None if rest.is_empty() => 1,
                    Some(exp) => exp.parse().map_err(|_| bad("bad exponent", term))?,
                    None => return Err(bad("bad term", term)),
                };
                (&body[..at], power)
            }
        };
        let mut value: BigInt = if digits.is_empty() {
            1.into()
        } else {
            digits.parse().map_err(|_| bad("bad coefficient", term))?
        };
        if negative {
            value = -value;
        }
        *coeffs.entry(power).or_default() += value;
    }
    let degree = *coeffs.keys().next_back().unwrap_or(&0);
    let mut out: Vec<BigInt> = (0..=degree)
        .map(|i| coeffs.remove(&i).unwrap_or_default())
        .collect();
    while out.len() > 1 && out.last().is_some_and(|c| *c == BigInt::default()) {
        out.pop();
    }
    Ok(out)
}

fn parse_erratum(rest: &str) -> Result<Erratum, String> {
    let mut fields = BTreeMap::new();
    for part in rest.split_whitespace() {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| bad("bad erratum field", part))?;
        fields.insert(key, value);
    }
    let get = |key: &str| {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| bad("erratum missing", key))
    };
    Ok(Erratum {
        n: get("n")?.parse().map_err(|_| bad("bad n", rest))?,
        power: get("power")?.parse().map_err(|_| bad("bad power", rest))?,
        printed: get("printed")?
            .parse()
            .map_err(|_| bad("bad printed", rest))?,
        actual: get("actual")?
            .parse()
            .map_err(|_| bad("bad actual", rest))?,
    })
}

pub fn parse_table(text: &str) -> Result<PrintedTable, String> {
    let mut alpha = None;
    let mut beta = None;
    let mut rows = Vec::new();
    let mut errata = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("alpha ") {
            alpha = Some(v.trim().parse().map_err(|_| bad("bad alpha", line))?);
        } else if let Some(v) = line.strip_prefix("beta ") {
            beta = Some(v.trim().parse().map_err(|_| bad("bad beta", line))?);
        } else if let Some(v) = line.strip_prefix("erratum ") {
            errata.push(parse_erratum(v)?);
        } else {
            let (n, expr) = line.split_once('\t').ok_or_else(|| bad("bad row", line))?;
            rows.push(PrintedRow {
                n: n.trim().parse().map_err(|_| bad("bad n", line))?,
                coeffs: parse_printed_poly(expr)?,
            });
        }
    }
    Ok(PrintedTable {
        alpha: alpha.ok_or("missing alpha")?,
        beta: beta.ok_or("missing beta")?,
        rows,
        errata,
    })
}

/// Printed Tables 1 to 5.
pub fn printed_table(which: usize) -> Result<PrintedTable, String> {
    let text = TABLES
        .get(which.wrapping_sub(1))
        .ok_or_else(|| format!("no printed table {which}"))?;
    parse_table(text)
}

pub fn table6_entries() -> Result<Vec<Table6Entry>, String> {
    let mut out = Vec::new();
    let mut lines = TABLE6
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    lines.next().ok_or("table6 fixture has no header")?;
    for line in lines {
        let f: Vec<&str> = line.splitn(8, ',').collect();
        if f.len() != 8 {
            return Err(bad("bad table6 row", line));
        }
        let int = |s: &str| s.parse::<i64>().map_err(|_| bad("bad integer", line));
        let float = |s: &str| s.parse::<f64>().map_err(|_| bad("bad value", line));
        out.push(Table6Entry {
            n: int(f[0])?,
            alpha: int(f[1])?,
            beta: int(f[2])?,
            i_pn_star: float(f[3])?,
            i_p_star: float(f[4])?,
            advisory_pn_star: f[5] == "yes",
            advisory_p_star: f[6] == "yes",
            note: f[7].to_string(),
        });
    }
    Ok(out)
}
