//! Reference tables shipped as TSV, and the same tables recomputed.
//!
//! Each golden file starts with a `#`-prefixed header naming the columns.
//! Comparison is per normalized row, so a table may list a singularity multiset
//! or a fiber configuration in any order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::fiber::{self, CaseId, FiberConfig, SectionOutcome};
use crate::singularity::{catalog_table, format_symbols, parse_symbols, GroupDatum, Symbol};
use crate::toric;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Which {
    Table1,
    Ellip3,
    Ellip4,
    Singu,
    Nocurve2,
    Toric7,
}

impl Which {
    pub const ALL: [Which; 6] = [Which::Table1, Which::Ellip3, Which::Ellip4, Which::Singu, Which::Nocurve2, Which::Toric7];

    pub fn name(self) -> &'static str {
        match self {
            Which::Table1 => "table1",
            Which::Ellip3 => "ellip3",
            Which::Ellip4 => "ellip4",
            Which::Singu => "singu",
            Which::Nocurve2 => "nocurve2",
            Which::Toric7 => "toric7",
        }
    }

    fn source(self) -> &'static str {
        match self {
            Which::Table1 => include_str!("../golden/table1.tsv"),
            Which::Ellip3 => include_str!("../golden/ellip3.tsv"),
            Which::Ellip4 => include_str!("../golden/ellip4.tsv"),
            Which::Singu => include_str!("../golden/singu.tsv"),
            Which::Nocurve2 => include_str!("../golden/nocurve2.tsv"),
            Which::Toric7 => include_str!("../golden/toric7.tsv"),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Which::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown table `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub which: Which,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn parse(which: Which, text: &str) -> Result<Table> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().and_then(|l| l.strip_prefix('#')).ok_or_else(|| Error::Parse(format!("{which}: missing header")))?;
        let header: Vec<String> = head.split('\t').map(str::to_string).collect();
        let rows = lines
            .map(|l| {
                let r: Vec<String> = l.split('\t').map(str::to_string).collect();
                if r.len() != header.len() {
                    return Err(Error::Parse(format!("{which}: row `{l}` has {} fields, expected {}", r.len(), header.len())));
                }
                Ok(r)
            })
            .collect::<Result<_>>()?;
        Ok(Table { which, header, rows })
    }

    pub fn to_tsv(&self) -> String {
        let mut s = format!("#{}\n", self.header.join("\t"));
        for r in &self.rows {
            s.push_str(&r.join("\t"));
            s.push('\n');
        }
        s
    }

    /// Space-aligned columns.
    pub fn to_text(&self) -> String {
        let n = self.header.len();
        let width: Vec<usize> = (0..n)
            .map(|i| self.rows.iter().map(|r| r[i].chars().count()).chain([self.header[i].len()]).max().unwrap())
            .collect();
        let line = |cells: &[String]| -> String {
            let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut s = line(&self.header);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&line(r));
            s.push('\n');
        }
        s
    }
}

/// The shipped golden table.
pub fn golden(which: Which) -> Result<Table> {
    Table::parse(which, which.source())
}

// --- normalization

fn case_of(no: &str) -> Result<CaseId> {
    let digits: String = no.chars().take_while(|c| c.is_ascii_digit()).collect();
    CaseId::new(digits.parse().map_err(|_| Error::Parse(format!("row label `{no}`")))?)
}

fn norm_sing(s: &str) -> Result<String> {
    Ok(format_symbols(&parse_symbols(s)?))
}

fn norm_fibers(no: &str, s: &str) -> Result<String> {
    let mut c = FiberConfig::parse(case_of(no)?, s)?;
    c.fibers.sort();
    Ok(c.sing_f() + &c.condition().map(|x| format!(" ({x})")).unwrap_or_default())
}

// sorted signed terms: `C'-F-3m-2L` -> `+C' -F -2L -3m`
fn norm_expr(s: &str) -> String {
    let mut terms: Vec<(String, String)> = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(split_term(&cur));
            cur.clear();
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(split_term(&cur));
    }
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    terms.iter().map(|(c, l)| format!("{c}{l}")).collect::<Vec<_>>().join(" ")
}

fn split_term(t: &str) -> (String, String) {
    let (sign, rest) = match t.chars().next() {
        Some('-') => ("-", &t[1..]),
        Some('+') => ("+", &t[1..]),
        _ => ("+", t),
    };
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let coef = if digits.is_empty() { "1".to_string() } else { digits.clone() };
    (format!("{sign}{coef}"), rest[digits.len()..].to_string())
}

fn norm_meets(s: &str) -> String {
    let mut v: Vec<&str> = s.split(',').filter(|x| !x.is_empty() && *x != "-").collect();
    v.sort_unstable();
    v.join(",")
}

/// Row key used for comparison.
pub fn normalize_row(which: Which, row: &[String]) -> Result<Vec<String>> {
    Ok(match which {
        Which::Table1 => row.to_vec(),
        Which::Ellip3 => vec![row[0].clone(), norm_fibers(&row[0], &row[1])?, norm_sing(&row[2])?, row[3].clone()],
        Which::Ellip4 => vec![row[0].clone(), norm_fibers(&row[0], &row[1])?, row[2].clone()],
        Which::Singu => vec![row[0].clone(), norm_sing(&row[1])?],
        Which::Nocurve2 => vec![row[0].clone(), norm_expr(&row[1]), norm_meets(&row[2])],
        Which::Toric7 => vec![row[0].clone(), norm_sing(&row[1])?, row[2].clone(), row[3].clone()],
    })
}

// --- table1 patterns

// `9l-15` at l
fn eval_linear(s: &str, l: i64) -> Result<i64> {
    let bad = || Error::Parse(format!("linear form `{s}`"));
    let t = s.replace("-", "+-");
    let mut total = 0;
    for term in t.split('+').filter(|x| !x.is_empty()) {
        total += match term.strip_suffix('l') {
            Some("") => l,
            Some("-") => -l,
            Some(c) => c.parse::<i64>().map_err(|_| bad())? * l,
            None => term.parse::<i64>().map_err(|_| bad())?,
        };
    }
    Ok(total)
}

// expands `(x)^{l-4}` repeats in a comma list
fn expand_list(s: &str, l: i64) -> Result<String> {
    let mut out = String::new();
    let mut rest = s;
    while let Some(start) = rest.find('(') {
        let close = rest[start..].find(")^{").map(|i| i + start);
        let Some(close) = close else {
            out.push_str(&rest[..=start]);
            rest = &rest[start + 1..];
            continue;
        };
        let end = rest[close..].find('}').map(|i| i + close).ok_or_else(|| Error::Parse(s.to_string()))?;
        let item = &rest[start + 1..close];
        let k = eval_linear(&rest[close + 3..end], l)?;
        if k < 0 {
            return Err(Error::Precondition(format!("negative repeat in `{s}` at l={l}")));
        }
        out.push_str(&rest[..start]);
        out.push_str(&vec![item; k as usize].join(","));
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    // an empty repeat leaves doubled or dangling commas
    while out.contains(",,") {
        out = out.replace(",,", ",");
    }
    Ok(out.replace("[,", "[").replace(",]", "]"))
}

fn expand_group(s: &str, l: i64) -> Result<(String, Option<GroupDatum>)> {
    let inner = |p: &str| s.strip_prefix(p).and_then(|x| x.strip_suffix(')'));
    if let Some(x) = inner("C(") {
        let (a, b) = x.split_once(',').ok_or_else(|| Error::Parse(s.to_string()))?;
        let g = GroupDatum::Cyclic { n: eval_linear(a, l)?, q: eval_linear(b, l)? };
        Ok((g.to_string(), Some(g)))
    } else if let Some(x) = inner("G(") {
        let g = GroupDatum::Dihedral { n: eval_linear(x, l)? };
        Ok((g.to_string(), Some(g)))
    } else {
        Err(Error::Parse(format!("group `{s}`")))
    }
}

/// Golden Table 1 with the parametrized rows instantiated for `4 <= l <= l_max`,
/// in the catalog's row order.
pub fn table1_expanded(l_max: i64) -> Result<Table> {
    let g = golden(Which::Table1)?;
    let (explicit, families): (Vec<_>, Vec<_>) = g.rows.iter().partition(|r| !r[0].contains('l'));
    let mut rows: Vec<Vec<String>> = explicit.into_iter().cloned().collect();
    for l in 4..=l_max {
        for r in &families {
            let symbol = r[0].replacen('l', &l.to_string(), 1);
            let (group, datum) = expand_group(&r[1], l)?;
            if let Some(GroupDatum::Dihedral { n }) = datum {
                if n < 4 || n % 3 == 0 {
                    continue;
                }
            }
            if rows.iter().any(|x| x[0] == symbol) {
                continue;
            }
            rows.push(vec![symbol, group, expand_list(&r[2], l)?, expand_list(&r[3], l)?]);
        }
    }
    Ok(Table { which: Which::Table1, header: g.header, rows })
}

// --- computed tables

fn header(which: Which) -> Result<Vec<String>> {
    Ok(golden(which)?.header)
}

/// Non-Jacobian configurations in the golden table's fiber order where it
/// names the same fibers (the order numbers the components).
pub fn reference_ordered_configs() -> Result<Vec<FiberConfig>> {
    let g = golden(Which::Ellip4)?;
    let mut out = Vec::new();
    for case in CaseId::all().into_iter().filter(|c| !c.jacobian) {
        for c in fiber::enumerate_fibers(case)? {
            let printed = g
                .rows
                .iter()
                .filter(|r| r[0] == c.label)
                .filter_map(|r| FiberConfig::parse(case, &r[1]).ok())
                .find(|p| p.same_fibers(&c));
            out.push(match printed {
                Some(mut p) => {
                    p.label = c.label.clone();
                    p
                }
                None => c,
            });
        }
    }
    Ok(out)
}

fn fmt_q(x: &crate::Q) -> String {
    x.to_string()
}

pub fn computed(which: Which) -> Result<Table> {
    let rows: Vec<Vec<String>> = match which {
        Which::Table1 => catalog_table(8)?
            .rows
            .iter()
            .map(|r| {
                let order = r.graph.canonical_order()?;
                let disc: Vec<String> = order.iter().map(|&v| fmt_q(&r.discrepancies[v])).collect();
                Ok(vec![r.symbol.to_string(), r.group.to_string(), r.graph.canonical()?, disc.join(",")])
            })
            .collect::<Result<_>>()?,
        Which::Ellip3 => {
            let rows = fiber::catalog_del_pezzo()?;
            let mut out: Vec<Vec<String>> = Vec::new();
            for r in rows.iter().filter(|r| r.case.jacobian) {
                if out.iter().any(|x| x[0] == r.label) {
                    continue;
                }
                out.push(vec![r.label.clone(), r.sing_f.clone(), r.sing_text(), r.rho.to_string()]);
            }
            out
        }
        Which::Ellip4 => CaseId::all()
            .into_iter()
            .filter(|c| !c.jacobian)
            .map(fiber::enumerate_fibers)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .map(|c| vec![c.label.clone(), c.sing_f(), c.condition().unwrap_or_default()])
            .collect(),
        Which::Singu => {
            let rows: Vec<_> = fiber::catalog_del_pezzo()?.into_iter().filter(|r| !r.case.jacobian).collect();
            fiber::distinct_by_label(&rows)
                .into_iter()
                .flat_map(|(l, ss)| ss.into_iter().map(move |s| vec![l.clone(), s]))
                .collect()
        }
        Which::Nocurve2 => {
            let mut out = Vec::new();
            for c in reference_ordered_configs()? {
                if let SectionOutcome::Classes { classes, .. } = fiber::section_classes(&c)? {
                    for cl in classes {
                        let meets = if cl.meets_text.is_empty() { "-".to_string() } else { cl.meets_text.clone() };
                        out.push(vec![c.label.clone(), cl.expr.clone(), meets]);
                    }
                }
            }
            out
        }
        Which::Toric7 => toric::example_table()?
            .into_iter()
            .map(|r| {
                let mark = if r.verdict.passes() { "o" } else { "x" };
                vec![r.model.to_string(), r.report.sing_text(), fmt_q(&r.report.k2), mark.to_string()]
            })
            .collect(),
    };
    Ok(Table { which, header: header(which)?, rows })
}

/// Differences between a reference table and a computed one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diff {
    /// Reference rows absent from the computation.
    pub missing: Vec<Vec<String>>,
    /// Computed rows absent from the reference.
    pub extra: Vec<Vec<String>>,
    /// Reference rows listed more than once.
    pub duplicates: Vec<Vec<String>>,
}

impl Diff {
    pub fn is_clean(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

impl fmt::Display for Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.missing {
            writeln!(f, "- {}", r.join("\t"))?;
        }
        for r in &self.extra {
            writeln!(f, "+ {}", r.join("\t"))?;
        }
        for r in &self.duplicates {
            writeln!(f, "= {}", r.join("\t"))?;
        }
        Ok(())
    }
}

pub fn diff(reference: &Table, computed: &Table) -> Result<Diff> {
    let which = reference.which;
    let mut seen = BTreeSet::new();
    let mut d = Diff::default();
    for r in &reference.rows {
        let k = normalize_row(which, r)?;
        if !seen.insert(k) {
            d.duplicates.push(r.clone());
        }
    }
    let mut got = BTreeSet::new();
    for r in &computed.rows {
        let k = normalize_row(which, r)?;
        if !seen.contains(&k) {
            d.extra.push(r.clone());
        }
        got.insert(k);
    }
    let mut reported = BTreeSet::new();
    for r in &reference.rows {
        let k = normalize_row(which, r)?;
        if !got.contains(&k) && reported.insert(k) {
            d.missing.push(r.clone());
        }
    }
    Ok(d)
}

/// Golden table as compared: Table 1 has its families instantiated up to `l = 8`.
pub fn reference(which: Which) -> Result<Table> {
    match which {
        Which::Table1 => table1_expanded(8),
        w => golden(w),
    }
}

pub fn check(which: Which) -> Result<Diff> {
    diff(&reference(which)?, &computed(which)?)
}

/// Symbols of a TSV `sing` cell.
pub fn sing_cell(s: &str) -> Result<Vec<Symbol>> {
    parse_symbols(s)
}
