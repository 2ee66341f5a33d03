//! Golden tables and their recomputation.
//!
//! Each table is a CSV file (lines starting with `#` are comments). The copies
//! under `data/` are compiled in; a directory of replacements can be supplied.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::classgroup::{rm_feasibility, H2Cache};
use crate::error::{Error, Result};
use crate::genus2::{family, FamilyKind};
use crate::primes::cornacchia;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    Ab1,
    Ex2,
    Mild,
    Rm,
}

impl Table {
    pub const ALL: [Table; 4] = [Table::Ab1, Table::Ex2, Table::Mild, Table::Rm];

    pub fn file_name(self) -> &'static str {
        match self {
            Table::Ab1 => "ab1.csv",
            Table::Ex2 => "ex2.csv",
            Table::Mild => "mild.csv",
            Table::Rm => "rm.csv",
        }
    }

    fn embedded(self) -> &'static str {
        match self {
            Table::Ab1 => include_str!("../data/ab1.csv"),
            Table::Ex2 => include_str!("../data/ex2.csv"),
            Table::Mild => include_str!("../data/mild.csv"),
            Table::Rm => include_str!("../data/rm.csv"),
        }
    }

    fn header(self) -> &'static [&'static str] {
        match self {
            Table::Ab1 => &["a", "b", "m", "n"],
            Table::Ex2 => &["b", "c", "n"],
            Table::Mild => &["u", "c", "m", "n"],
            Table::Rm => &["p", "a", "b", "g", "rm", "h2"],
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.file_name()[..self.file_name().len() - 4])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub table: Table,
    /// 1-based data row.
    pub row: usize,
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TablesReport {
    pub rows: Vec<RowReport>,
    pub pass: bool,
}

impl TablesReport {
    pub fn count(&self, t: Table) -> usize {
        self.rows.iter().filter(|r| r.table == t).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

fn read_rows(t: Table, text: &str) -> Result<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::domain(format!("{}: {e}", t.file_name())))?
        .iter()
        .map(str::to_string)
        .collect();
    if header != t.header() {
        return Err(Error::domain(format!(
            "{}: header {:?}, expected {:?}",
            t.file_name(),
            header,
            t.header()
        )));
    }
    rdr.records()
        .map(|r| {
            r.map(|r| r.iter().map(str::to_string).collect())
                .map_err(|e| Error::domain(format!("{}: {e}", t.file_name())))
        })
        .collect()
}

fn int(t: Table, s: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| Error::domain(format!("{}: bad integer {s:?}", t.file_name())))
}

fn check_family(t: Table, kind: FamilyKind, row: &[String]) -> Result<(String, String, String)> {
    let (p1, p2) = (int(t, &row[0])?, int(t, &row[1])?);
    let names = kind.param_names();
    let key = format!("{}={p1} {}={p2}", names[0], names[1]);
    let expected = match t {
        Table::Ex2 => format!("n={} prime", row[2]),
        _ => format!("m={} n={} prime", row[2], row[3]),
    };
    let actual = match family(kind, p1, p2) {
        Ok(inst) => {
            let tag = if inst.prime_pair {
                "prime"
            } else {
                "composite"
            };
            match &inst.m {
                Some(m) if t != Table::Ex2 => format!("m={m} n={} {tag}", inst.n),
                _ => format!("n={} {tag}", inst.n),
            }
        }
        Err(e) => format!("{}: {e}", e.code()),
    };
    Ok((key, expected, actual))
}

fn check_rm(row: &[String], cache: Option<&H2Cache>) -> Result<(String, String, String)> {
    let t = Table::Rm;
    let p = int(t, &row[0])? as u64;
    let g = int(t, &row[3])? as u32;
    let key = format!("p={p} g={g} rm={}", row[4]);
    let expected = format!("a={} b={} h2={} feasible", row[1], row[2], row[5]);
    let actual = (|| -> Result<String> {
        let (a, b) =
            cornacchia(p, 16)?.ok_or_else(|| Error::domain(format!("{p} is not a^2 + 16 b^2")))?;
        let f = rm_feasibility(p, g, cache)?;
        let tag = if f.feasible { "feasible" } else { "infeasible" };
        Ok(format!("a={a} b={b} h2={} {tag}", f.h2))
    })()
    .unwrap_or_else(|e| format!("{}: {e}", e.code()));
    Ok((key, expected, actual))
}

/// Recomputes one table given its CSV text.
pub fn verify_table(t: Table, text: &str, cache: Option<&H2Cache>) -> Result<Vec<RowReport>> {
    read_rows(t, text)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let (key, expected, actual) = match t {
                Table::Ab1 => check_family(t, FamilyKind::Ab1, row)?,
                Table::Ex2 => check_family(t, FamilyKind::Ex2, row)?,
                Table::Mild => check_family(t, FamilyKind::Mild, row)?,
                Table::Rm => check_rm(row, cache)?,
            };
            Ok(RowReport {
                table: t,
                row: i + 1,
                key,
                pass: expected == actual,
                expected,
                actual,
            })
        })
        .collect()
}

/// All four tables, from `dir` when given, else the compiled-in copies.
pub fn verify_tables(dir: Option<&Path>, cache: Option<&H2Cache>) -> Result<TablesReport> {
    let mut rows = Vec::new();
    for t in Table::ALL {
        let text = match dir {
            Some(d) => std::fs::read_to_string(d.join(t.file_name()))?,
            None => t.embedded().to_string(),
        };
        rows.extend(verify_table(t, &text, cache)?);
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TablesReport { rows, pass })
}

/// Copies the compiled-in tables into `dir`.
pub fn write_embedded(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for t in Table::ALL {
        std::fs::write(dir.join(t.file_name()), t.embedded())?;
    }
    Ok(())
}
