//! Recomputation of the published tables stored as `row,col,value` CSV fixtures.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::counting::{self, BigNat};
use crate::error::{Error, Result};
use crate::words::{geodesic_lex_words, terminal_run_counts, LetterOrder};

/// One cell of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub row: String,
    pub col: String,
    pub value: String,
}

/// A named table as an ordered list of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub cells: Vec<Cell>,
}

impl Table {
    pub fn read(path: &Path) -> Result<Self> {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::parse(0, format!("bad fixture path {}", path.display())))?
            .to_string();
        let mut reader = csv::Reader::from_path(path).map_err(|e| Error::parse(0, e.to_string()))?;
        let cells = reader
            .deserialize()
            .enumerate()
            .map(|(n, rec)| rec.map_err(|e| Error::parse(n + 1, e.to_string())))
            .collect::<Result<Vec<Cell>>>()?;
        Ok(Table { name, cells })
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for cell in &self.cells {
            writer.serialize(cell).expect("writing to memory");
        }
        String::from_utf8(writer.into_inner().expect("writing to memory")).expect("ascii output")
    }

    /// Cells whose values differ, as `(fixture, recomputed)` pairs.
    pub fn diff<'a>(&'a self, other: &'a Table) -> Vec<(&'a Cell, Option<&'a Cell>)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(n, c)| match other.cells.get(n) {
                Some(o) if o == c => None,
                o => Some((c, o)),
            })
            .collect()
    }
}

/// The fixture directory: `$PMON_FIXTURES`, else `./fixtures`, else the one beside the sources.
pub fn fixtures_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("PMON_FIXTURES") {
        return PathBuf::from(dir);
    }
    let local = PathBuf::from("fixtures");
    if local.join("tables").is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Names of every table fixture, sorted.
pub fn table_names(dir: &Path) -> Result<Vec<String>> {
    let entries = std::fs::read_dir(dir.join("tables")).map_err(|e| Error::parse(0, e.to_string()))?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let p = e.path();
            (p.extension()? == "csv").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    Ok(names)
}

pub fn read_fixture(dir: &Path, name: &str) -> Result<Table> {
    Table::read(&dir.join("tables").join(format!("{name}.csv")))
}

#[derive(Debug, Clone, Copy)]
enum Source {
    Pt(usize),
    Xt(usize),
    PnVec(usize),
    PnbVec(usize),
    XnVec(usize),
    XnbVec(usize),
    PmodCards(usize),
    ModCards(usize),
    ApsisCards(usize),
    XApsisCards(usize),
    IntParts,
    OrderedIntParts,
    PmodD,
    ModD,
    PmodR,
    ModR,
    CatalanTriangle,
    CandidateRuns,
}

fn source(name: &str) -> Result<Source> {
    let unknown = || Error::UnsupportedFamily(format!("table {name}"));
    let modulus = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let fixed = match name {
        "nointparts" => Some(Source::IntParts),
        "noorderedintparts" => Some(Source::OrderedIntParts),
        "nopmodmonDclasses" => Some(Source::PmodD),
        "nomodmonDclasses" => Some(Source::ModD),
        "nopmodmonRclasses" => Some(Source::PmodR),
        "nomodmonRclasses" => Some(Source::ModR),
        "Rjivalues" => Some(Source::CatalanTriangle),
        "candidateRjivalues" => Some(Source::CandidateRuns),
        _ => None,
    };
    if let Some(s) = fixed {
        return Ok(s);
    }
    if let Some(rest) = name.strip_suffix("moncards") {
        for (prefix, make) in [
            ("capsismon", Source::XApsisCards as fn(usize) -> Source),
            ("apsismod", Source::ApsisCards),
            ("pmod", Source::PmodCards),
            ("mod", Source::ModCards),
        ] {
            if let Some(m) = rest.strip_prefix(prefix) {
                return Ok(make(modulus(m)?));
            }
        }
        return Err(unknown());
    }
    let parts: Vec<&str> = name.split('_').collect();
    let make: fn(usize) -> Source = match parts.as_slice() {
        ["PT", _, "k1", "k2"] => Source::Pt,
        ["XT", _, "k1", "k2"] => Source::Xt,
        ["PN", _, "k", "t"] => Source::PnVec,
        ["PNB", _, "k", "t"] => Source::PnbVec,
        ["XN", _, "k", "t"] => Source::XnVec,
        ["XNB", _, "k", "t"] => Source::XnbVec,
        _ => return Err(unknown()),
    };
    Ok(make(modulus(parts[1])?))
}

fn number(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(0, format!("expected an integer, got {s:?}")))
}

fn vector(s: &str) -> Result<Vec<usize>> {
    s.split('-').map(number).collect()
}

/// Recomputes tables cell by cell.
#[derive(Debug, Default)]
pub struct Reproducer {
    run_counts: Option<BTreeMap<(usize, usize), usize>>,
    max_elements: usize,
}

impl Reproducer {
    pub fn new(max_elements: usize) -> Self {
        Reproducer {
            run_counts: None,
            max_elements,
        }
    }

    fn candidate(&mut self, j: usize, i: usize, top: usize) -> Result<BigNat> {
        if self.run_counts.is_none() {
            let words = geodesic_lex_words(top + 1, LetterOrder::DiapsisFirst, self.max_elements)?;
            self.run_counts = Some(terminal_run_counts(words.iter().map(|(_, w)| w)));
        }
        let counts = self.run_counts.as_ref().expect("filled above");
        Ok(BigNat::from(counts.get(&(j, i)).copied().unwrap_or(0)))
    }

    /// The value of one cell, as exact decimal text.
    pub fn cell(&mut self, table: &str, row: &str, col: &str, top_row: usize) -> Result<String> {
        let value = match source(table)? {
            Source::Pt(m) => counting::pt(m, number(row)?, number(col)?),
            Source::Xt(m) => counting::xt(m, number(row)?, number(col)?),
            Source::PnVec(m) => counting::pn_vec(m, number(row)?, &vector(col)?),
            Source::PnbVec(m) => counting::pnb_vec(m, number(row)?, &vector(col)?),
            Source::XnVec(m) => counting::xn_vec(m, number(row)?, &vector(col)?),
            Source::XnbVec(m) => counting::xnb_vec(m, number(row)?, &vector(col)?),
            Source::PmodCards(m) => card_cell(row, col, |k| counting::pm_card(m, k), |k, t| counting::pn(m, k, t))?,
            Source::ModCards(m) => card_cell(row, col, |k| counting::mod_card(m, k), |k, t| counting::xn(m, k, t))?,
            Source::ApsisCards(m) => card_cell(row, col, |k| counting::apsis_card(m, k), |k, t| counting::pnb(m, k, t))?,
            Source::XApsisCards(m) => {
                card_cell(row, col, |k| counting::xapsis_card(m, k), |k, t| counting::xnb(m, k, t))?
            }
            Source::IntParts => counting::p_parts_bounded(number(row)?, number(col)?),
            Source::OrderedIntParts => counting::o_parts_bounded(number(row)?, number(col)?),
            Source::PmodD => counting::d_classes_pmod(number(row)?, number(col)?)?,
            Source::ModD => counting::d_classes_mod(number(row)?, number(col)?)?,
            Source::PmodR => counting::r_classes_pmod(number(row)?, number(col)?)?,
            Source::ModR => counting::r_classes_mod(number(row)?, number(col)?)?,
            Source::CatalanTriangle => counting::catalan_triangle(number(row)?, number(col)?)?,
            Source::CandidateRuns => self.candidate(number(row)?, number(col)?, top_row)?,
        };
        Ok(value.to_string())
    }

    /// Recomputes every cell of `fixture`, keeping its order and coordinates.
    pub fn reproduce(&mut self, fixture: &Table) -> Result<Table> {
        let top_row = fixture.cells.iter().filter_map(|c| c.row.parse::<usize>().ok()).max().unwrap_or(0);
        let cells = fixture
            .cells
            .iter()
            .map(|c| {
                Ok(Cell {
                    row: c.row.clone(),
                    col: c.col.clone(),
                    value: self.cell(&fixture.name, &c.row, &c.col, top_row)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Table {
            name: fixture.name.clone(),
            cells,
        })
    }
}

fn card_cell(
    row: &str,
    col: &str,
    card: impl Fn(usize) -> Result<BigNat>,
    patterns: impl Fn(usize, usize) -> BigNat,
) -> Result<BigNat> {
    let k = number(row)?;
    if col == "card" {
        card(k)
    } else {
        Ok(patterns(k, number(col)?))
    }
}
