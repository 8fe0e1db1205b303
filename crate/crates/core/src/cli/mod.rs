//! The `pmon` command line.

pub mod tables;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::counting;
use crate::enumerate::{self, all_bipartitions, cayley, close, ElementSet};
use crate::error::Error;
use crate::families::{Family, FamilyKind};
use crate::greens::{classes_by_ideals, classes_by_pattern, GreensPartition, Relation};
use crate::words::{
    conjecture_rows, geodesic_lex_words, presentation_check, terminal_run_counts, LetterOrder, PresentationName,
};
use crate::Bipartition;

use tables::{fixtures_dir, read_fixture, table_names, Reproducer, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "pmon", version, about = "Exact computation in partition monoids and their submonoids")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "PMON_FORMAT", default_value = "text")]
    pub format: Format,
    /// Largest monoid that enumeration may build.
    #[arg(long, global = true, default_value_t = enumerate::DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
    /// Largest degree for exhaustive iteration over all bipartitions.
    #[arg(long, global = true, default_value_t = enumerate::DEFAULT_MAX_BELL_DEGREE)]
    pub max_bell_degree: usize,
    /// Largest degree for word enumeration.
    #[arg(long, global = true, default_value_t = 6)]
    pub word_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Operands {
    /// Degree; inferred from the largest index when omitted.
    #[arg(short)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Pattern,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Close the generating set under products.
    Closure,
    /// Filter every bipartition by the membership test.
    Filter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Pm,
    Mod,
    Apsis,
    Xapsis,
    Pt,
    Xt,
    Pn,
    Xn,
    Pnb,
    Xnb,
    PmodDclasses,
    ModDclasses,
    PmodRclasses,
    ModRclasses,
    CatalanTriangle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two bipartitions.
    Product {
        #[command(flatten)]
        degree: Operands,
        left: String,
        right: String,
    },
    /// Involution (swap of the two rows).
    Star {
        #[command(flatten)]
        degree: Operands,
        element: String,
    },
    /// Horizontal sum.
    Hsum { left: String, right: String },
    /// Membership of a bipartition in a family.
    Member {
        #[arg(long)]
        family: FamilyKind,
        #[command(flatten)]
        degree: Operands,
        element: String,
    },
    /// List every element of a family.
    Enumerate {
        #[arg(long)]
        family: FamilyKind,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "closure")]
        source: Source,
        /// Write JSON lines here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Green's classes of a family.
    Greens {
        #[arg(long)]
        family: FamilyKind,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value = "d")]
        relation: Relation,
        #[arg(long, value_enum, default_value = "pattern")]
        method: Method,
    },
    /// Closed-form counts.
    Count {
        #[arg(long, value_enum)]
        what: Quantity,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(short)]
        k: usize,
        /// Second degree for transversal counts, or `i` for Catalan's triangle.
        #[arg(long)]
        k2: Option<usize>,
        /// Block-size vector `t1-t2-…`, or a total number of points.
        #[arg(long)]
        t: Option<String>,
    },
    /// Recompute published tables and compare them with the fixtures.
    Tables {
        /// Table name, or `all`.
        #[arg(long)]
        reproduce: String,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Shortlex-least geodesic words for the planar mod-2 monoid.
    NormalForms {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value = "diapsis-first")]
        order: LetterOrder,
        /// Print terminal-run counts and the conjectural closed forms instead.
        #[arg(long)]
        runs: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Soundness and bounded enumeration of a presentation.
    PresentationCheck {
        #[arg(long)]
        name: PresentationName,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 14)]
        cap: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Mismatch(String),
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn parse(text: &str, k: Option<usize>) -> Result<Bipartition, Error> {
    match k {
        Some(k) => Bipartition::from_text_with_degree(text, k),
        None => Bipartition::from_text(text),
    }
}

fn emit_element(out: &mut dyn Write, format: Format, a: &Bipartition) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&a.to_json()).expect("serializable")),
        Format::Text | Format::Csv => writeln!(out, "{a}"),
    }
}

fn emit_value(out: &mut dyn Write, format: Format, key: &str, value: &str) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{value}"),
        Format::Json => writeln!(out, "{}", json!({ key: value })),
        Format::Csv => writeln!(out, "{key}\n{value}"),
    }
}

fn family_elements(cli: &Cli, family: Family, source: Source) -> Result<ElementSet, Error> {
    match source {
        Source::Closure => close(family.degree, &family.generating_set(), cli.max_elements),
        Source::Filter => {
            let mut kept = Vec::new();
            for a in all_bipartitions(family.degree, cli.max_bell_degree)? {
                if family.member(&a)? {
                    kept.push(a);
                }
            }
            ElementSet::new(family.degree, kept)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Product { degree, left, right } => {
            let a = parse(left, degree.k)?;
            let b = parse(right, degree.k)?;
            emit_element(out, format, &a.product(&b)?)?;
        }
        Command::Star { degree, element } => emit_element(out, format, &parse(element, degree.k)?.star())?,
        Command::Hsum { left, right } => {
            let a = Bipartition::from_text(left)?;
            let b = Bipartition::from_text(right)?;
            emit_element(out, format, &a.hsum(&b))?;
        }
        Command::Member { family, degree, element } => {
            let a = parse(element, degree.k)?;
            let verdict = Family::new(*family, a.degree())?.member(&a)?;
            emit_value(out, format, "member", &verdict.to_string())?;
        }
        Command::Enumerate { family, k, source, out: path } => {
            let set = family_elements(cli, Family::new(*family, *k)?, *source)?;
            let mut file;
            let sink: &mut dyn Write = match path {
                Some(p) => {
                    file = BufWriter::new(File::create(p)?);
                    &mut file
                }
                None => out,
            };
            enumerate_report(sink, format, *family, *k, &set)?;
            sink.flush()?;
        }
        Command::Greens { family, k, relation, method } => {
            let gens = Family::new(*family, *k)?.generating_set();
            let (set, partition) = match method {
                Method::Pattern => {
                    let set = close(*k, &gens, cli.max_elements)?;
                    let partition = classes_by_pattern(&set, *relation)?;
                    (set, partition)
                }
                Method::Ideal => {
                    let graph = cayley(*k, &gens, cli.max_elements)?;
                    let partition = classes_by_ideals(&graph, *relation);
                    (graph.elements, partition)
                }
            };
            greens_report(out, format, &set, &partition)?;
        }
        Command::Count { what, m, k, k2, t } => {
            let value = count(*what, *m, *k, *k2, t.as_deref())?;
            emit_value(out, format, "value", &value)?;
        }
        Command::Tables { reproduce, fixtures } => {
            let dir = fixtures.clone().unwrap_or_else(fixtures_dir);
            let names = if reproduce == "all" {
                table_names(&dir)?
            } else {
                vec![reproduce.clone()]
            };
            let mut rep = Reproducer::new(cli.max_elements);
            let mut mismatched = Vec::new();
            for name in &names {
                let fixture = read_fixture(&dir, name)?;
                let ours = rep.reproduce(&fixture)?;
                let diff = fixture.diff(&ours);
                if !diff.is_empty() {
                    mismatched.push(name.clone());
                }
                tables_report(out, format, names.len() > 1, &ours, diff.len())?;
            }
            if !mismatched.is_empty() {
                return Err(CliError::Mismatch(format!("tables differ from fixtures: {}", mismatched.join(", "))));
            }
        }
        Command::NormalForms { m, k, order, runs, out: path } => {
            if *m != 2 {
                return Err(Error::UnsupportedRange(format!("normal forms are implemented for m = 2, got {m}")).into());
            }
            if *k > cli.word_cap {
                return Err(Error::LimitExceeded {
                    degree: *k,
                    limit: cli.word_cap,
                }
                .into());
            }
            let words = geodesic_lex_words(*k, *order, cli.max_elements)?;
            let mut file;
            let sink: &mut dyn Write = match path {
                Some(p) => {
                    file = BufWriter::new(File::create(p)?);
                    &mut file
                }
                None => out,
            };
            if *runs {
                let counts = terminal_run_counts(words.iter().map(|(_, w)| w));
                for ((j, i), n) in &counts {
                    match format {
                        Format::Json => writeln!(sink, "{}", json!({"j": j, "i": i, "count": n}))?,
                        _ => writeln!(sink, "run\t{j}\t{i}\t{n}")?,
                    }
                }
                for row in conjecture_rows(&counts, *k) {
                    match format {
                        Format::Json => writeln!(
                            sink,
                            "{}",
                            json!({"conjectural": row.label, "j": row.top, "observed": row.observed,
                                   "predicted": row.predicted.to_string(), "agrees": row.agrees()})
                        )?,
                        _ => writeln!(
                            sink,
                            "conjectural\t{}\t{}\t{}\t{}\t{}",
                            row.label,
                            row.top,
                            row.observed,
                            row.predicted,
                            if row.agrees() { "agrees" } else { "differs" }
                        )?,
                    }
                }
            } else {
                let mut sorted = words;
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                for (a, w) in &sorted {
                    match format {
                        Format::Json => writeln!(
                            sink,
                            "{}",
                            json!({"element": a.to_text(), "word": w.to_string(), "length": w.len()})
                        )?,
                        _ => writeln!(sink, "{a}\t{w}")?,
                    }
                }
            }
            sink.flush()?;
        }
        Command::PresentationCheck { name, k, cap } => {
            let check = presentation_check(*name, *k, *cap, cli.max_elements)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"name": name.to_string(), "k": k, "cap": cap, "class_count": check.class_count,
                           "stabilized": check.stabilized, "relations": check.soundness.checked,
                           "unsound": check.soundness.failures})
                )?,
                Format::Csv => writeln!(
                    out,
                    "name,k,cap,class_count,stabilized,relations,unsound\n{name},{k},{cap},{},{},{},{}",
                    check.class_count,
                    check.stabilized,
                    check.soundness.checked,
                    check.soundness.failures.len()
                )?,
                Format::Text => {
                    writeln!(out, "class_count\t{}", check.class_count)?;
                    writeln!(out, "stabilized\t{}", check.stabilized)?;
                    writeln!(out, "relations\t{}", check.soundness.checked)?;
                    writeln!(out, "unsound\t{:?}", check.soundness.failures)?;
                }
            }
        }
    }
    Ok(())
}

fn enumerate_report(
    out: &mut dyn Write,
    format: Format,
    family: FamilyKind,
    k: usize,
    set: &ElementSet,
) -> io::Result<()> {
    match format {
        Format::Json => {
            for a in set {
                writeln!(out, "{}", serde_json::to_string(&a.to_json()).expect("serializable"))?;
            }
            writeln!(
                out,
                "{}",
                json!({"summary": true, "family": family.to_string(), "k": k, "count": set.len()})
            )
        }
        Format::Csv => {
            writeln!(out, "index,element")?;
            for (i, a) in set.iter().enumerate() {
                writeln!(out, "{i},\"{a}\"")?;
            }
            Ok(())
        }
        Format::Text => {
            for a in set {
                writeln!(out, "{a}")?;
            }
            writeln!(out, "count\t{}", set.len())
        }
    }
}

fn greens_report(out: &mut dyn Write, format: Format, set: &ElementSet, p: &GreensPartition) -> io::Result<()> {
    let members = |c: &[usize]| c.iter().map(|&i| set.get(i).to_text()).collect::<Vec<_>>();
    match format {
        Format::Json => {
            let classes: Vec<Vec<String>> = p.classes.iter().map(|c| members(c)).collect();
            writeln!(out, "{}", json!({"relation": p.relation.to_string(), "count": p.len(), "classes": classes}))
        }
        Format::Csv => {
            writeln!(out, "class,element")?;
            for (n, c) in p.classes.iter().enumerate() {
                for e in members(c) {
                    writeln!(out, "{n},\"{e}\"")?;
                }
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{}-classes\t{}", p.relation.to_string().to_uppercase(), p.len())?;
            for (n, c) in p.classes.iter().enumerate() {
                writeln!(out, "class {n} ({} elements)", c.len())?;
                for e in members(c) {
                    writeln!(out, "  {e}")?;
                }
            }
            Ok(())
        }
    }
}

fn tables_report(out: &mut dyn Write, format: Format, several: bool, table: &Table, differing: usize) -> io::Result<()> {
    match (format, several) {
        (Format::Json, _) => writeln!(
            out,
            "{}",
            json!({"table": table.name, "cells": table.cells.len(), "differing": differing,
                   "values": if several { serde_json::Value::Null } else { serde_json::to_value(&table.cells).expect("serializable") }})
        ),
        (_, true) => writeln!(
            out,
            "{}\t{}\t{} cells",
            table.name,
            if differing == 0 { "identical" } else { "DIFFERS" },
            table.cells.len()
        ),
        (_, false) => write!(out, "{}", table.to_csv()),
    }
}

fn count(what: Quantity, m: usize, k: usize, k2: Option<usize>, t: Option<&str>) -> Result<String, Error> {
    if m == 0 {
        return Err(Error::Range("modulus must be positive".into()));
    }
    let need_k2 = || k2.ok_or_else(|| Error::Range("--k2 is required for this count".into()));
    let vector = || -> Result<Vec<usize>, Error> {
        let text = t.ok_or_else(|| Error::Range("--t is required for this count".into()))?;
        text.split('-')
            .map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad vector entry {x:?}"))))
            .collect()
    };
    let total_or_vector = |vec_fn: fn(usize, usize, &[usize]) -> counting::BigNat,
                           total_fn: fn(usize, usize, usize) -> counting::BigNat|
     -> Result<counting::BigNat, Error> {
        let v = vector()?;
        Ok(match t {
            Some(text) if !text.contains('-') => total_fn(m, k, v[0]),
            _ => vec_fn(m, k, &v),
        })
    };
    let value = match what {
        Quantity::Pm => counting::pm_card(m, k)?,
        Quantity::Mod => counting::mod_card(m, k)?,
        Quantity::Apsis => counting::apsis_card(m, k)?,
        Quantity::Xapsis => counting::xapsis_card(m, k)?,
        Quantity::Pt => counting::pt(m, k, need_k2()?),
        Quantity::Xt => counting::xt(m, k, need_k2()?),
        Quantity::Pn => total_or_vector(counting::pn_vec, counting::pn)?,
        Quantity::Xn => total_or_vector(counting::xn_vec, counting::xn)?,
        Quantity::Pnb => total_or_vector(counting::pnb_vec, counting::pnb)?,
        Quantity::Xnb => total_or_vector(counting::xnb_vec, counting::xnb)?,
        Quantity::PmodDclasses => counting::d_classes_pmod(m, k)?,
        Quantity::ModDclasses => counting::d_classes_mod(m, k)?,
        Quantity::PmodRclasses => counting::r_classes_pmod(m, k)?,
        Quantity::ModRclasses => counting::r_classes_mod(m, k)?,
        Quantity::CatalanTriangle => counting::catalan_triangle(k, need_k2()?)?,
    };
    Ok(value.to_string())
}
