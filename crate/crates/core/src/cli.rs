//! The `reldecay` command-line driver.
//!
//! Exit codes: 0 on success, 1 on a domain error (unknown group, invalid
//! catalog, failed computation), 2 on a usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{Catalog, GroupCatalogEntry};
use crate::decay::{sharp_p_from_exponents, Binding, Exponent, Threshold};
use crate::error::{Error, Result};
use crate::parabolic::{heisenberg_tower, radical_to_parabolic, subsystem_delta, half_density, TowerLevel};
use crate::pipeline::{h2_bound, nonminimal_bound, pipeline, DecayReport, GroupSetup, H2Bound, SearchMode};
use crate::roots::{Root, Weight};
use crate::weyl::WeylElement;

#[derive(Parser, Debug)]
#[command(name = "reldecay", version, about = "Exact L^p decay bounds for groups of relative type F4")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Catalog file to use instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    G,
    H1,
    H2,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Word(Vec<usize>);

fn parse_word(s: &str) -> std::result::Result<Word, String> {
    let t = s.trim();
    if t.is_empty() || t == "id" || t == "e" {
        return Ok(Word(Vec::new()));
    }
    let parts: Vec<&str> = if t.contains(',') || t.contains(' ') {
        t.split([',', ' ']).filter(|p| !p.is_empty()).collect()
    } else {
        t.split("").filter(|p| !p.is_empty()).collect()
    };
    parts
        .iter()
        .map(|p| {
            let p = p.trim_start_matches('s');
            match p.parse::<usize>() {
                Ok(0) | Err(_) => Err(format!("`{s}` is not a word of simple-reflection indices (e.g. 4,2,3,2,1)")),
                Ok(i) => Ok(i),
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Word)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots with heights, lengths and multiplicities.
    Roots { group: String },
    /// The Heisenberg tower and the parabolic its radicals assemble into.
    Tower { group: String },
    /// Modular weights of G, H1 and H2, optionally conjugated by a word.
    Delta {
        group: String,
        #[arg(long, value_enum, default_value_t = Which::All)]
        subsystem: Which,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
    },
    /// Sharp threshold of the minimal representation from its exponents.
    SharpP { group: String },
    /// Bound for non-minimal representations via H1 and H2.
    Nonminimal {
        group: String,
        /// Scan the whole Weyl group instead of the catalog words.
        #[arg(long, conflicts_with = "word")]
        search: bool,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
    },
    /// Full decay report.
    Pipeline { group: String },
    /// Scan the whole Weyl group for the best conjugate.
    Search { group: String },
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let catalog = match &cli.catalog {
        Some(p) => Catalog::load(p)?,
        None => Catalog::builtin(),
    };
    let fmt = cli.format;
    match &cli.command {
        Command::Roots { group } => render(fmt, &roots(catalog.get(group)?)?, roots_table),
        Command::Tower { group } => render(fmt, &tower(catalog.get(group)?)?, tower_table),
        Command::Delta { group, subsystem, word } => {
            let w = word.clone().map(|w| w.0).unwrap_or_default();
            render(fmt, &delta(catalog.get(group)?, *subsystem, &w)?, delta_table)
        }
        Command::SharpP { group } => render(fmt, &sharp(catalog.get(group)?)?, sharp_table),
        Command::Nonminimal { group, search, word } => {
            let mode = match (search, word) {
                (_, Some(w)) => SearchMode::Word(w.0.clone()),
                (true, None) => SearchMode::Full,
                (false, None) => SearchMode::Candidates,
            };
            render(fmt, &nonminimal(catalog.get(group)?, &mode)?, nonminimal_table)
        }
        Command::Pipeline { group } => render(fmt, &pipeline(catalog.get(group)?)?, pipeline_table),
        Command::Search { group } => render(fmt, &search(catalog.get(group)?)?, search_table),
    }
}

fn render<T: Serialize>(fmt: Format, value: &T, table: fn(&T) -> String) -> Result<String> {
    match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Decay(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Table => Ok(table(value)),
    }
}

fn row(s: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(s, "{key:<24} {value}");
}

fn word_string(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("none".into(), |v| v.to_string())
}

// ---- roots ----

#[derive(Serialize)]
struct RootRow {
    root: Root,
    height: i64,
    squared_length: i64,
    multiplicity: u32,
}

#[derive(Serialize)]
struct RootsOut {
    group: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    multiplicity_by_length: BTreeMap<String, u32>,
    highest_root: Root,
    positive_roots: Vec<RootRow>,
}

fn roots(entry: &GroupCatalogEntry) -> Result<RootsOut> {
    let sys = entry.root_system()?;
    Ok(RootsOut {
        group: entry.name.clone(),
        rank: sys.rank(),
        cartan: sys.cartan().to_vec(),
        symmetrizer: sys.symmetrizer().to_vec(),
        multiplicity_by_length: sys
            .multiplicity_by_length()
            .iter()
            .map(|(l, m)| (l.to_string(), *m))
            .collect(),
        highest_root: sys.highest_root()?,
        positive_roots: sys
            .positive_roots()
            .iter()
            .map(|r| RootRow {
                root: r.clone(),
                height: r.height(),
                squared_length: sys.squared_length(r),
                multiplicity: sys.multiplicity(r),
            })
            .collect(),
    })
}

fn roots_table(o: &RootsOut) -> String {
    let mut s = String::new();
    row(&mut s, "group", &o.group);
    row(&mut s, "highest root", &o.highest_root);
    row(&mut s, "positive roots", o.positive_roots.len());
    let _ = writeln!(s, "{:<20} {:>6} {:>6} {:>6}", "root", "height", "|r|^2", "mult");
    for r in &o.positive_roots {
        let _ = writeln!(
            s,
            "{:<20} {:>6} {:>6} {:>6}",
            r.root.to_string(),
            r.height,
            r.squared_length,
            r.multiplicity
        );
    }
    s
}

// ---- tower ----

#[derive(Serialize)]
struct TowerOut {
    group: String,
    levels: Vec<TowerLevel>,
    sizes: Vec<usize>,
    heisenberg_levi_simple_indices: Vec<usize>,
    union_size: usize,
    union_levi_simple_indices: Vec<usize>,
}

fn tower(entry: &GroupCatalogEntry) -> Result<TowerOut> {
    let sys = entry.root_system()?;
    let levels = heisenberg_tower(&sys)?;
    let first = radical_to_parabolic(&sys, &levels[0].radical_roots)?;
    let union: Vec<Root> = levels.iter().flat_map(|l| l.radical_roots.iter().cloned()).collect();
    let shape = radical_to_parabolic(&sys, &union)?;
    Ok(TowerOut {
        group: entry.name.clone(),
        sizes: levels.iter().map(|l| l.radical_roots.len()).collect(),
        heisenberg_levi_simple_indices: first.levi_simple_indices.into_iter().collect(),
        union_size: union.len(),
        union_levi_simple_indices: shape.levi_simple_indices.into_iter().collect(),
        levels,
    })
}

fn tower_table(o: &TowerOut) -> String {
    let mut s = String::new();
    row(&mut s, "group", &o.group);
    let _ = writeln!(s, "{:<6} {:<8} {:<16} {:>5} {:<8}", "level", "ambient", "center", "size", "abelian");
    for l in &o.levels {
        let _ = writeln!(
            s,
            "{:<6} {:<8} {:<16} {:>5} {:<8}",
            l.level_index,
            l.ambient_type,
            l.center_root.to_string(),
            l.radical_roots.len(),
            l.is_abelian
        );
    }
    row(&mut s, "Heisenberg Levi", format!("{:?}", o.heisenberg_levi_simple_indices));
    row(&mut s, "union size", o.union_size);
    row(&mut s, "union Levi", format!("{:?}", o.union_levi_simple_indices));
    s
}

// ---- delta ----

#[derive(Serialize)]
struct DeltaOut {
    group: String,
    word: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_g: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_h1: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_h2: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    half_density: Option<Weight>,
}

fn delta(entry: &GroupCatalogEntry, which: Which, word: &[usize]) -> Result<DeltaOut> {
    let setup = GroupSetup::new(entry)?;
    let sys = &setup.sys;
    let w = WeylElement::from_word(sys, word)?;
    let h1 = setup.h1.conjugate(sys, &w);
    let h2 = setup.h2.conjugate(sys, &w);
    let mut out = DeltaOut {
        group: entry.name.clone(),
        word: word.to_vec(),
        delta_g: None,
        delta_h1: None,
        delta_h2: None,
        k: None,
        half_density: None,
    };
    if matches!(which, Which::G | Which::All) {
        out.delta_g = Some(setup.delta_g.clone());
    }
    if matches!(which, Which::H1 | Which::All) && !h1.is_empty() {
        out.delta_h1 = Some(subsystem_delta(sys, &h1));
    }
    if matches!(which, Which::H2 | Which::All) && !h2.is_empty() {
        out.delta_h2 = Some(subsystem_delta(sys, &h2));
    }
    if which == Which::All && !h1.is_empty() {
        // k values need the H2 threshold; skip the combination when unavailable
        let k1 = entry.h1_threshold.and_then(|t| t.half_ceiling());
        let k2 = h2_bound(&setup).ok().and_then(|b| b.threshold_h2.half_ceiling());
        if let (Some(k1), Some(k2)) = (k1, k2) {
            out.k = Some([k1, k2]);
            out.half_density = Some(half_density(sys, &[(&h1, k1), (&h2, k2)]));
        }
    }
    Ok(out)
}

fn delta_table(o: &DeltaOut) -> String {
    let mut s = String::new();
    row(&mut s, "group", &o.group);
    row(&mut s, "w", word_string(&o.word));
    if let Some(d) = &o.delta_g {
        row(&mut s, "log delta_G", d);
    }
    if let Some(d) = &o.delta_h1 {
        row(&mut s, "log delta_H1^w", d);
    }
    if let Some(d) = &o.delta_h2 {
        row(&mut s, "log delta_H2^w", d);
    }
    if let (Some(k), Some(h)) = (&o.k, &o.half_density) {
        row(&mut s, &format!("half-density (k={},{})", k[0], k[1]), h);
    }
    s
}

// ---- sharp-p ----

#[derive(Serialize)]
struct ExponentRow {
    exponent: Exponent,
    threshold: Threshold,
    coordinate: usize,
}

#[derive(Serialize)]
struct SharpOut {
    group: String,
    delta_g: Weight,
    exponents: Vec<ExponentRow>,
    p_min_sharp: Threshold,
    binding: Binding,
}

fn sharp(entry: &GroupCatalogEntry) -> Result<SharpOut> {
    let setup = GroupSetup::new(entry)?;
    if entry.min_rep_exponents.is_empty() {
        return Err(Error::Incomplete {
            name: entry.name.clone(),
            field: "min_rep_exponents",
        });
    }
    let total = sharp_p_from_exponents(&setup.delta_g, &entry.min_rep_exponents)?;
    let exponents = entry
        .min_rep_exponents
        .iter()
        .map(|e| {
            let t = sharp_p_from_exponents(&setup.delta_g, std::slice::from_ref(e))?;
            Ok(ExponentRow {
                exponent: e.clone(),
                threshold: t.threshold,
                coordinate: t.binding.coordinate,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SharpOut {
        group: entry.name.clone(),
        delta_g: setup.delta_g,
        exponents,
        p_min_sharp: total.threshold,
        binding: total.binding,
    })
}

fn sharp_table(o: &SharpOut) -> String {
    let mut s = String::new();
    row(&mut s, "group", &o.group);
    row(&mut s, "log delta_G", &o.delta_g);
    for (i, e) in o.exponents.iter().enumerate() {
        row(
            &mut s,
            &format!("exponent {i}"),
            format!("{}  p >= {} (coordinate {})", e.exponent.0, e.threshold, e.coordinate),
        );
    }
    row(&mut s, "sharp p(pi_min)", o.p_min_sharp);
    s
}

// ---- nonminimal ----

#[derive(Serialize)]
struct NonminimalOut {
    group: String,
    h2: H2Bound,
    threshold_h1: Threshold,
    k_h1: u32,
    k_h2: u32,
    mode: String,
    evaluated: usize,
    optimal_count: usize,
    witness_word: Vec<usize>,
    half_density: Weight,
    p_nonminimal: Threshold,
    binding: Binding,
}

fn nonminimal(entry: &GroupCatalogEntry, mode: &SearchMode) -> Result<NonminimalOut> {
    let setup = GroupSetup::new(entry)?;
    let nm = nonminimal_bound(&setup, mode)?;
    Ok(NonminimalOut {
        group: entry.name.clone(),
        threshold_h1: nm.h1_bound.threshold,
        k_h1: nm.h1_bound.k,
        k_h2: nm.h2_bound.k,
        mode: nm.mode.to_string(),
        evaluated: nm.search.evaluated,
        optimal_count: nm.search.optimal_count,
        witness_word: nm.search.witness.word().to_vec(),
        half_density: nm.search.half_density,
        p_nonminimal: nm.search.best.threshold,
        binding: nm.search.best.binding,
        h2: nm.h2,
    })
}

fn h2_rows(s: &mut String, h2: &H2Bound) {
    row(s, "log delta_H2", &h2.delta_h2);
    row(s, &format!("  restricted (no y_{})", h2.eliminated), &h2.delta_h2_restricted);
    row(s, "log Phi", &h2.phi_exponents);
    row(s, "q (oscillator)", h2.q_h2);
    row(s, "Levi factor bound", h2.levi_factor_bound);
    row(s, "H2 threshold", h2.threshold_h2);
}

fn nonminimal_table(o: &NonminimalOut) -> String {
    let mut s = String::new();
    row(&mut s, "group", &o.group);
    h2_rows(&mut s, &o.h2);
    row(&mut s, "H1 threshold", o.threshold_h1);
    row(&mut s, "k (H1, H2)", format!("{}, {}", o.k_h1, o.k_h2));
    row(&mut s, "candidates", format!("{} ({})", o.evaluated, o.mode));
    row(&mut s, "w", word_string(&o.witness_word));
    row(&mut s, "half-density", &o.half_density);
    row(&mut s, "non-minimal bound", o.p_nonminimal);
    s
}

// ---- pipeline ----

fn pipeline_table(r: &DecayReport) -> String {
    let mut s = String::new();
    row(&mut s, "group", &r.group);
    if let Some(l) = &r.label {
        row(&mut s, "label", l);
    }
    row(&mut s, "short multiplicity", r.short_multiplicity);
    row(&mut s, "highest root", &r.highest_root);
    row(&mut s, "log delta_G", &r.delta_g);
    row(&mut s, "log delta_H1", &r.delta_h1);
    row(&mut s, "log delta_H2", &r.delta_h2);
    row(&mut s, "  restricted", &r.delta_h2_restricted);
    row(&mut s, "log Phi", &r.phi_exponents);
    row(&mut s, "q (oscillator)", r.q_h2);
    row(&mut s, "Levi factor bound", r.levi_factor_bound);
    row(&mut s, "H1 threshold", r.threshold_h1);
    row(&mut s, "H2 threshold", r.threshold_h2);
    row(&mut s, "k (H1, H2)", format!("{}, {}", r.k_h1, r.k_h2));
    row(&mut s, "w", word_string(&r.witness_word));
    row(&mut s, "half-density", &r.half_density);
    row(&mut s, "non-minimal bound", r.p_nonminimal);
    row(&mut s, "sharp p(pi_min)", r.p_min_sharp);
    if r.p_of_g_sharp {
        row(&mut s, "p(G)", r.p_of_g);
    } else {
        row(&mut s, "p(G)", format!("in [{}, {}]", r.p_of_g_lower, r.p_of_g));
    }
    row(&mut s, "isolation k", opt(&r.isolation));
    s
}

// ---- search ----

#[derive(Serialize)]
struct CandidateRow {
    word: Vec<usize>,
    threshold: Threshold,
}

#[derive(Serialize)]
struct SearchOut {
    group: String,
    evaluated: usize,
    optimal_count: usize,
    best: Threshold,
    binding: Binding,
    witness_word: Vec<usize>,
    half_density: Weight,
    catalog_candidates: Vec<CandidateRow>,
}

fn search(entry: &GroupCatalogEntry) -> Result<SearchOut> {
    let setup = GroupSetup::new(entry)?;
    let nm = nonminimal_bound(&setup, &SearchMode::Full)?;
    let catalog_candidates = entry
        .candidate_words
        .iter()
        .map(|w| {
            let b = nonminimal_bound(&setup, &SearchMode::Word(w.clone()))?;
            Ok(CandidateRow {
                word: w.clone(),
                threshold: b.search.best.threshold,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SearchOut {
        group: entry.name.clone(),
        evaluated: nm.search.evaluated,
        optimal_count: nm.search.optimal_count,
        best: nm.search.best.threshold,
        binding: nm.search.best.binding,
        witness_word: nm.search.witness.word().to_vec(),
        half_density: nm.search.half_density,
        catalog_candidates,
    })
}

fn search_table(o: &SearchOut) -> String {
    let mut s = String::new();
    row(&mut s, "group", &o.group);
    row(&mut s, "elements scanned", o.evaluated);
    row(&mut s, "best bound", o.best);
    row(&mut s, "attained by", format!("{} elements", o.optimal_count));
    row(&mut s, "witness w", word_string(&o.witness_word));
    row(&mut s, "half-density", &o.half_density);
    for c in &o.catalog_candidates {
        row(&mut s, &format!("catalog w = {}", word_string(&c.word)), c.threshold);
    }
    s
}
