//! Batch front end: each [`Command`] runs one sweep or emits one table and
//! renders it as JSON, aligned text or CSV.
//!
//! Every JSON document carries `"schema": "v1"` and a `"kind"` naming the
//! command. Output goes to `--out` when given, otherwise into the directory
//! named by [`OUT_DIR_ENV`] when set, otherwise to stdout.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use nichols_w3::freefield::{self, checks as cft, hw};
use nichols_w3::nichols::{self, NicholsElem, PbwIndex};
use nichols_w3::rational::{Rational, RationalPair};
use nichols_w3::report::{CheckEntry, CheckReport};
use nichols_w3::ydmod;

pub const SCHEMA: &str = "v1";
/// Default output directory when `--out` is absent.
pub const OUT_DIR_ENV: &str = "NICHOLS_W3_OUT_DIR";

/// Exit status for a run whose checks failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for invalid configurations and computation errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "txt",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Concat,
    Shuffle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    NicholsTable { op: Op },
    NicholsVerify,
    YdmodDims,
    CftVerify,
    CftOctuplet,
    CftSingvec { m: Rational, n: Rational },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::NicholsTable { .. } => "nichols-table",
            Command::NicholsVerify => "nichols-verify",
            Command::YdmodDims => "ydmod-dims",
            Command::CftVerify => "cft-verify",
            Command::CftOctuplet => "cft-octuplet",
            Command::CftSingvec { .. } => "cft-singvec",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Largest word length the tensor oracle builds.
    pub grade: usize,
    /// Random triples for the associativity sweep.
    pub samples: usize,
    pub seed: u64,
    /// Labels `1..=range` for the dimension table.
    pub range: i64,
    pub max_level: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            grade: 8,
            samples: 1000,
            seed: 7,
            range: 6,
            max_level: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u32,
    pub command: Command,
    pub bounds: Bounds,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(p: u32, command: Command) -> Self {
        RunConfig {
            p,
            command,
            bounds: Bounds::default(),
            out: None,
            format: Format::Json,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            bail!("p must be at least 2, got {}", self.p);
        }
        let b = &self.bounds;
        if b.grade == 0 || b.samples == 0 || b.range <= 0 || b.max_level <= 0 {
            bail!("bounds must be positive: {b:?}");
        }
        Ok(())
    }

    /// Where the rendered output goes; `None` means stdout.
    pub fn destination(&self) -> Option<PathBuf> {
        if let Some(out) = &self.out {
            return Some(out.clone());
        }
        let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
        let file = format!("{}-p{}.{}", self.command.name(), self.p, self.format.extension());
        Some(Path::new(&dir).join(file))
    }
}

/// Result of a run: the rendered document and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub rendered: String,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

/// Runs the configured command and renders its output (nothing is written).
pub fn run(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let p = config.p;
    let doc = match &config.command {
        Command::NicholsTable { op } => nichols_table(p, *op)?,
        Command::NicholsVerify => {
            let b = &config.bounds;
            Document::report("nichols-verify", p, nichols::checks::verify_all(p, b.grade, b.samples, b.seed))
        }
        Command::YdmodDims => ydmod_dims(p, config.bounds.range),
        Command::CftVerify => cft_verify(p)?,
        Command::CftOctuplet => cft_octuplet(p)?,
        Command::CftSingvec { m, n } => cft_singvec(p, m, n, config.bounds.max_level),
    };
    let rendered = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc.json)?;
            s.push('\n');
            s
        }
        Format::Text => doc.text,
        Format::Csv => doc.csv,
    };
    Ok(Outcome {
        passed: doc.passed,
        rendered,
        failures: doc.failures,
    })
}

/// Runs and writes to the configured destination; returns the outcome and
/// the file written, if any.
pub fn run_and_write(config: &RunConfig) -> Result<(Outcome, Option<PathBuf>)> {
    let outcome = run(config)?;
    match config.destination() {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&path, &outcome.rendered)
                .with_context(|| format!("writing {}", path.display()))?;
            Ok((outcome, Some(path)))
        }
        None => {
            print!("{}", outcome.rendered);
            Ok((outcome, None))
        }
    }
}

/// Shared `main` body: runs, reports failing checks on stderr and maps the
/// outcome to an exit status.
pub fn main_with(config: RunConfig) -> i32 {
    match run_and_write(&config) {
        Ok((outcome, path)) => {
            if let Some(path) = path {
                eprintln!("wrote {}", path.display());
            }
            for f in &outcome.failures {
                eprintln!("{f}");
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

/// Parses `num` or `num/den`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("invalid rational {s:?}: {e}"))
}

struct Document {
    passed: bool,
    failures: Vec<String>,
    json: Value,
    text: String,
    csv: String,
}

impl Document {
    fn report(kind: &str, p: u32, report: CheckReport) -> Self {
        Self::report_with(kind, p, report, serde_json::Map::new(), String::new())
    }

    fn report_with(
        kind: &str,
        p: u32,
        report: CheckReport,
        extra: serde_json::Map<String, Value>,
        text_header: String,
    ) -> Self {
        let passed = report.all_passed();
        let mut json = json!({
            "schema": SCHEMA,
            "kind": kind,
            "p": p,
            "passed": passed,
            "checks": report.entries,
        });
        json.as_object_mut().unwrap().extend(extra);
        let mut text = text_header;
        text.push_str(&report.to_text());
        let summary = format!(
            "{} of {} checks passed\n",
            report.entries.iter().filter(|e| e.passed).count(),
            report.entries.len()
        );
        text.push_str(&summary);
        Document {
            passed,
            failures: report.failures().map(CheckEntry::line).collect(),
            json,
            text,
            csv: checks_csv(&report.entries),
        }
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn checks_csv(entries: &[CheckEntry]) -> String {
    csv_string(
        &["name", "anchor", "passed", "detail"],
        entries.iter().map(|e| {
            vec![e.name.clone(), e.anchor.clone(), e.passed.to_string(), e.detail.clone()]
        }),
    )
}

fn index_json(x: PbwIndex) -> Value {
    json!([x.r, x.t, x.s])
}

fn nichols_table(p: u32, op: Op) -> Result<Document> {
    let basis = PbwIndex::basis(p);
    let (op_name, anchor) = match op {
        Op::Concat => ("concat", "PBW multiplication table"),
        Op::Shuffle => ("shuffle", "shuffle multiplication table"),
    };
    let mut entries = Vec::new();
    let mut text = format!("# {op_name} products, p = {p}, {} basis elements\n", basis.len());
    let mut rows = Vec::new();
    for a in &basis {
        for b in &basis {
            let (x, y) = (NicholsElem::basis(p, *a), NicholsElem::basis(p, *b));
            let prod = match op {
                Op::Concat => x.mul_concat(&y)?,
                Op::Shuffle => x.mul_shuffle(&y)?,
            };
            let terms: Vec<String> = prod
                .terms()
                .iter()
                .map(|(z, c)| format!("({c}) {z:?}"))
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            let _ = writeln!(text, "{a:?} * {b:?} = {rhs}");
            for (z, c) in prod.terms() {
                rows.push(vec![
                    format!("{} {} {}", a.r, a.t, a.s),
                    format!("{} {} {}", b.r, b.t, b.s),
                    format!("{} {} {}", z.r, z.t, z.s),
                    c.to_string(),
                ]);
            }
            entries.push(json!({
                "left": index_json(*a),
                "right": index_json(*b),
                "product": prod.to_json(),
            }));
        }
    }
    let json = json!({
        "schema": SCHEMA,
        "kind": "nichols-table",
        "p": p,
        "op": op_name,
        "anchor": anchor,
        "basis": basis.iter().map(|x| index_json(*x)).collect::<Vec<_>>(),
        "entries": entries,
    });
    Ok(Document {
        passed: true,
        failures: vec![],
        json,
        text,
        csv: csv_string(&["left", "right", "term", "coeff"], rows),
    })
}

fn ydmod_dims(p: u32, range: i64) -> Document {
    let rows = ydmod::dims_table(p, range);
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches())
        .map(|r| format!("FAIL dimension ({},{}): computed {} formula {}", r.n1, r.n2, r.computed, r.formula))
        .collect();
    let passed = failures.is_empty();
    let mut text = format!("# generated module dimensions, p = {p}\n{:>4} {:>4} {:>9} {:>8}\n", "n1", "n2", "computed", "formula");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:>4} {:>4} {:>9} {:>8}{}",
            r.n1,
            r.n2,
            r.computed,
            r.formula,
            if r.matches() { "" } else { "  MISMATCH" }
        );
    }
    let json = json!({
        "schema": SCHEMA,
        "kind": "ydmod-dims",
        "p": p,
        "range": range,
        "passed": passed,
        "anchor": "simple module dimension formula",
        "rows": rows,
    });
    let csv = csv_string(
        &["n1", "n2", "computed", "formula"],
        rows.iter().map(|r| {
            vec![r.n1.to_string(), r.n2.to_string(), r.computed.to_string(), r.formula.to_string()]
        }),
    );
    Document {
        passed,
        failures,
        json,
        text,
        csv,
    }
}

fn cft_verify(p: u32) -> Result<Document> {
    let report = cft::verify_all(p)?;
    let c = freefield::central_charge(p);
    let table = cft::vertex_dimension_table(p)?;
    let mut extra = serde_json::Map::new();
    extra.insert("central_charge".into(), serde_json::to_value(RationalPair(c.clone()))?);
    extra.insert(
        "vertex_dimensions".into(),
        Value::Array(
            table
                .iter()
                .map(|(mu, d, agrees)| {
                    json!({"momentum": mu, "dimension": RationalPair(d.clone()), "t_pole_agrees": agrees})
                })
                .collect(),
        ),
    );
    let mut header = format!("central charge c = {c}\n");
    for (mu, d, _) in &table {
        let _ = writeln!(header, "dimension of e^({}φ1+{}φ2) = {d}", mu.c1, mu.c2);
    }
    Ok(Document::report_with("cft-verify", p, report, extra, header))
}

fn cft_octuplet(p: u32) -> Result<Document> {
    let (chain, mut report) = cft::octuplet_check(p)?;
    if p == 2 {
        report.extend(cft::octuplet_ope_structure(&chain)?);
    }
    let mut header = String::new();
    let mut rows = Vec::new();
    for (name, f) in &chain {
        let _ = writeln!(header, "{name} = {f:?}");
        for t in f.to_terms() {
            let factors: Vec<String> = t.factors.iter().map(|[i, k]| format!("{i}:{k}")).collect();
            rows.push(vec![
                name.to_string(),
                t.coeff.0.to_string(),
                factors.join(" "),
                t.momentum.c1.to_string(),
                t.momentum.c2.to_string(),
            ]);
        }
    }
    let mut extra = serde_json::Map::new();
    extra.insert(
        "fields".into(),
        Value::Array(
            chain
                .iter()
                .map(|(name, f)| json!({"name": name, "field": f.to_json()}))
                .collect(),
        ),
    );
    let mut doc = Document::report_with("cft-octuplet", p, report, extra, header);
    doc.csv = csv_string(&["name", "coeff", "factors", "c1", "c2"], rows);
    Ok(doc)
}

fn cft_singvec(p: u32, m: &Rational, n: &Rational, max_level: i64) -> Document {
    let h = hw::HwParams::new(m.clone(), n.clone());
    let found = hw::singular_vector_levels(p, &h, max_level);
    let orbit: Vec<hw::HwParams> = hw::weyl_orbit(&h).into_iter().collect();
    let l0 = h.l0(p);
    let w0 = h.w0(p);
    let mut report = CheckReport::new();
    report.push(CheckEntry::new(
        "L0 constant on the Weyl orbit",
        "Weyl orbit",
        orbit.iter().all(|g| g.l0(p) == l0),
        format!("L0 = {l0}"),
    ));
    report.push(CheckEntry::new(
        "W0 constant on the Weyl orbit",
        "Weyl orbit",
        orbit.iter().all(|g| g.w0(p) == w0),
        format!("W0 = {w0}"),
    ));
    let mut header = format!("(m, n) = ({m}, {n}), L0 = {l0}, W0 = {w0}\n");
    for s in &found {
        let _ = writeln!(
            header,
            "level {:>3}  params ({}, {})  from {} of ({}, {}) with (a, c) = ({}, {})",
            s.level,
            s.params.m,
            s.params.n,
            if s.rule == hw::Rule::X { "m" } else { "n" },
            s.representative.m,
            s.representative.n,
            s.integers[0],
            s.integers[1]
        );
    }
    let mut extra = serde_json::Map::new();
    extra.insert("params".into(), json!(h));
    extra.insert("max_level".into(), json!(max_level));
    extra.insert("l0".into(), json!(RationalPair(l0)));
    extra.insert("w0".into(), json!(RationalPair(w0)));
    extra.insert("orbit".into(), json!(orbit));
    extra.insert("singular_vectors".into(), json!(found));
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|s| {
            vec![
                s.level.to_string(),
                s.params.m.to_string(),
                s.params.n.to_string(),
                format!("{:?}", s.rule).to_lowercase(),
                s.integers[0].to_string(),
                s.integers[1].to_string(),
            ]
        })
        .collect();
    let mut doc = Document::report_with("cft-singvec", p, report, extra, header);
    doc.csv = csv_string(&["level", "m", "n", "rule", "a", "c"], rows);
    doc
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Root-of-unity order, q = e^(iπ/p).
    #[arg(long)]
    pub p: u32,
    /// Output file; defaults to a file in $NICHOLS_W3_OUT_DIR, else stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl CommonArgs {
    pub fn config(&self, command: Command) -> RunConfig {
        RunConfig {
            p: self.p,
            command,
            bounds: Bounds::default(),
            out: self.out.clone(),
            format: self.format,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_p_and_zero_bounds() {
        assert!(run(&RunConfig::new(1, Command::YdmodDims)).is_err());
        let mut cfg = RunConfig::new(2, Command::YdmodDims);
        cfg.bounds.range = 0;
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), nichols_w3::rational::rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), nichols_w3::rational::int(7));
        assert!(parse_rational("x").is_err());
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct BookCli;
