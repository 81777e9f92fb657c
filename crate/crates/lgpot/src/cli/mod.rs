// SPDX-License-Identifier: MIT
//! The `lgpot` command-line tool.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::golden::{self, CaseReport, GridMap};
use crate::moves::generate_move_poset;
use crate::render::{self, ModelDocument, MovePosetDocument, PosetDocument};
use crate::toric::{verify_model, VerificationReport, VerifyOptions};
use crate::{CominusculeDatum, Error, Family, MinusculePoset, Model};

#[derive(Parser, Debug)]
#[command(name = "lgpot", version, about = "Canonical superpotentials of cominuscule homogeneous spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the superpotential of one space.
    Model(ModelArgs),
    /// Check torus identities for one space or for every space up to a rank.
    Verify(VerifyArgs),
    /// Print the minuscule poset or one of its move posets.
    Poset(PosetArgs),
    /// Compare against the bundled corpus of reference polynomials.
    Golden(GoldenArgs),
}

#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Dynkin family: A, B, C, D, E6 or E7.
    #[arg(long, short)]
    pub family: Family,
    /// Rank of the root system.
    #[arg(long, short)]
    pub rank: usize,
    /// Cominuscule node `k`.
    #[arg(long, short)]
    pub node: usize,
}

impl DatumArgs {
    fn datum(&self) -> Result<CominusculeDatum, Error> {
        CominusculeDatum::new(self.family, self.rank, self.node)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelFormat {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ModelFormat,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Include the weight-lattice cross-check in the attached report.
    #[arg(long)]
    pub with_oracle: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Every valid datum with rank at most `--max-rank`.
    #[arg(long, conflicts_with_all = ["family", "rank", "node"])]
    pub all: bool,
    #[arg(long, default_value_t = 7)]
    pub max_rank: usize,
    #[arg(long, short, requires_all = ["rank", "node"])]
    pub family: Option<Family>,
    #[arg(long, short)]
    pub rank: Option<usize>,
    #[arg(long, short)]
    pub node: Option<usize>,
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long)]
    pub with_quantum_derivation: bool,
    /// Emit the reports as a JSON array.
    #[arg(long)]
    pub json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PosetFormat {
    Dot,
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct PosetArgs {
    #[command(flatten)]
    pub datum: DatumArgs,
    /// Show the move poset of this index instead.
    #[arg(long, value_name = "I*")]
    pub move_poset: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: PosetFormat,
}

#[derive(Args, Debug)]
pub struct GoldenArgs {
    /// Directory of case files; overrides the bundled corpus and the
    /// `LGPOT_GOLDEN_DIR` environment variable.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Only the case with this name.
    #[arg(long)]
    pub case: Option<String>,
    /// Monomials listed per failing entry.
    #[arg(long, default_value_t = 10)]
    pub show: usize,
}

/// Outcome of a subcommand that ran to completion.
pub enum Outcome {
    Ok,
    ChecksFailed,
}

pub fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Model(args) => model(args),
        Command::Verify(args) => verify(args),
        Command::Poset(args) => poset(args),
        Command::Golden(args) => golden(args),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Internal(format!("write failed: {e}"));
    match out {
        Some(path) => fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

fn model(args: ModelArgs) -> Result<Outcome, Error> {
    let model = Model::build(args.datum.datum()?)?;
    let text = match args.format {
        ModelFormat::Latex => render::model_latex(&model),
        ModelFormat::Text => render::model_text(&model, None),
        ModelFormat::Json => {
            let options = VerifyOptions { with_oracle: args.with_oracle, ..Default::default() };
            let report = verify_model(&model, options);
            ModelDocument::new(&model, &report)?.to_json() + "\n"
        }
    };
    emit(args.out.as_ref(), &text)?;
    Ok(Outcome::Ok)
}

fn verify(args: VerifyArgs) -> Result<Outcome, Error> {
    let data = if args.all {
        CominusculeDatum::all_up_to(args.max_rank)
    } else {
        match (args.family, args.rank, args.node) {
            (Some(f), Some(r), Some(n)) => vec![CominusculeDatum::new(f, r, n)?],
            _ => return Err(Error::InvalidDatum("pass --all or all of --family, --rank, --node".into())),
        }
    };
    let options =
        VerifyOptions { with_oracle: args.with_oracle, with_quantum_derivation: args.with_quantum_derivation };
    let results: Vec<(CominusculeDatum, Result<VerificationReport, Error>)> =
        data.par_iter().map(|&d| (d, Model::build(d).map(|m| verify_model(&m, options)))).collect();

    let mut failed = 0;
    if args.json {
        let mut docs = Vec::new();
        for (d, r) in &results {
            let report = r.as_ref().map_err(|e| Error::Internal(format!("{d}: {e}")))?;
            failed += usize::from(!report.passed());
            docs.push(serde_json::json!({ "datum": d, "passed": report.passed(), "checks": report.checks }));
        }
        let text = serde_json::to_string_pretty(&docs).expect("plain data serializes");
        emit(None, &(text + "\n"))?;
    } else {
        let mut out = String::new();
        for (d, r) in &results {
            match r {
                Ok(report) if report.passed() => {
                    out += &format!("ok   {d}  ({} checks)\n", report.checks.len());
                }
                Ok(report) => {
                    failed += 1;
                    out += &format!("FAIL {d}\n");
                    for c in report.checks.iter().filter(|c| !c.passed) {
                        let index = c.index.map(|i| format!("[{i}]")).unwrap_or_default();
                        out += &format!("       {}{index}: {}\n", c.name, c.detail);
                    }
                }
                Err(e) => {
                    failed += 1;
                    out += &format!("FAIL {d}  build error: {e}\n");
                }
            }
        }
        out += &format!("{} of {} spaces passed\n", results.len() - failed, results.len());
        emit(None, &out)?;
    }
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::ChecksFailed })
}

fn poset(args: PosetArgs) -> Result<Outcome, Error> {
    let datum = args.datum.datum()?;
    let poset = MinusculePoset::build(&datum)?;
    let text = match args.move_poset {
        None => match args.format {
            PosetFormat::Text => render::poset_text(&poset),
            PosetFormat::Dot => render::poset_dot(&poset),
            PosetFormat::Json => {
                let doc = PosetDocument { datum, poset: render::element_records(&poset) };
                serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
            }
        },
        Some(istar) => {
            let moves = generate_move_poset(&poset, istar)?;
            match args.format {
                PosetFormat::Text => render::move_poset_text(&poset, &moves),
                PosetFormat::Dot => render::move_poset_dot(&poset, &moves),
                PosetFormat::Json => {
                    let doc = MovePosetDocument::new(datum, &moves);
                    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
                }
            }
        }
    };
    emit(None, &text)?;
    Ok(Outcome::Ok)
}

fn case_summary(report: &CaseReport, grid: &GridMap, poset: &MinusculePoset, show: usize) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let what = format!("{:?}", e.what).to_lowercase();
        let status = if e.passed() { "ok  " } else { "FAIL" };
        out += &format!(
            "  {status} {what} {}: {} expected, {} computed monomials\n",
            e.index, e.expected_monomials, e.computed_monomials
        );
        for m in e.mismatches.iter().take(show) {
            let factors: Vec<String> = m
                .factors
                .iter()
                .map(|ids| {
                    let ideal = poset.ideal_from_ids(ids).expect("ids came from an ideal");
                    format!("p[{}]", grid.shape(&ideal))
                })
                .collect();
            let q = if m.q > 0 { format!("q^{} ", m.q) } else { String::new() };
            out += &format!("       {q}{}  expected {} computed {}\n", factors.join("*"), m.expected, m.computed);
        }
        if e.mismatches.len() > show {
            out += &format!("       ... {} more\n", e.mismatches.len() - show);
        }
    }
    out
}

fn golden(args: GoldenArgs) -> Result<Outcome, Error> {
    let mut corpus = match &args.dir {
        Some(dir) => golden::corpus_from_dir(dir)?,
        None => golden::load_corpus()?,
    };
    if let Some(name) = &args.case {
        corpus.retain(|c| &c.case == name);
        if corpus.is_empty() {
            return Err(Error::Golden(format!("no case named `{name}`")));
        }
    }
    let mut out = String::new();
    let mut failed = 0;
    for case in &corpus {
        let model = Model::build(case.datum()?)?;
        let report = golden::compare_with_model(case, &model)?;
        failed += usize::from(!report.passed());
        let status = if report.passed() { "ok  " } else { "FAIL" };
        out += &format!("{status} {} ({})\n", report.case, report.datum);
        let grid = GridMap::new(&model.poset, &case.grid)?;
        out += &case_summary(&report, &grid, &model.poset, args.show);
    }
    out += &format!("{} of {} cases matched\n", corpus.len() - failed, corpus.len());
    emit(None, &out)?;
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::ChecksFailed })
}
