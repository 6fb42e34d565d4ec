//! `affsub`: command-line access to affine root systems, the classification
//! of maximal closed subroot systems, the windowed oracle and chains.
//!
//! Output is JSON (or JSON lines for streams). Exit status is 0 on
//! success, 1 when a verification fails and 2 on invalid input.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use affine_subroots::affine_roots::affine_system;
use affine_subroots::classification::finite_table;
use affine_subroots::{
    affine_table, enumerate_closed, enumerate_families, extract_pi_system, instantiate, verify_maximal,
    AffineTypeLabel, ChainConfig, OracleConfig, Params, SubrootSystem,
};

#[derive(Parser)]
#[command(name = "affsub", version, about = "Maximal closed subroot systems of real affine root systems")]
struct Cli {
    /// Optional defaults file with `key = value` lines (`radii`, `depth`, `prime_bound`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the real roots with |grade2| <= R as JSON lines.
    Roots {
        label: AffineTypeLabel,
        #[arg(long, default_value_t = 4)]
        radius2: i64,
    },
    /// Print the gradient root system.
    Gradient { label: AffineTypeLabel },
    /// Print the families of maximal closed subroot systems.
    Maximal { label: AffineTypeLabel },
    /// Build one family member from a kind and a JSON parameter object.
    Instantiate {
        label: AffineTypeLabel,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "{}")]
        params: String,
    },
    /// Check a subroot system file for closedness and windowed maximality.
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Inner, check and work radii in doubled units; scaled to the
        /// system's periods when omitted.
        #[arg(long)]
        radii: Option<String>,
    },
    /// Stream chains of maximal closed subroot systems as JSON lines.
    Enumerate {
        label: AffineTypeLabel,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prime_bound: Option<i64>,
        /// Every parameter choice instead of one representative per prime.
        #[arg(long)]
        exhaustive: bool,
        /// Certify each step with the windowed oracle.
        #[arg(long)]
        certify: bool,
        /// Include the coset model of every node.
        #[arg(long)]
        with_system: bool,
    },
    /// Print the π-system of a subroot system file.
    PiSystem {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print a classification table.
    Tables { which: Table },
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Finite,
    Untwisted,
    Twisted,
}

/// Failure of a verification, reported with exit status 1.
#[derive(Debug)]
struct Rejected;

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Rejected {}

#[derive(Default)]
struct Defaults {
    radii: Option<String>,
    depth: Option<usize>,
    prime_bound: Option<i64>,
}

fn read_defaults(path: &Path) -> Result<Defaults> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut d = Defaults::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key = value", n + 1))?;
        let v = v.trim();
        match k.trim() {
            "radii" => d.radii = Some(v.to_string()),
            "depth" => d.depth = Some(v.parse().with_context(|| format!("line {}", n + 1))?),
            "prime_bound" => d.prime_bound = Some(v.parse().with_context(|| format!("line {}", n + 1))?),
            other => bail!("line {}: unknown key {}", n + 1, other),
        }
    }
    Ok(d)
}

fn parse_radii(s: &str) -> Result<OracleConfig> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("radii {:?} are not integers", s))?;
    let [a, b, c] = v[..] else { bail!("radii need three values, got {}", v.len()) };
    Ok(OracleConfig::new(a, b, c)?)
}

fn read_system(path: &Path) -> Result<SubrootSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(out: &mut impl Write, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn print_line(out: &mut impl Write, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

const FINITE_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C3", "C4", "C5", "C6",
    "C7", "C8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2",
];

const UNTWISTED_TYPES: &[&str] = &[
    "A1^1", "A2^1", "A3^1", "A4^1", "A5^1", "A6^1", "B2^1", "B3^1", "B4^1", "B5^1", "B6^1", "C3^1", "C4^1", "C5^1",
    "C6^1", "D4^1", "D5^1", "D6^1", "E6^1", "E7^1", "E8^1", "F4^1", "G2^1",
];

const TWISTED_TYPES: &[&str] =
    &["A2^2", "A4^2", "A6^2", "A8^2", "A5^2", "A7^2", "D3^2", "D4^2", "D5^2", "D6^2", "E6^2", "D4^3"];

fn table(which: Table) -> Result<Value> {
    let mut rows = BTreeMap::new();
    match which {
        Table::Finite => {
            for s in FINITE_TYPES {
                let types: Vec<String> = finite_table(s.parse()?)?.iter().map(|t| t.to_string()).collect();
                rows.insert(s.to_string(), json!(types));
            }
        }
        Table::Untwisted | Table::Twisted => {
            let list = if matches!(which, Table::Untwisted) { UNTWISTED_TYPES } else { TWISTED_TYPES };
            for s in list {
                rows.insert(s.to_string(), serde_json::to_value(affine_table(s.parse()?)?)?);
            }
        }
    }
    Ok(json!(rows))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    let defaults = match &cli.config {
        Some(p) => read_defaults(p)?,
        None => Defaults::default(),
    };
    match cli.command {
        Command::Roots { label, radius2 } => {
            if radius2 < 0 {
                bail!("radius2 must be nonnegative");
            }
            for x in affine_system(label)?.window(radius2) {
                print_line(out, &x)?;
            }
        }
        Command::Gradient { label } => print_json(out, affine_system(label)?.gradient())?,
        Command::Maximal { label } => print_json(out, &enumerate_families(label)?)?,
        Command::Instantiate { label, kind, params } => {
            let mut obj: Value = serde_json::from_str(&params).context("parsing --params")?;
            let map = obj.as_object_mut().ok_or_else(|| anyhow!("--params must be a JSON object"))?;
            map.insert("kind".into(), Value::String(kind));
            let params: Params = serde_json::from_value(obj).context("unrecognized kind or parameters")?;
            print_json(out, &instantiate(label, &params)?)?;
        }
        Command::Verify { file, radii } => {
            let sub = read_system(&file)?;
            if let Some((x, y)) = sub.closure_violation() {
                print_json(out, &json!({ "closed": false, "maximal": false, "witness": [x, y] }))?;
                return Err(Rejected.into());
            }
            let cfg = match radii.or(defaults.radii) {
                Some(r) => parse_radii(&r)?,
                None => OracleConfig::scaled_for(&sub),
            };
            let report = verify_maximal(&sub, &cfg)?;
            print_json(
                out,
                &json!({
                    "closed": true,
                    "maximal": report.maximal,
                    "witness": report.witness,
                    "candidates": report.candidates,
                    "config": report.config,
                }),
            )?;
            if !report.maximal {
                return Err(Rejected.into());
            }
        }
        Command::Enumerate { label, depth, prime_bound, exhaustive, certify, with_system } => {
            let cfg = ChainConfig {
                max_depth: depth.or(defaults.depth).unwrap_or(1),
                prime_bound: prime_bound.or(defaults.prime_bound).unwrap_or(3),
                exhaustive,
                certify,
            };
            for node in enumerate_closed(label, &cfg)? {
                let mut line = json!({
                    "depth": node.depth,
                    "type": node.result_type,
                    "kind": node.kind,
                    "params": node.params,
                    "parent_index": node.parent_index,
                });
                if with_system {
                    line["system"] = serde_json::to_value(&node.system)?;
                }
                print_line(out, &line)?;
            }
        }
        Command::PiSystem { file } => print_json(out, &extract_pi_system(&read_system(&file)?)?)?,
        Command::Tables { which } => print_json(out, &table(which)?)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(e) if e.is::<Rejected>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
