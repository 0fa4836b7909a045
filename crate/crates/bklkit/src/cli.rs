// SPDX-License-Identifier: MIT OR Apache-2.0
//! Command-line front end: argument definitions, caching, and exporters.
//!
//! Results are produced as JSON text (possibly read back from the cache) and
//! then rendered as JSON, CSV, or a TeX table. Usage errors map to exit code
//! 2 and invariant failures to exit code 1; see [`exit_code`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::cache::{Cache, CacheKey};
use crate::canonical::{bkl, column_with_check, wedge_bkl, wedge_bkl_index, wedge_level, BasisKind, Column};
use crate::characters::{character, CharacterKind};
use crate::combinat::{Partition, Side, SignedSeq, SuperWeight, WedgeIndex, WeightFn};
use crate::error::{BklError, Result};
use crate::fock::{WedgeSpec, Window};
use crate::scalars::LaurentPoly;
use crate::verify::{run_suite, Suite, VerifyOptions};

/// Top-level command line.
#[derive(Debug, Parser)]
#[command(
    name = "bklkit",
    version,
    about = "Canonical bases, BKL polynomials and gl(m|n) characters"
)]
pub struct Cli {
    /// What to compute.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one canonical or dual canonical column.
    Bkl(BklArgs),
    /// Print an irreducible or tilting character as a sum of Verma characters.
    Char(CharArgs),
    /// Run property suites; exits nonzero on the first counterexample.
    Verify(VerifyArgs),
}

/// Output formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON document.
    Json,
    /// One row per index.
    Csv,
    /// A TeX tabular.
    Tex,
}

/// Options shared by the computing subcommands.
#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Cache directory (overridden by `BKLKIT_CACHE`).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore and do not write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

/// Arguments of `bkl`.
#[derive(Debug, Args)]
pub struct BklArgs {
    /// Sign sequence, e.g. `0110`.
    #[arg(long)]
    pub seq: String,
    /// Column index: comma-separated values, optionally `head|tail` with a wedge tail.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Basis: `canonical` (t) or `dual` (l).
    #[arg(long, default_value = "canonical")]
    pub kind: String,
    /// Window level; chosen automatically when omitted.
    #[arg(long)]
    pub window: Option<i32>,
    /// Wedge factors: `none`, `V:k`, `W:k`, or `partition:V:parts`.
    #[arg(long, default_value = "none")]
    pub wedge: String,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Evaluate coefficients at `q = 1`.
    #[arg(long)]
    pub at_q1: bool,
    /// Cache options.
    #[command(flatten)]
    pub cache: CacheArgs,
}

/// Arguments of `char`.
#[derive(Debug, Args)]
pub struct CharArgs {
    /// Sign sequence.
    #[arg(long)]
    pub seq: String,
    /// Highest weight in standard coordinates, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// `irr` or `tilt`.
    #[arg(long, default_value = "irr")]
    pub kind: String,
    /// Window level; chosen automatically when omitted.
    #[arg(long)]
    pub window: Option<i32>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Cache options.
    #[command(flatten)]
    pub cache: CacheArgs,
}

/// Arguments of `verify`.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Largest `m + n`.
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    /// Largest window level.
    #[arg(long, default_value_t = 3)]
    pub max_window: i32,
    /// Seed for randomised suites.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

/// Process exit code for a result: 0 on success, 2 for usage errors, 1 otherwise.
pub fn exit_code(r: &Result<()>) -> i32 {
    match r {
        Ok(()) => 0,
        Err(e) if e.is_usage() => 2,
        Err(_) => 1,
    }
}

/// Run a parsed command line, writing results to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Bkl(a) => cmd_bkl(&a, out),
        Command::Char(a) => cmd_char(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    }
}

fn cache_for(args: &CacheArgs) -> Option<Cache> {
    if args.no_cache {
        None
    } else {
        Cache::from_env_or(args.cache_dir.as_deref())
    }
}

fn cached(cache: Option<Cache>, key: &CacheKey, compute: impl FnOnce() -> Result<String>) -> Result<String> {
    match cache {
        Some(c) => Ok(c.get_or_compute(key, compute)?.0),
        None => compute(),
    }
}

/// The parsed `--wedge` option.
enum WedgeArg {
    Spec(WedgeSpec),
    Partition(Side, Partition),
}

fn parse_wedge(s: &str) -> Result<WedgeArg> {
    if let Some(rest) = s.strip_prefix("partition:") {
        let (side, parts) = rest
            .split_once(':')
            .ok_or_else(|| BklError::Parse(format!("expected partition:V:parts, got {s:?}")))?;
        return Ok(WedgeArg::Partition(side.parse()?, parts.parse()?));
    }
    Ok(WedgeArg::Spec(s.parse()?))
}

fn parse_index(s: &str) -> Result<WeightFn> {
    match s.split_once('|') {
        Some((head, tail)) => {
            let mut v: WeightFn = head.parse()?;
            let t: WeightFn = tail.parse()?;
            v.0.extend(t.0);
            Ok(v)
        }
        None => s.parse(),
    }
}

/// Compute the column requested by `a`.
pub fn compute_column(a: &BklArgs) -> Result<Column> {
    let b: SignedSeq = a.seq.parse()?;
    let kind: BasisKind = a.kind.parse()?;
    let f = parse_index(&a.f)?;
    match parse_wedge(&a.wedge)? {
        WedgeArg::Spec(WedgeSpec::None) => match a.window {
            None => bkl(&b, &f, kind),
            Some(k) => column_with_check(&Window::tensor(b, k), &f, kind, false),
        },
        WedgeArg::Spec(spec) => {
            let (side, kw) = spec.side_len().expect("nonempty wedge");
            match a.window {
                None => wedge_bkl(&b, side, kw, &f, kind),
                Some(k) => column_with_check(&Window::wedge(b, k, side, kw), &f, kind, false),
            }
        }
        WedgeArg::Partition(side, lambda) => {
            if f.len() != b.len() {
                return Err(BklError::InvalidInput(format!("head {f} must have length {}", b.len())));
            }
            let x = WedgeIndex::partition(f, side, lambda);
            match a.window {
                None => wedge_bkl_index(&b, &x, kind),
                Some(k) => {
                    let kw = wedge_level(&x);
                    let flat = x
                        .flatten(kw)
                        .ok_or_else(|| BklError::InvalidInput("partition does not fit".into()))?;
                    column_with_check(&Window::wedge(b, k, side, kw), &flat, kind, false)
                }
            }
        }
    }
}

fn bkl_json(a: &BklArgs) -> Result<String> {
    let col = compute_column(a)?;
    Ok(serde_json::to_string_pretty(&col).expect("columns serialize"))
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| BklError::Invariant(format!("malformed result JSON: {e}")))
}

fn poly_of(v: &Value) -> Result<LaurentPoly> {
    serde_json::from_value(v.clone()).map_err(|e| BklError::Invariant(format!("malformed polynomial: {e}")))
}

/// An integer as a JSON number when it fits in `i64`, else as a string.
fn int_value(n: &num_bigint::BigInt) -> Value {
    i64::try_from(n)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(n.to_string()))
}

fn str_of(v: &Value) -> &str {
    v.as_str().unwrap_or_default()
}

/// Render a column document in the chosen format.
pub fn render_column(doc: &Value, format: Format, at_q1: bool) -> Result<String> {
    let entries = doc["column"].as_array().cloned().unwrap_or_default();
    let mut rows = Vec::new();
    for e in &entries {
        rows.push((str_of(&e["g"]).to_string(), poly_of(&e["poly"])?));
    }
    Ok(match format {
        Format::Json if !at_q1 => serde_json::to_string_pretty(doc).expect("values serialize"),
        Format::Json => {
            let mut d = doc.clone();
            d["column"] = Value::Array(
                rows.iter()
                    .map(|(g, p)| serde_json::json!({ "g": g, "value": int_value(&p.at_one()) }))
                    .collect(),
            );
            d["at_q1"] = Value::Bool(true);
            serde_json::to_string_pretty(&d).expect("values serialize")
        }
        Format::Csv => {
            let mut s = String::new();
            if at_q1 {
                s.push_str("g,value\n");
                for (g, p) in &rows {
                    s.push_str(&format!("\"{g}\",{}\n", p.at_one()));
                }
            } else {
                s.push_str("g,lowest_exponent,coefficients\n");
                for (g, p) in &rows {
                    let lo = p.min_exp().unwrap_or(0);
                    let hi = p.max_exp().unwrap_or(0);
                    let cs: Vec<String> = (lo..=hi).map(|e| p.coeff(e).to_string()).collect();
                    s.push_str(&format!("\"{g}\",{lo},{}\n", cs.join(";")));
                }
            }
            s
        }
        Format::Tex => {
            let mut s = String::from("\\begin{tabular}{ll}\n$g$ & coefficient \\\\\n\\hline\n");
            for (g, p) in &rows {
                let c = if at_q1 { p.at_one().to_string() } else { p.to_tex() };
                s.push_str(&format!("$({g})$ & ${c}$ \\\\\n"));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    })
}

/// Render a character document in the chosen format.
pub fn render_character(doc: &Value, format: Format) -> String {
    let terms = doc["terms"].as_array().cloned().unwrap_or_default();
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("values serialize"),
        Format::Csv => {
            let mut s = String::from("mu,mult\n");
            for t in &terms {
                s.push_str(&format!("\"{}\",{}\n", str_of(&t["mu"]), t["mult"]));
            }
            s
        }
        Format::Tex => {
            let mut s = String::from("\\begin{tabular}{lr}\n$\\mu$ & multiplicity \\\\\n\\hline\n");
            for t in &terms {
                s.push_str(&format!("$M({})$ & ${}$ \\\\\n", str_of(&t["mu"]), t["mult"]));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    }
}

/// The `bkl` subcommand.
pub fn cmd_bkl(a: &BklArgs, out: &mut dyn Write) -> Result<()> {
    // Validate cheaply before touching the cache.
    let _: SignedSeq = a.seq.parse()?;
    let kind: BasisKind = a.kind.parse()?;
    parse_index(&a.f)?;
    parse_wedge(&a.wedge)?;
    let key = CacheKey::new("bkl", &a.seq, a.window, a.wedge.trim(), &kind.to_string(), a.f.trim());
    let text = cached(cache_for(&a.cache), &key, || bkl_json(a))?;
    // The stored encoding is printed verbatim so cached and fresh output match byte for byte.
    let rendered = match (a.format, a.at_q1) {
        (Format::Json, false) => text,
        _ => render_column(&parse_json(&text)?, a.format, a.at_q1)?,
    };
    writeln!(out, "{}", rendered.trim_end())?;
    Ok(())
}

/// The `char` subcommand.
pub fn cmd_char(a: &CharArgs, out: &mut dyn Write) -> Result<()> {
    let b: SignedSeq = a.seq.parse()?;
    let kind: CharacterKind = a.kind.parse()?;
    let lambda: SuperWeight = a.lambda.parse()?;
    let key = CacheKey::new("char", &a.seq, a.window, "none", &a.kind, &lambda.to_string());
    let text = cached(cache_for(&a.cache), &key, || {
        let e = character(&b, kind, &lambda, a.window)?;
        Ok(serde_json::to_string_pretty(&e).expect("characters serialize"))
    })?;
    let rendered = match a.format {
        Format::Json => text,
        _ => render_character(&parse_json(&text)?, a.format),
    };
    writeln!(out, "{}", rendered.trim_end())?;
    Ok(())
}

/// The `verify` subcommand.
pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let suite: Suite = a.suite.parse()?;
    if a.max_rank == 0 || a.max_window < 1 {
        return Err(BklError::InvalidInput(
            "--max-rank and --max-window must be positive".into(),
        ));
    }
    let opts = VerifyOptions {
        max_rank: a.max_rank,
        max_window: a.max_window,
        seed: a.seed,
    };
    let suites = if suite == Suite::All {
        Suite::each().to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        match run_suite(s, &opts) {
            Ok(res) => {
                for r in res {
                    writeln!(
                        out,
                        "PASS {:<13} checked {:>7}  {:.2?}",
                        r.suite.name(),
                        r.checked,
                        r.elapsed
                    )?;
                }
            }
            Err(e) => {
                writeln!(out, "FAIL {:<13} {e}", s.name())?;
                return Err(BklError::Invariant(format!("suite {s} failed: {e}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<()>, String) {
        let cli = Cli::try_parse_from(std::iter::once("bklkit").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn rank_two_dual_column() {
        let (r, s) = run_args(&[
            "bkl",
            "--seq",
            "01",
            "--f",
            "3,3",
            "--kind",
            "dual",
            "--window",
            "6",
            "--no-cache",
        ]);
        r.unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        let col = v["column"].as_array().unwrap();
        // M_f plus (−q)^{-t} M_{(3−t,3−t)} for t = 1..9.
        assert_eq!(col.len(), 10);
        assert_eq!(v["window"], 6);
    }

    #[test]
    fn trivial_and_hecke_columns() {
        let (r, s) = run_args(&["bkl", "--seq", "0", "--f", "5", "--no-cache"]);
        r.unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["column"].as_array().unwrap().len(), 1);
        let (r, s) = run_args(&[
            "bkl",
            "--seq",
            "00",
            "--f",
            "2,1",
            "--kind",
            "canonical",
            "--format",
            "csv",
            "--no-cache",
        ]);
        r.unwrap();
        assert!(s.contains("\"2,1\",0,1"), "{s}");
        assert!(s.contains("\"1,2\",1,1"), "{s}");
    }

    #[test]
    fn exports() {
        let (r, s) = run_args(&["bkl", "--seq", "01", "--f", "1,1", "--format", "tex", "--no-cache"]);
        r.unwrap();
        assert!(s.starts_with("\\begin{tabular}"));
        let (r, s) = run_args(&["bkl", "--seq", "01", "--f", "1,1", "--at-q1", "--no-cache"]);
        r.unwrap();
        assert!(s.contains("\"value\": 1"));
        let (r, s) = run_args(&[
            "char",
            "--seq",
            "01",
            "--lambda",
            "0,0",
            "--kind",
            "tilt",
            "--format",
            "csv",
            "--no-cache",
        ]);
        r.unwrap();
        assert_eq!(s.lines().count(), 3, "{s}");
    }

    #[test]
    fn wedge_options() {
        let (r, _) = run_args(&["bkl", "--seq", "0", "--f", "1|2,1", "--wedge", "V:2", "--no-cache"]);
        r.unwrap();
        let (r, _) = run_args(&[
            "bkl",
            "--seq",
            "0",
            "--f",
            "1",
            "--wedge",
            "partition:V:2,1",
            "--no-cache",
        ]);
        r.unwrap();
        let (r, _) = run_args(&[
            "bkl",
            "--seq",
            "0",
            "--f",
            "1",
            "--wedge",
            "partition:X:2",
            "--no-cache",
        ]);
        assert_eq!(exit_code(&r), 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (r, _) = run_args(&["bkl", "--seq", "012", "--f", "1", "--no-cache"]);
        assert_eq!(exit_code(&r), 2);
        let (r, _) = run_args(&["bkl", "--seq", "01", "--f", "1", "--no-cache"]);
        assert_eq!(exit_code(&r), 2);
        let (r, _) = run_args(&["verify", "--suite", "nope"]);
        assert_eq!(exit_code(&r), 2);
    }

    #[test]
    fn cache_round_trip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let args = [
            "bkl",
            "--seq",
            "011",
            "--f",
            "1,0,2",
            "--kind",
            "dual",
            "--cache-dir",
            d,
        ];
        let (r, first) = run_args(&args);
        r.unwrap();
        let (r, second) = run_args(&args);
        r.unwrap();
        assert_eq!(first, second);
        let (_, fresh) = run_args(&["bkl", "--seq", "011", "--f", "1,0,2", "--kind", "dual", "--no-cache"]);
        assert_eq!(first, fresh);
    }
}
