//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::atlas::{catalog_entries, models_for, render_text, CatalogEntry, SymmetricSpaceModel};
use crate::bounds::{binom2, BoundsReport};
use crate::clifford::{build_even_generators, irrep_info, schur_check, EvenGenerators};
use crate::error::Error;
use crate::linalg::DEFAULT_TOLERANCE;
use crate::normalizer::{
    centralizer_dim, expected_dims, isotropy_dim, normalizer_dim, Arithmetic, ExpectedDims,
};
use crate::structure::{build, r4_quaternionic_split, verify, CheckResult, Multiplicities};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

/// Default largest N handled in exact mode.
pub const EXACT_SIZE_LIMIT: usize = 64;
/// Default largest N handled in float mode.
pub const FLOAT_SIZE_LIMIT: usize = 256;

#[derive(Debug, Parser)]
#[command(
    name = "even-clifford",
    version,
    about = "Even-Clifford hermitian structures: dimension bounds, normalizers and model spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension bounds, gap arithmetic and matching model spaces.
    Report(ReportArgs),
    /// Build the structure and run exact or floating-point checks.
    Verify(VerifyArgs),
    /// Bounds over ranges of ranks and multiplicities.
    Scan(ScanArgs),
    /// The catalog of model spaces with their cross-checks.
    ExportAtlas(AtlasArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum CheckKind {
    /// Antisymmetry, squares, bracket table and span dimension.
    Structure,
    /// Commutant dimension of the irreducible blocks.
    Schur,
    Centralizer,
    Normalizer,
    /// Quaternionic triples of a rank-4 structure.
    Split,
}

#[derive(Debug, Args)]
struct Target {
    #[arg(long)]
    rank: u32,
    /// `m`, or `m1,m2` when the rank is divisible by 4.
    #[arg(long)]
    mult: Multiplicities,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Pivot threshold in float mode.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Largest N accepted (default 64 exact, 256 float).
    #[arg(long)]
    max_size: Option<usize>,
    /// Ignore the size limit.
    #[arg(long)]
    allow_large: bool,
    /// Comma-separated subset of checks (default: all that apply).
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<CheckKind>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Inclusive range `a:b`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Range {
    lo: u32,
    hi: u32,
}

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad range bound {t:?}: {e}"))
        };
        match s.split_once(':') {
            Some((a, b)) => Ok(Range {
                lo: parse(a)?,
                hi: parse(b)?,
            }),
            None => {
                let v = parse(s)?;
                Ok(Range { lo: v, hi: v })
            }
        }
    }
}

impl Range {
    fn values(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GapFilter {
    True,
    False,
    Undefined,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Ranks `a:b` (inclusive).
    #[arg(long)]
    ranks: Range,
    /// Multiplicities `a:b` (inclusive); for ranks divisible by 4 both m1 and
    /// m2 run over the range.
    #[arg(long)]
    mults: Range,
    /// Keep only rows with this constraints_ok value.
    #[arg(long)]
    constraints_ok: Option<bool>,
    /// Keep only rows with this gap_inequality_ok value.
    #[arg(long, value_enum)]
    gap_ok: Option<GapFilter>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct AtlasArgs {
    /// Largest family parameter k (and m1, m2 for rank-4 products).
    #[arg(long, default_value_t = 3)]
    max_k: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOutput {
    #[serde(flatten)]
    pub bounds: BoundsReport,
    pub expected_dims: ExpectedDims,
    pub isotropy_dim: u64,
    pub models: Vec<SymmetricSpaceModel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub r: u32,
    pub mult: Multiplicities,
    #[serde(rename = "N")]
    pub n: usize,
    pub mode: String,
    pub tolerance: Option<f64>,
    pub numerical: bool,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: format!("write failed: {e}"),
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Report(a) => cmd_report(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::ExportAtlas(a) => cmd_atlas(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    writeln!(out, "{text}")?;
    Ok(())
}

fn render_aligned(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k}{}  {v}\n", " ".repeat(w - k.chars().count())))
        .collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "undefined".to_string(), T::to_string)
}

const CSV_HEADER: &str =
    "r,mult,N,d_max,d_C,d_M,gap_threshold,constraints_ok,gap_inequality_ok";

fn csv_row(b: &BoundsReport) -> String {
    format!(
        "{},\"{}\",{},{},{},{},{},{},{}",
        b.r,
        b.mult,
        b.n,
        b.d_max,
        b.d_c,
        b.d_m.map_or(String::new(), |v| v.to_string()),
        b.gap_threshold,
        b.constraints_ok,
        b.gap_inequality_ok.map_or(String::new(), |v| v.to_string()),
    )
}

fn check_target(t: &Target) -> Result<(), Failure> {
    irrep_info(t.rank)?;
    t.mult.validate(t.rank)?;
    Ok(())
}

fn cmd_report(a: ReportArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    check_target(&a.target)?;
    let (r, mult) = (a.target.rank, a.target.mult);
    let report = ReportOutput {
        bounds: BoundsReport::new(r, mult)?,
        expected_dims: expected_dims(r, mult)?,
        isotropy_dim: isotropy_dim(r, mult)?,
        models: models_for(r, mult)?,
    };
    match a.format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => writeln!(out, "{CSV_HEADER}\n{}", csv_row(&report.bounds))?,
        Format::Text => {
            let b = &report.bounds;
            let mut rows = vec![
                ("r".to_string(), b.r.to_string()),
                ("mult".into(), b.mult.to_string()),
                ("N".into(), b.n.to_string()),
                ("d_max".into(), b.d_max.to_string()),
                ("d_C".into(), b.d_c.to_string()),
                ("d_M".into(), opt(&b.d_m)),
                ("C(r,2)".into(), binom2(r as i64).to_string()),
                ("gap_threshold".into(), b.gap_threshold.to_string()),
                ("constraints_ok".into(), b.constraints_ok.to_string()),
                ("gap_inequality_ok".into(), opt(&b.gap_inequality_ok)),
                ("centralizer".into(), report.expected_dims.centralizer.to_string()),
                ("normalizer".into(), report.expected_dims.normalizer.to_string()),
                ("isotropy_dim".into(), report.isotropy_dim.to_string()),
            ];
            for m in &report.models {
                rows.push((
                    "model".into(),
                    format!("{} (dim G = {}, dim M = {})", m.name, m.dim_g, m.dim_m),
                ));
            }
            write!(out, "{}", render_aligned(&rows))?;
        }
    }
    Ok(EXIT_OK)
}

fn check(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail,
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    check_target(&a.target)?;
    let (r, mult) = (a.target.rank, a.target.mult);
    if !(a.tolerance > 0.0 && a.tolerance.is_finite()) {
        return Err(Failure::usage("--tolerance must be a positive number"));
    }
    let n = irrep_info(r)?.d_r as usize * mult.total() as usize;
    let limit = a.max_size.unwrap_or(match a.mode {
        Mode::Exact => EXACT_SIZE_LIMIT,
        Mode::Float => FLOAT_SIZE_LIMIT,
    });
    if n > limit && !a.allow_large {
        let hint = match a.mode {
            Mode::Exact => "rerun with --mode float, raise --max-size, or pass --allow-large",
            Mode::Float => "raise --max-size or pass --allow-large",
        };
        return Err(Failure {
            code: EXIT_TOO_LARGE,
            message: format!(
                "N = {n} exceeds the {} mode limit of {limit}; {hint}",
                match a.mode {
                    Mode::Exact => "exact",
                    Mode::Float => "float",
                }
            ),
        });
    }
    let arithmetic = match a.mode {
        Mode::Exact => Arithmetic::Exact,
        Mode::Float => Arithmetic::Float {
            tolerance: a.tolerance,
        },
    };

    let mut kinds = a.checks.clone();
    if kinds.is_empty() {
        kinds = vec![CheckKind::Structure, CheckKind::Schur];
        if r >= 3 {
            kinds.extend([CheckKind::Centralizer, CheckKind::Normalizer]);
        }
        if matches!(mult, Multiplicities::Pair(a, b) if r == 4 && a > 0 && b > 0) {
            kinds.push(CheckKind::Split);
        }
    }
    kinds.sort();
    kinds.dedup();

    let s = build(r, mult)?;
    let expected = if r >= 3 {
        Some(expected_dims(r, mult)?)
    } else {
        None
    };
    let numeric = if arithmetic.is_exact() { "" } else { " (numerical)" };
    let mut checks = Vec::new();
    for kind in kinds {
        match kind {
            CheckKind::Structure => checks.extend(verify(&s).checks),
            CheckKind::Schur => {
                let gens = build_even_generators(r)?;
                let field = irrep_info(r)?.field_type;
                let sets = match &gens {
                    EvenGenerators::Irreducible(g) => vec![g],
                    EvenGenerators::Split { plus, minus } => vec![plus, minus],
                };
                for g in sets {
                    let label = g
                        .half()
                        .map_or("schur".to_string(), |h| format!("schur_{h:?}").to_lowercase());
                    checks.push(match schur_check(g) {
                        Ok(d) => check(&label, true, format!("commutant dim {d}, field {field}")),
                        Err(e) => check(&label, false, e.to_string()),
                    });
                }
            }
            CheckKind::Centralizer | CheckKind::Normalizer => {
                let Some(exp) = expected else {
                    return Err(Failure::usage("centralizer and normalizer checks need r ≥ 3"));
                };
                let (name, got, want) = if kind == CheckKind::Centralizer {
                    ("centralizer_dim", Ok(centralizer_dim(&s, arithmetic)), exp.centralizer)
                } else {
                    ("normalizer_dim", normalizer_dim(&s, arithmetic), exp.normalizer)
                };
                checks.push(match got {
                    Ok(d) => check(
                        name,
                        d as u64 == want,
                        format!("computed {d}{numeric}, expected {want}"),
                    ),
                    Err(e) => check(name, false, e.to_string()),
                });
            }
            CheckKind::Split => {
                let rep = r4_quaternionic_split(&s)?.check();
                checks.push(check(
                    "quaternionic_split",
                    rep.passed(),
                    format!(
                        "J+ vanishes on {}, J- vanishes on {}, support dims {}/{}",
                        opt(&rep.plus_vanishes_on.map(|h| format!("{h:?}"))),
                        opt(&rep.minus_vanishes_on.map(|h| format!("{h:?}"))),
                        opt(&rep.plus_support_dim),
                        opt(&rep.minus_support_dim),
                    ),
                ));
            }
        }
    }
    let report = VerifyOutput {
        r,
        mult,
        n,
        mode: match a.mode {
            Mode::Exact => "exact".into(),
            Mode::Float => "float".into(),
        },
        tolerance: (!arithmetic.is_exact()).then_some(a.tolerance),
        numerical: !arithmetic.is_exact(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    match a.format {
        Format::Json => write_json(out, &report)?,
        Format::Text | Format::Csv => {
            if a.format == Format::Csv {
                writeln!(out, "check,passed,detail")?;
            }
            for c in &report.checks {
                if a.format == Format::Csv {
                    writeln!(out, "{},{},\"{}\"", c.name, c.passed, c.detail.replace('"', "\"\""))?;
                } else {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag}  {:<22}  {}", c.name, c.detail)?;
                }
            }
        }
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn scan_rows(a: &ScanArgs) -> Result<Vec<BoundsReport>, Failure> {
    let mut rows = Vec::new();
    for r in a.ranks.values() {
        let mults: Vec<Multiplicities> = if r % 4 == 0 {
            a.mults
                .values()
                .flat_map(|m1| a.mults.values().map(move |m2| Multiplicities::Pair(m1, m2)))
                .collect()
        } else {
            a.mults.values().map(Multiplicities::Single).collect()
        };
        for m in mults {
            if m.total() == 0 {
                continue;
            }
            let rep = BoundsReport::new(r, m)?;
            let keep_c = a.constraints_ok.is_none_or(|want| rep.constraints_ok == want);
            let keep_g = a.gap_ok.is_none_or(|want| match (want, rep.gap_inequality_ok) {
                (GapFilter::True, Some(v)) => v,
                (GapFilter::False, Some(v)) => !v,
                (GapFilter::Undefined, None) => true,
                _ => false,
            });
            if keep_c && keep_g {
                rows.push(rep);
            }
        }
    }
    rows.sort_by_key(|b| (b.r, b.mult));
    Ok(rows)
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows = scan_rows(&a)?;
    match a.format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for b in &rows {
                writeln!(out, "{}", csv_row(b))?;
            }
        }
        Format::Text => {
            let header: Vec<&str> = CSV_HEADER.split(',').collect();
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|b| {
                    vec![
                        b.r.to_string(),
                        b.mult.to_string(),
                        b.n.to_string(),
                        b.d_max.to_string(),
                        b.d_c.to_string(),
                        opt(&b.d_m),
                        b.gap_threshold.to_string(),
                        b.constraints_ok.to_string(),
                        opt(&b.gap_inequality_ok),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|c| c[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |c: Vec<String>| {
                c.iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header.iter().map(|h| h.to_string()).collect()))?;
            for c in cells {
                writeln!(out, "{}", line(c))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_atlas(a: AtlasArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let entries: Vec<CatalogEntry> = catalog_entries(a.max_k)?;
    match a.format {
        Format::Json => write_json(out, &entries)?,
        Format::Text => write!(out, "{}", render_text(&entries))?,
        Format::Csv => {
            writeln!(out, "r,name,family,mult,dim_M,dim_G,d_max,cross_check")?;
            for e in &entries {
                writeln!(
                    out,
                    "{},\"{}\",{:?},\"{}\",{},{},{},{}",
                    e.model.r,
                    e.model.name,
                    e.model.family,
                    e.model.mult,
                    e.model.dim_m,
                    e.model.dim_g,
                    e.d_max,
                    e.cross_check.passed
                )?;
            }
        }
    }
    Ok(if entries.iter().all(|e| e.cross_check.passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["even-clifford"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranges() {
        assert_eq!("3:9".parse::<Range>(), Ok(Range { lo: 3, hi: 9 }));
        assert_eq!("4".parse::<Range>(), Ok(Range { lo: 4, hi: 4 }));
        assert!("a:3".parse::<Range>().is_err());
    }

    #[test]
    fn report_json() {
        let (code, out, _) = call(&["report", "--rank", "9", "--mult", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["d_max"], 52);
        assert_eq!(v["gap_threshold"], 16);
        assert!(v["models"].as_array().unwrap().iter().any(|m| m["name"] == "F4/Spin(9)"));
    }

    #[test]
    fn mismatched_multiplicity_names_the_class() {
        let (code, _, err) = call(&["report", "--rank", "8", "--mult", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("r mod 8 = 0"), "{err}");
        assert!(err.contains("m1,m2"), "{err}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["report", "--rank", "1", "--mult", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["report", "--rank", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--rank", "3", "--mult", "1", "--tolerance", "-1"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = call(&["verify", "--rank", "5", "--mult", "1"]);
        assert_eq!(code, 0, "{out}");
        let v: VerifyOutput = serde_json::from_str(&out).unwrap();
        let c = v.checks.iter().find(|c| c.name == "centralizer_dim").unwrap();
        assert!(c.detail.starts_with("computed 3"));
    }

    #[test]
    fn verify_size_refusal() {
        let (code, _, err) = call(&["verify", "--rank", "16", "--mult", "1,0"]);
        assert_eq!(code, EXIT_TOO_LARGE);
        assert!(err.contains("--mode float"));
        let (code, _, _) = call(&["verify", "--rank", "5", "--mult", "2", "--max-size", "8"]);
        assert_eq!(code, EXIT_TOO_LARGE);
    }

    #[test]
    fn verify_reports_failures_with_exit_one() {
        // single half-spin block at rank 4: the J_ij span only three dimensions
        let (code, out, _) = call(&["verify", "--rank", "4", "--mult", "1,0", "--checks", "structure"]);
        assert_eq!(code, EXIT_CHECK_FAILED);
        let v: VerifyOutput = serde_json::from_str(&out).unwrap();
        assert!(!v.checks.iter().find(|c| c.name == "span_dimension").unwrap().passed);
    }

    #[test]
    fn scan_csv() {
        let (code, out, _) = call(&["scan", "--ranks", "3", "--mults", "1:5"]);
        assert_eq!(code, 0);
        let d: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
        assert_eq!(d, ["10", "21", "36", "55", "78"]);
        let (code, out, _) = call(&["scan", "--ranks", "5:3", "--mults", "1:5"]);
        assert_eq!((code, out.lines().count()), (0, 1));
    }

    #[test]
    fn scan_filters() {
        let (code, out, _) = call(&[
            "scan", "--ranks", "3:9", "--mults", "1:30", "--constraints-ok", "true", "--gap-ok", "false",
            "--format", "json",
        ]);
        assert_eq!(code, 0);
        let rows: Vec<BoundsReport> = serde_json::from_str(&out).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn json_round_trips_byte_identically() {
        let (_, out, _) = call(&["report", "--rank", "4", "--mult", "1,2"]);
        let parsed: ReportOutput = serde_json::from_str(&out).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap()), out);
        let (_, out, _) = call(&["export-atlas", "--max-k", "2"]);
        let parsed: Vec<CatalogEntry> = serde_json::from_str(&out).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap()), out);
    }
}
