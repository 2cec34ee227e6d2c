//! Command-line front end. `run` parses arguments, dispatches, and returns the
//! process exit status: 0 success, 1 usage, 2 validation failure, 3 mismatch
//! against an expected result, 4 resource limit.

use std::collections::HashMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::format::{
    parse_generators, parse_ideal, parse_lattice, parse_matroid, parse_quotient_generators, parse_support,
    starts_with_record, write_ideal, write_lattice, write_matroid, FormatError,
};
use crate::ideal::{remark_facts, IdealError, Limits, Support, TropicalIdeal};
use crate::lattice::{IntVector, IntegerLattice, LatticeError};
use crate::matroid::{non_pappus, FiniteMatroid, Label, MatroidError};
use crate::partition::{is_d_sparse, AxiomCheck, PartitionError, Window};
use crate::realize::{
    prop46_experiment, search_with_options, Expected, FiniteField, RealizeError, SearchOptions, TargetRun,
};
use crate::suite::{verify_window_suite, SuiteOptions};

pub const ENV_MAX_WINDOW_POINTS: &str = "PAVING_IDEALS_MAX_WINDOW_POINTS";
pub const ENV_MAX_SUBSETS: &str = "PAVING_IDEALS_MAX_SUBSETS";
pub const ENV_MAX_CANDIDATES: &str = "PAVING_IDEALS_MAX_CANDIDATES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "paving-ideals", version, about = "Zero-dimensional Boolean tropical ideals: construct, query, verify")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest window that may be materialized.
    #[arg(long, global = true)]
    max_window_points: Option<usize>,
    /// Largest subset scan allowed during circuit enumeration.
    #[arg(long, global = true)]
    max_subsets: Option<usize>,
    /// Largest number of candidate matrices in a realizability search.
    #[arg(long, global = true)]
    max_candidates: Option<u64>,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hermite normal form of a lattice (file, `-`, or rows like `2,0;0,2`).
    Hnf { lattice: String },
    /// Invariant factors and free rank of Z^n / L.
    Snf { lattice: String },
    /// Check (A1)-(A3) for a partition file (plain or quotient).
    CheckGens { input: String },
    /// Whether a finite point set is d-sparse.
    Sparse {
        #[arg(short)]
        d: usize,
        /// Points separated by `;` (or whitespace-separated integers in one variable).
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Whether a support belongs to the ideal.
    Member {
        #[arg(long, default_value = "-")]
        ideal: String,
        #[command(flatten)]
        support: SupportArgs,
    },
    /// Circuits of the ideal inside a window or support.
    Circuits {
        #[arg(long, default_value = "-")]
        ideal: String,
        #[command(flatten)]
        region: RegionArgs,
    },
    /// Degree of the ideal, optionally confirmed on a window.
    Degree {
        #[arg(long, default_value = "-")]
        ideal: String,
        #[arg(long = "box", num_args = 2.., allow_negative_numbers = true)]
        bounds: Option<Vec<i64>>,
    },
    /// Underlying matroid on a window or support.
    RestrictWindow {
        #[arg(long, default_value = "-")]
        ideal: String,
        #[command(flatten)]
        region: RegionArgs,
        /// Matroid file to compare with; the ideal is restricted to its points.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Restriction to a subset of the variables (1-based axes).
    RestrictVars {
        #[arg(long, default_value = "-")]
        ideal: String,
        #[arg(long, num_args = 1.., required = true)]
        axes: Vec<usize>,
    },
    /// Extend a paving matroid to a paving ideal.
    ExtendMatroid {
        #[arg(default_value = "-")]
        input: String,
        /// Token labels are embedded at base^0, base^1, ... in ground order.
        #[arg(long, default_value_t = 2)]
        base: u32,
    },
    /// Run the axiom suite on a window.
    VerifyWindow {
        #[arg(long, default_value = "-")]
        ideal: String,
        #[arg(long = "box", num_args = 2.., allow_negative_numbers = true, required = true)]
        bounds: Vec<i64>,
    },
    /// Search commuting 2x2 matrix tuples realizing a degree-2 ideal.
    RealizeSearch {
        /// Target lattice: file, `-`, `4Z`, or rows like `2,0;0,2`.
        #[arg(long)]
        target: String,
        /// Field orders to scan.
        #[arg(long = "field", num_args = 1.., default_values_t = vec![2usize, 3, 4, 5])]
        fields: Vec<usize>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// The trivariate non-realizability experiment.
    Prop46,
    /// Print one of the named examples.
    Example {
        name: ExampleName,
        /// For non-pappus: label the ground by 2^0, ..., 2^8 instead of tokens.
        #[arg(long)]
        points: bool,
    },
}

#[derive(clap::Args, Debug)]
struct SupportArgs {
    /// Inline support: points separated by `;`, or integers in one variable.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "support_file")]
    support: Option<String>,
    /// Support file (`support <k>` record).
    #[arg(long)]
    support_file: Option<String>,
}

#[derive(clap::Args, Debug)]
struct RegionArgs {
    /// Window bounds `lo1 hi1 [lo2 hi2 ...]`.
    #[arg(long = "box", num_args = 2.., allow_negative_numbers = true)]
    bounds: Option<Vec<i64>>,
    #[command(flatten)]
    support: SupportArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Expect {
    Zero,
    Some,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleName {
    MPower,
    NonPappus,
    RemarkD3,
    LatticeDeg2,
    Uniform,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Validation(String),
    Mismatch(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Mismatch(m) | CliError::Resource(m) => m,
        }
    }
}

fn partition_error(e: PartitionError) -> CliError {
    match e {
        PartitionError::WindowTooLarge { .. } => CliError::Resource(e.to_string()),
        e => CliError::Validation(e.to_string()),
    }
}

fn matroid_error(e: MatroidError) -> CliError {
    match e {
        MatroidError::TooLarge { .. } => CliError::Resource(e.to_string()),
        e => CliError::Validation(e.to_string()),
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::TooManySubsets { .. } => CliError::Resource(e.to_string()),
            IdealError::Partition(p) => partition_error(p),
            IdealError::Matroid(m) => matroid_error(m),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Ideal(i) => i.into(),
            FormatError::Partition(p) => partition_error(p),
            FormatError::Matroid(m) => matroid_error(m),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        partition_error(e)
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        matroid_error(e)
    }
}

impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::CandidateLimit { .. } | RealizeError::FieldTooLarge { .. } | RealizeError::TooManyVariables(_) => {
                CliError::Resource(e.to_string())
            }
            RealizeError::Ideal(i) => i.into(),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

/// Runs against the process's stdin, stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs with explicit streams. The first argument is the program name.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { stdin, stdin_used: false, json: cli.json, buf: String::new(), limits: limits(&cli), cli: &cli };
    let result = ctx.dispatch();
    let body = std::mem::take(&mut ctx.buf);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => out.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

struct CliLimits {
    window: Limits,
    candidates: u64,
}

fn env_number<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok().and_then(|v| v.trim().parse().ok())
}

/// Flags win over the environment, which wins over the defaults.
fn limits(cli: &Cli) -> CliLimits {
    let d = Limits::default();
    CliLimits {
        window: Limits {
            max_window_points: cli
                .max_window_points
                .or_else(|| env_number(ENV_MAX_WINDOW_POINTS))
                .unwrap_or(d.max_window_points),
            max_subsets: cli.max_subsets.or_else(|| env_number(ENV_MAX_SUBSETS)).unwrap_or(d.max_subsets),
        },
        candidates: cli
            .max_candidates
            .or_else(|| env_number(ENV_MAX_CANDIDATES))
            .unwrap_or(SearchOptions::default().max_candidates),
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    json: bool,
    buf: String,
    limits: CliLimits,
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn print(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        if !self.buf.ends_with('\n') {
            self.buf.push('\n');
        }
    }

    fn print_json<T: Serialize>(&mut self, v: &T) -> CliResult {
        let s = serde_json::to_string_pretty(v)?;
        self.print(s);
        Ok(())
    }

    /// Contents of a path, or of stdin for `-` (readable once).
    fn read_source(&mut self, src: &str) -> Result<String, CliError> {
        if src == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            return Ok(s);
        }
        std::fs::read_to_string(src).map_err(|e| CliError::Usage(format!("cannot read {src}: {e}")))
    }

    fn dispatch(&mut self) -> CliResult {
        match &self.cli.cmd {
            Cmd::Hnf { lattice } => self.hnf(lattice),
            Cmd::Snf { lattice } => self.snf(lattice),
            Cmd::CheckGens { input } => self.check_gens(input),
            Cmd::Sparse { d, points } => self.sparse(*d, points),
            Cmd::Member { ideal, support } => self.member(ideal, support),
            Cmd::Circuits { ideal, region } => self.circuits(ideal, region),
            Cmd::Degree { ideal, bounds } => self.degree(ideal, bounds.as_deref()),
            Cmd::RestrictWindow { ideal, region, compare } => self.restrict_window(ideal, region, compare.as_deref()),
            Cmd::RestrictVars { ideal, axes } => self.restrict_vars(ideal, axes),
            Cmd::ExtendMatroid { input, base } => self.extend_matroid(input, *base),
            Cmd::VerifyWindow { ideal, bounds } => self.verify_window(ideal, bounds),
            Cmd::RealizeSearch { target, fields, expect } => self.realize_search(target, fields, *expect),
            Cmd::Prop46 => self.prop46(),
            Cmd::Example { name, points } => self.example(*name, *points),
        }
    }

    // ---- inputs

    fn lattice_arg(&mut self, src: &str) -> Result<IntegerLattice, CliError> {
        if let Some(l) = inline_lattice(src)? {
            return Ok(l);
        }
        Ok(parse_lattice(&self.read_source(src)?)?)
    }

    fn ideal_arg(&mut self, src: &str) -> Result<TropicalIdeal, CliError> {
        if let Some(i) = inline_ideal(src)? {
            return Ok(i);
        }
        Ok(parse_ideal(&self.read_source(src)?)?)
    }

    fn support_arg(&mut self, args: &SupportArgs, n: usize) -> Result<Option<Support>, CliError> {
        if let Some(s) = &args.support {
            return Ok(Some(Support::new(inline_points(s, n)?)?));
        }
        if let Some(path) = &args.support_file {
            return Ok(Some(parse_support(&self.read_source(path)?, n)?));
        }
        Ok(None)
    }

    /// The points of a `--box` window or a support.
    fn region_points(&mut self, region: &RegionArgs, n: usize) -> Result<Vec<IntVector>, CliError> {
        match (&region.bounds, self.support_arg(&region.support, n)?) {
            (Some(b), None) => Ok(window(b, n)?.points(self.limits.window.max_window_points)?),
            (None, Some(s)) => Ok(s.points().to_vec()),
            _ => Err(CliError::Usage("give exactly one of --box, --support, --support-file".into())),
        }
    }

    // ---- commands

    fn hnf(&mut self, src: &str) -> CliResult {
        let l = self.lattice_arg(src)?;
        if self.json {
            #[derive(Serialize)]
            struct Out {
                dim: usize,
                rank: usize,
                basis: Vec<IntVector>,
                index: Option<String>,
            }
            let out = Out {
                dim: l.ambient_dim(),
                rank: l.rank(),
                basis: l.basis().to_vec(),
                index: l.index().map(|i| i.to_string()),
            };
            return self.print_json(&out);
        }
        self.print(write_lattice(&l));
        Ok(())
    }

    fn snf(&mut self, src: &str) -> CliResult {
        let l = self.lattice_arg(src)?;
        let q = l.quotient();
        let factors: Vec<String> =
            q.invariant_factors().iter().filter(|f| **f != BigInt::from(1)).map(|f| f.to_string()).collect();
        let free = q.free_rank();
        if self.json {
            #[derive(Serialize)]
            struct Out {
                invariant_factors: Vec<String>,
                free_rank: usize,
                order: Option<String>,
            }
            let order = q.order().map(|o| o.to_string());
            return self.print_json(&Out { invariant_factors: factors, free_rank: free, order });
        }
        let mut parts: Vec<String> = factors.iter().map(|f| format!("Z/{f}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(free));
        if parts.is_empty() {
            parts.push("0".into());
        }
        self.print(format!(
            "invariant factors: {}\nfree rank: {}\nquotient: {}",
            if factors.is_empty() { "-".to_string() } else { factors.join(" ") },
            free,
            parts.join(" + ")
        ));
        Ok(())
    }

    fn check_gens(&mut self, src: &str) -> CliResult {
        let text = self.read_source(src)?;
        let check = if starts_with_record(&text, "lattice") {
            parse_quotient_generators(&text)?.check_axioms()
        } else {
            parse_generators(&text)?.check_axioms()
        };
        if self.json {
            self.print_json(&check)?;
        } else if let AxiomCheck::Violation(v) = &check {
            self.print(format!("invalid: {v}"));
        } else {
            self.print("valid");
        }
        match check {
            AxiomCheck::Valid => Ok(()),
            AxiomCheck::Violation(v) => Err(CliError::Validation(v.to_string())),
        }
    }

    fn sparse(&mut self, d: usize, points: &str) -> CliResult {
        let n = if points.contains(';') {
            points.split(';').find(|p| !p.trim().is_empty()).map_or(1, |p| p.split_whitespace().count())
        } else {
            1
        };
        let pts = inline_points(points, n)?;
        let ans = is_d_sparse(&pts, d);
        if self.json {
            return self.print_json(&serde_json::json!({ "d": d, "sparse": ans }));
        }
        self.print(ans.to_string());
        Ok(())
    }

    fn member(&mut self, ideal: &str, support: &SupportArgs) -> CliResult {
        let i = self.ideal_arg(ideal)?;
        let s = self
            .support_arg(support, i.ambient_dim())?
            .ok_or_else(|| CliError::Usage("member needs --support or --support-file".into()))?;
        let ans = i.contains(&s)?;
        if self.json {
            return self.print_json(&serde_json::json!({ "support": s, "member": ans }));
        }
        self.print(ans.to_string());
        Ok(())
    }

    fn circuits(&mut self, ideal: &str, region: &RegionArgs) -> CliResult {
        let i = self.ideal_arg(ideal)?;
        let pts = self.region_points(region, i.ambient_dim())?;
        let cs = i.circuits_on(&pts, &self.limits.window)?;
        if self.json {
            return self.print_json(&cs);
        }
        let mut s = format!("circuits {}\n", cs.len());
        for c in &cs {
            let pts: Vec<String> = c.points().iter().map(point_words).collect();
            s.push_str(&pts.join(" ; "));
            s.push('\n');
        }
        self.print(s);
        Ok(())
    }

    fn degree(&mut self, ideal: &str, bounds: Option<&[i64]>) -> CliResult {
        let i = self.ideal_arg(ideal)?;
        let Some(b) = bounds else {
            if self.json {
                return self.print_json(&serde_json::json!({ "degree": i.degree() }));
            }
            self.print(i.degree().to_string());
            return Ok(());
        };
        let w = window(b, i.ambient_dim())?;
        let check = i.verify_degree_on_window(&w, &self.limits.window)?;
        if self.json {
            self.print_json(&check)?;
        } else {
            self.print(format!(
                "degree {}\nwindow rank {}: {}",
                check.expected,
                check.observed,
                if check.matches { "consistent" } else { "MISMATCH" }
            ));
        }
        if check.matches {
            Ok(())
        } else {
            Err(CliError::Mismatch(format!("window rank {} differs from degree {}", check.observed, check.expected)))
        }
    }

    fn restrict_window(&mut self, ideal: &str, region: &RegionArgs, compare: Option<&str>) -> CliResult {
        let i = self.ideal_arg(ideal)?;
        let n = i.ambient_dim();
        let Some(path) = compare else {
            let pts = self.region_points(region, n)?;
            let m = i.restrict_to_points(&pts, &self.limits.window)?;
            return self.emit_matroid(&m);
        };
        let other = parse_matroid(&self.read_source(path)?)?;
        let mut pts = Vec::with_capacity(other.len());
        for l in other.ground() {
            let p = l
                .as_point()
                .ok_or_else(|| CliError::Validation(format!("comparison label {l} is not a point")))?;
            p.check_dim(n)?;
            pts.push(p.clone());
        }
        // Restricting to the window and then to these points is the same as
        // restricting to the points, as long as they lie in the window.
        if let Some(b) = &region.bounds {
            let w = window(b, n)?;
            if let Some(p) = pts.iter().find(|p| !in_window(&w, p)) {
                return Err(CliError::Validation(format!("comparison point {p:?} lies outside the window")));
            }
        }
        let m = i.restrict_to_points(&pts, &self.limits.window)?;
        let equal = m == other;
        if self.json {
            self.print_json(&serde_json::json!({ "points": pts.len(), "equal": equal }))?;
        } else {
            self.print(if equal { "equal" } else { "differ" });
        }
        if equal {
            Ok(())
        } else {
            Err(CliError::Mismatch("restriction differs from the comparison matroid".into()))
        }
    }

    fn emit_matroid(&mut self, m: &FiniteMatroid) -> CliResult {
        if self.json {
            #[derive(Serialize)]
            struct Out {
                ground: Vec<Label>,
                rank: usize,
                circuits: Vec<Vec<usize>>,
            }
            return self.print_json(&Out { ground: m.ground().to_vec(), rank: m.rank(), circuits: m.circuits().to_vec() });
        }
        self.print(write_matroid(m));
        Ok(())
    }

    fn restrict_vars(&mut self, ideal: &str, axes: &[usize]) -> CliResult {
        let i = self.ideal_arg(ideal)?;
        if axes.iter().any(|&a| a == 0 || a > i.ambient_dim()) {
            return Err(CliError::Usage(format!("axes are 1-based and at most {}", i.ambient_dim())));
        }
        let zero_based: Vec<usize> = axes.iter().map(|a| a - 1).collect();
        let r = i.restrict_vars(&zero_based)?;
        self.emit_ideal(&r)
    }

    fn emit_ideal(&mut self, i: &TropicalIdeal) -> CliResult {
        if self.json {
            return self.print_json(&serde_json::json!({
                "kind": i.kind(),
                "n": i.ambient_dim(),
                "degree": i.degree(),
                "binomial_lattice": i.binomial_lattice().basis(),
                "record": write_ideal(i),
            }));
        }
        self.print(write_ideal(i));
        Ok(())
    }

    fn extend_matroid(&mut self, src: &str, base: u32) -> CliResult {
        let m = parse_matroid(&self.read_source(src)?)?;
        if base < 2 {
            return Err(CliError::Usage("--base must be at least 2".into()));
        }
        let emb = power_embedding(&m, base);
        let i = TropicalIdeal::extend_matroid(&m, &emb)?;
        self.emit_ideal(&i)
    }

    fn verify_window(&mut self, ideal: &str, bounds: &[i64]) -> CliResult {
        let i = self.ideal_arg(ideal)?;
        let w = window(bounds, i.ambient_dim())?;
        let mut opts = SuiteOptions { limits: self.limits.window, ..SuiteOptions::default() };
        if let Some(s) = self.cli.seed {
            opts.seed = s;
        }
        let r = verify_window_suite(&i, &w, &opts)?;
        if self.json {
            self.print_json(&r)?;
        } else {
            let mut s = format!("{} ideal, degree {}, {} points, {} circuits\n", r.kind, r.degree, r.points, r.circuits);
            for sec in &r.sections {
                let status = if sec.report.passed { "pass" } else { "FAIL" };
                s.push_str(&format!("{:<24} {status}", sec.name));
                if let Some(note) = &sec.note {
                    s.push_str(&format!("  ({note})"));
                }
                s.push('\n');
                for f in &sec.report.failures {
                    s.push_str(&format!("  ({}) {} {:?}\n", f.axiom, f.detail, f.witness));
                }
            }
            s.push_str(if r.passed { "all checks pass" } else { "some checks FAIL" });
            self.print(s);
        }
        if r.passed {
            Ok(())
        } else {
            let first = r.sections.iter().find(|s| !s.report.passed).map(|s| s.name.clone()).unwrap_or_default();
            Err(CliError::Validation(format!("window suite failed in {first}")))
        }
    }

    fn realize_search(&mut self, target: &str, fields: &[usize], expect: Option<Expect>) -> CliResult {
        let t = self.lattice_arg(target)?;
        let expected = expect.map(|e| match e {
            Expect::Zero => Expected::Zero,
            Expect::Some => Expected::AtLeastOne,
        });
        let opts = SearchOptions { max_candidates: self.limits.candidates };
        let mut runs = Vec::new();
        for &q in fields {
            let f = FiniteField::gf(q).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = search_with_options(&t, &f, &opts)?;
            runs.push(TargetRun::from_report(&report, expected));
        }
        if self.json {
            self.print_json(&runs)?;
        } else {
            let names: Vec<String> = runs.iter().map(|r| r.field.clone()).collect();
            let mut s = String::new();
            for r in &runs {
                s.push_str(&r.render());
                s.push('\n');
            }
            s.push_str(&format!("fields covered: {}", names.join(", ")));
            self.print(s);
        }
        match runs.iter().find(|r| !r.matches) {
            None => Ok(()),
            Some(r) => Err(CliError::Mismatch(format!("{} over {}: {} witnesses", r.target, r.field, r.witness_count))),
        }
    }

    fn prop46(&mut self) -> CliResult {
        let r = prop46_experiment()?;
        if self.json {
            self.print_json(&r)?;
        } else {
            let mut s = format!(
                "lattice {}\nrestriction to x1: {}\nrestriction to x2,x3: {}\nrestrictions {}\n",
                r.lattice,
                r.restriction_x1,
                r.restriction_x2x3,
                if r.restrictions_match { "ok" } else { "MISMATCH" }
            );
            for run in r.runs() {
                s.push_str(&run.render());
                s.push('\n');
            }
            s.push_str(&format!("fields covered: {}\n", r.fields.join(", ")));
            s.push_str(if r.matches {
                "consistent with non-realizability over every field (checked only over the fields above)"
            } else {
                "MISMATCH against the expected table"
            });
            self.print(s);
        }
        if r.matches {
            Ok(())
        } else {
            Err(CliError::Mismatch("prop46 results differ from the expected table".into()))
        }
    }

    fn example(&mut self, name: ExampleName, points: bool) -> CliResult {
        if name == ExampleName::NonPappus {
            let m = if points { pointed(&non_pappus(), 2) } else { non_pappus() };
            return self.emit_matroid(&m);
        }
        if name == ExampleName::RemarkD3 && !self.json {
            let facts = remark_facts(3)?;
            self.print(format!(
                "# [(2,0)] + S == S: {}; S is a subgroup coset: {}",
                facts.shift_fixes_block, facts.is_subgroup_coset
            ));
        }
        let i = example_ideal(name)?;
        self.emit_ideal(&i)
    }
}

/// The ideal-valued named examples.
pub fn example_ideal(name: ExampleName) -> Result<TropicalIdeal, IdealError> {
    match name {
        ExampleName::MPower => TropicalIdeal::m_s_ideal(2, &[0, 1, 2, 3, 4, 5]),
        ExampleName::RemarkD3 => TropicalIdeal::remark_example(3),
        ExampleName::LatticeDeg2 => TropicalIdeal::degree2_from_lattice(IntegerLattice::from_rows(
            3,
            &[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]],
        )?),
        ExampleName::Uniform => TropicalIdeal::uniform_ideal(1, 2),
        ExampleName::NonPappus => TropicalIdeal::extend_point_matroid(&pointed(&non_pappus(), 2)),
    }
}

/// Points as given, tokens at `base^i` for the i-th ground element.
pub fn power_embedding(m: &FiniteMatroid, base: u32) -> HashMap<Label, IntVector> {
    let mut power = BigInt::from(1);
    let mut emb = HashMap::new();
    for l in m.ground() {
        let p = match l {
            Label::Point(p) => p.clone(),
            Label::Token(_) => IntVector::new(vec![power.clone()]),
        };
        power *= base;
        emb.insert(l.clone(), p);
    }
    emb
}

/// The matroid relabelled through [`power_embedding`].
pub fn pointed(m: &FiniteMatroid, base: u32) -> FiniteMatroid {
    let emb = power_embedding(m, base);
    let ground: Vec<Label> = m.ground().iter().map(|l| Label::Point(emb[l].clone())).collect();
    FiniteMatroid::from_index_circuits(ground, m.circuits().to_vec()).expect("relabelling keeps labels distinct")
}

fn point_words(p: &IntVector) -> String {
    p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn in_window(w: &Window, p: &IntVector) -> bool {
    (0..w.dim()).all(|i| w.lo().get(i) <= p.get(i) && p.get(i) <= w.hi().get(i))
}

fn window(bounds: &[i64], n: usize) -> Result<Window, CliError> {
    if bounds.len() != 2 * n {
        return Err(CliError::Usage(format!("--box needs {} numbers (lo hi per axis) for {n} variables", 2 * n)));
    }
    let lo: Vec<i64> = bounds.iter().step_by(2).copied().collect();
    let hi: Vec<i64> = bounds.iter().skip(1).step_by(2).copied().collect();
    Ok(Window::from_bounds(&lo, &hi)?)
}

fn parse_int(w: &str) -> Result<BigInt, CliError> {
    w.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad integer `{w}`")))
}

/// `a b; c d` as points of dimension `n`; without `;` in one variable every
/// integer is a point.
fn inline_points(s: &str, n: usize) -> Result<Vec<IntVector>, CliError> {
    let parts: Vec<&str> = if s.contains(';') {
        s.split(';').map(str::trim).filter(|p| !p.is_empty()).collect()
    } else if n == 1 {
        s.split_whitespace().collect()
    } else if s.trim().is_empty() {
        Vec::new()
    } else {
        vec![s.trim()]
    };
    parts
        .into_iter()
        .map(|p| {
            let coords = p.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty()).map(parse_int).collect::<Result<Vec<_>, _>>()?;
            if coords.len() != n {
                return Err(CliError::Usage(format!("point `{p}` should have {n} coordinates")));
            }
            Ok(IntVector::new(coords))
        })
        .collect()
}

/// `4Z` or rows like `4,0,0;0,2,0;0,0,2`. `None` when the text names a file.
fn inline_lattice(s: &str) -> Result<Option<IntegerLattice>, CliError> {
    if s == "-" || std::path::Path::new(s).exists() {
        return Ok(None);
    }
    if let Some(k) = s.strip_suffix('Z') {
        let k = if k.is_empty() { BigInt::from(1) } else { parse_int(k)? };
        return Ok(Some(IntegerLattice::hnf(1, &[IntVector::new(vec![k])])?));
    }
    let rows: Vec<&str> = s.split(';').map(str::trim).filter(|r| !r.is_empty()).collect();
    if rows.is_empty() || !rows.iter().all(|r| r.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '-' || c == ' ')) {
        return Err(CliError::Usage(format!("`{s}` is neither a file nor a lattice literal")));
    }
    let parsed: Vec<IntVector> = rows
        .iter()
        .map(|r| r.split(',').map(parse_int).collect::<Result<Vec<_>, _>>().map(IntVector::new))
        .collect::<Result<_, _>>()?;
    let n = parsed[0].dim();
    Ok(Some(IntegerLattice::hnf(n, &parsed)?))
}

/// `lattice2:<lattice>`, `mpower:<m>:<a>..<b>` or `mpower:<m>:<e1>,<e2>,...`,
/// `uniform:<n>:<d>`, `remark:<d>`, `example:<name>`. `None` for files.
fn inline_ideal(s: &str) -> Result<Option<TropicalIdeal>, CliError> {
    if s == "-" || std::path::Path::new(s).exists() {
        return Ok(None);
    }
    let Some((kind, rest)) = s.split_once(':') else {
        return Err(CliError::Usage(format!("`{s}` is neither a file nor an ideal literal")));
    };
    let bad = || CliError::Usage(format!("malformed ideal literal `{s}`"));
    let ideal = match kind {
        "lattice2" => TropicalIdeal::degree2_from_lattice(inline_lattice(rest)?.ok_or_else(bad)?)?,
        "mpower" => {
            let (m, exps) = rest.split_once(':').ok_or_else(bad)?;
            let m: u32 = m.parse().map_err(|_| bad())?;
            let exps: Vec<u32> = if let Some((a, b)) = exps.split_once("..") {
                let (a, b): (u32, u32) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                (a..=b).collect()
            } else {
                exps.split(',').map(|e| e.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
            };
            TropicalIdeal::m_s_ideal(m, &exps)?
        }
        "uniform" => {
            let (n, d) = rest.split_once(':').ok_or_else(bad)?;
            TropicalIdeal::uniform_ideal(n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?)?
        }
        "remark" => TropicalIdeal::remark_example(rest.parse().map_err(|_| bad())?)?,
        "example" => {
            let name = ExampleName::from_str(rest, true).map_err(|_| bad())?;
            example_ideal(name)?
        }
        _ => return Err(bad()),
    };
    Ok(Some(ideal))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["paving-ideals"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn member_inline() {
        assert_eq!(call(&["member", "--ideal", "lattice2:2Z", "--support", "0 2"], ""), (0, "true\n".into(), String::new()));
        assert_eq!(call(&["member", "--ideal", "lattice2:2Z", "--support", "0 1"], "").1, "false\n");
    }

    #[test]
    fn hnf_and_snf() {
        let (code, out, _) = call(&["hnf", "2,0;0,2;2,2"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "lattice 2 2\n2 0\n0 2\n");
        let (_, out, _) = call(&["snf", "-"], "lattice 2 1\n2 4\n");
        assert!(out.contains("invariant factors: 2") && out.contains("quotient: Z/2 + Z"), "{out}");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["frobnicate"], "").0, EXIT_USAGE);
        assert_eq!(call(&["member", "--ideal", "nonsense"], "").0, EXIT_USAGE);
        assert_eq!(call(&["--help"], "").0, EXIT_OK);
    }

    #[test]
    fn corrupted_partition_reports_a3() {
        let text = "dpartition 1 2 2\nfinite 3\n0\n1\n3\nfinite 3\n0\n1\n5\n";
        let (code, out, _) = call(&["check-gens", "-"], text);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(out.starts_with("invalid: (A3)"), "{out}");
    }

    #[test]
    fn verify_window_m_power() {
        let (code, out, _) = call(&["verify-window", "--ideal", "mpower:2:0..5", "--box", "-10", "10"], "");
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("all checks pass"));
    }

    #[test]
    fn resource_limit_exit_four() {
        let (code, _, err) =
            call(&["verify-window", "--ideal", "uniform:2:2", "--box", "0", "99", "0", "99", "--max-window-points", "50"], "");
        assert_eq!(code, EXIT_RESOURCE, "{err}");
    }

    #[test]
    fn non_pappus_pipeline() {
        let (_, matroid, _) = call(&["example", "non-pappus"], "");
        let (code, ideal, _) = call(&["extend-matroid"], &matroid);
        assert_eq!(code, 0);
        let dir = std::env::temp_dir().join(format!("pi-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cmp = dir.join("np.txt");
        std::fs::write(&cmp, call(&["example", "non-pappus", "--points"], "").1).unwrap();
        let (code, out, err) =
            call(&["restrict-window", "--box", "0", "256", "--compare", cmp.to_str().unwrap()], &ideal);
        assert_eq!((code, out.as_str()), (0, "equal\n"), "{err}");
    }

    #[test]
    fn realize_search_expectations() {
        assert_eq!(call(&["realize-search", "--target", "4Z", "--field", "3", "--expect", "some"], "").0, 0);
        assert_eq!(call(&["realize-search", "--target", "4Z", "--field", "2", "4", "--expect", "zero"], "").0, 0);
        assert_eq!(call(&["realize-search", "--target", "4Z", "--field", "3", "--expect", "zero"], "").0, EXIT_MISMATCH);
    }

    #[test]
    fn restrict_vars_one_based() {
        let (code, out, _) = call(&["restrict-vars", "--ideal", "lattice2:4,0,0;0,2,0;0,0,2", "--axes", "1"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "ideal lattice2 1\nlattice 1 1\n4\n");
        assert_eq!(call(&["restrict-vars", "--ideal", "lattice2:4,0,0;0,2,0;0,0,2", "--axes", "0"], "").0, EXIT_USAGE);
    }

    #[test]
    fn degree_with_window() {
        let (code, out, _) = call(&["degree", "--ideal", "mpower:2:0..5", "--box", "0", "10"], "");
        assert_eq!(code, 0);
        assert!(out.starts_with("degree 3\nwindow rank 3: consistent"));
    }

    #[test]
    fn json_is_deterministic() {
        let a = call(&["--json", "verify-window", "--ideal", "example:remark-d3", "--box", "0", "5", "0", "1"], "");
        let b = call(&["--json", "verify-window", "--ideal", "example:remark-d3", "--box", "0", "5", "0", "1"], "");
        assert_eq!(a, b);
        assert!(serde_json::from_str::<serde_json::Value>(&a.1).is_ok());
    }

    #[test]
    fn sparse_points() {
        assert_eq!(call(&["sparse", "-d", "2", "--points", "1 2 4 8"], "").1, "true\n");
        assert_eq!(call(&["sparse", "-d", "2", "--points", "0 1 2"], "").1, "false\n");
        assert_eq!(call(&["sparse", "-d", "2", "--points", "0 0; 1 0; 0 1"], "").1, "true\n");
    }
}
