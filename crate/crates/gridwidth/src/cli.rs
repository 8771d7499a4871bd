//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gridwidth_core::certificate::{CertificateError, PathDecomposition, VertexOrdering};
use gridwidth_core::formulas::{conjecture_4d, vbw_3d, vbw_hypercube, vbw_large_max, vbw_torus_large_max};
use gridwidth_core::oracle::{brute_bandwidth, brute_pathwidth, brute_phi, brute_phi_all};
use gridwidth_core::sweep::{sweep_with, SweepError, SweepSummary, DEFAULT_MEMORY_CAP};
use gridwidth_core::torus::{reduce_torus, TorusError, TorusShape};
use gridwidth_core::{
    best_formula, emit_bandwidth_ordering, emit_path_decomposition, ordering_bandwidth,
    verify_path_decomposition, FormulaError, FormulaResult, Graph, GridError, GridShape, Method,
    OracleError,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{self, FormatError, ProfileWriter};
use crate::selfcheck;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable mirroring `--mem`.
pub const MEM_ENV: &str = "GRIDWIDTH_MEM";

#[derive(Debug, Parser)]
#[command(
    name = "gridwidth",
    version,
    about = "Exact bandwidth, pathwidth and vertex boundary width of grids, even tori and hypercubes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Working-memory cap in bytes for sweeps and certificates.
    #[arg(long, global = true, env = MEM_ENV, value_name = "BYTES")]
    pub mem: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Best closed form for a grid.
    Formula {
        #[arg(required = true, value_name = "N")]
        dims: Vec<usize>,
    },
    /// Exact width by sweeping the simplicial order.
    Sweep {
        #[arg(required = true, value_name = "N")]
        dims: Vec<usize>,
        /// Write the boundary profile as CSV.
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
        /// Write every row of the profile, however long.
        #[arg(long, requires = "profile")]
        full: bool,
    },
    /// Widths of an even torus C_L1 x C_L2 x ...
    Torus {
        #[arg(required = true, value_name = "L")]
        lengths: Vec<usize>,
    },
    /// Emit and verify an optimal ordering and path decomposition.
    Certify {
        #[arg(required = true, value_name = "N")]
        dims: Vec<usize>,
        #[arg(long, value_name = "FILE")]
        ordering: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        decomp: Option<PathBuf>,
        /// Read the given files and verify them instead of emitting.
        #[arg(long)]
        verify_only: bool,
    },
    /// Brute-force values on tiny graphs.
    Oracle(OracleArgs),
    /// Compare sweeps of P_n^4 against the conjectured closed form.
    Conjecture4d {
        #[arg(long, default_value_t = 30, value_name = "N")]
        max_n: u64,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long, value_name = "T")]
        threads: Option<usize>,
    },
    /// Cross-validate formulas, sweeps and oracles at desk scale.
    Selfcheck,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("graph").required(true).args(["grid", "torus", "file"])))]
pub struct OracleArgs {
    #[arg(long, num_args = 1.., value_name = "N")]
    pub grid: Option<Vec<usize>>,
    #[arg(long, num_args = 1.., value_name = "L")]
    pub torus: Option<Vec<usize>>,
    /// Graph file: `n m` followed by `m` lines `u v`.
    #[arg(long, value_name = "GRAPH")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Quantity::Vbw)]
    pub what: Quantity,
    /// Subset size for `phi`; without it the whole table is printed.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Phi,
    Vbw,
    Bw,
    Pw,
}

/// One machine-readable result. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub shape: Vec<usize>,
    pub value: Option<u64>,
    pub method: Option<String>,
    pub conjectured: bool,
    pub argmax_k: Option<u64>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Self { code: EXIT_USAGE, msg: msg.to_string() }
    }

    fn mismatch(msg: impl ToString) -> Self {
        Self { code: EXIT_MISMATCH, msg: msg.to_string() }
    }

    fn resource(msg: impl ToString) -> Self {
        Self { code: EXIT_RESOURCE, msg: msg.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::usage(e)
    }
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        match e {
            GridError::TooManyVertices => Self::resource(e),
            _ => Self::usage(e),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Invariant(_) => Self::mismatch(e),
            _ => Self::resource(e),
        }
    }
}

impl From<CertificateError> for Failure {
    fn from(e: CertificateError) -> Self {
        match e {
            CertificateError::Sweep(s) => s.into(),
            _ => Self::resource(e),
        }
    }
}

impl From<TorusError> for Failure {
    fn from(e: TorusError) -> Self {
        match e {
            TorusError::Grid(g) => g.into(),
            TorusError::Sweep(s) => s.into(),
            _ => Self::usage(e),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::OverCap { .. } | OracleError::Overflow => Self::resource(e),
            _ => Self::usage(e),
        }
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::Overflow => Self::resource(e),
            FormulaError::Precondition(_) => Self::usage(e),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Self::usage(e)
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Errors go to `err` prefixed with `error:`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                if !text.starts_with("error:") {
                    let _ = writeln!(err, "error: missing subcommand or argument");
                }
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let ctx = Ctx { format: cli.format, mem: cli.mem.unwrap_or(DEFAULT_MEMORY_CAP) };
    match &cli.command {
        Command::Formula { dims } => ctx.formula(out, dims),
        Command::Sweep { dims, profile, full } => ctx.sweep(out, dims, profile.as_deref(), *full),
        Command::Torus { lengths } => ctx.torus(out, lengths),
        Command::Certify { dims, ordering, decomp, verify_only } => {
            ctx.certify(out, dims, ordering.as_deref(), decomp.as_deref(), *verify_only)
        }
        Command::Oracle(args) => ctx.oracle(out, args),
        Command::Conjecture4d { max_n, threads } => ctx.conjecture(out, *max_n, *threads),
        Command::Selfcheck => ctx.selfcheck(out),
    }
}

struct Ctx {
    format: Format,
    mem: u64,
}

fn joined(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path) -> impl Fn(FormatError) -> Failure + '_ {
    move |e| Failure::usage(format!("{}: {e}", path.display()))
}

impl Ctx {
    fn json(&self) -> bool {
        self.format == Format::Json
    }

    fn emit(&self, out: &mut dyn Write, report: &Report) -> io::Result<()> {
        let line = serde_json::to_string(report).map_err(io::Error::other)?;
        writeln!(out, "{line}")
    }

    /// Echo of the sorted shape and where each sorted axis came from.
    fn echo_shape(&self, out: &mut dyn Write, shape: &GridShape) -> io::Result<()> {
        if self.json() {
            return Ok(());
        }
        writeln!(out, "shape: {shape}")?;
        let identity = shape.input_rank() == shape.dimension()
            && shape.input_perm().iter().enumerate().all(|(i, &a)| i == a);
        if !identity {
            writeln!(out, "sorted from input axes: {}", joined(shape.input_perm()))?;
        }
        Ok(())
    }

    fn formula(&self, out: &mut dyn Write, dims: &[usize]) -> Outcome {
        let shape = GridShape::new(dims)?;
        self.echo_shape(out, &shape)?;
        let d = shape.dims();
        let mut chosen = best_formula(&shape);
        if chosen.is_none() {
            if let [n, b, c, e] = *d {
                if n == b && b == c && c == e {
                    chosen = Some(conjecture_4d(n as u64)?);
                }
            }
        }
        if self.json() {
            let report = Report {
                shape: d.to_vec(),
                value: chosen.as_ref().and_then(|r| r.value),
                method: chosen.as_ref().map(|r| r.method.name().to_string()),
                conjectured: chosen.as_ref().is_some_and(FormulaResult::conjectured),
                argmax_k: None,
            };
            self.emit(out, &report)?;
            return Ok(EXIT_OK);
        }
        for (method, status) in self.candidates(&shape) {
            writeln!(out, "  {method}: {status}")?;
        }
        match chosen {
            Some(r) => {
                let value = r.value.expect("chosen formulas apply");
                let tag = if r.conjectured() { " (conjectured)" } else { "" };
                writeln!(out, "method: {}", r.method)?;
                writeln!(out, "value: {value}{tag}")?;
            }
            None => writeln!(out, "no closed form applies; run `gridwidth sweep` for the exact value")?,
        }
        Ok(EXIT_OK)
    }

    /// Applicability of every closed form relevant to the shape.
    fn candidates(&self, shape: &GridShape) -> Vec<(Method, String)> {
        fn status(r: Result<Option<u64>, String>) -> String {
            match r {
                Ok(Some(v)) => format!("applies, {v}"),
                Ok(None) => "does not apply".into(),
                Err(e) => format!("does not apply ({e})"),
            }
        }
        let d = shape.dims();
        if d.is_empty() {
            return vec![(Method::SingleVertex, status(Ok(Some(0))))];
        }
        let mut rows = Vec::new();
        let large = vbw_large_max(shape).map_err(|e| e.to_string()).and_then(|r| match r.reason {
            Some(reason) => Err(reason.to_string()),
            None => Ok(r.value),
        });
        rows.push((Method::LargeMaxFactor, status(large)));
        let three = match *d {
            [a, b, c] => vbw_3d(a as u64, b as u64, c as u64).map(Some).map_err(|e| e.to_string()),
            _ => Err("needs exactly three factors".into()),
        };
        rows.push((Method::ThreeD, status(three)));
        let cube = if d.iter().all(|&n| n == 2) {
            vbw_hypercube(d.len() as u64).map(Some).map_err(|e| e.to_string())
        } else {
            Err("needs every factor equal to 2".into())
        };
        rows.push((Method::Hypercube, status(cube)));
        if let [n, b, c, e] = *d {
            if n == b && b == c && c == e {
                let v = conjecture_4d(n as u64).map(|r| r.value).map_err(|e| e.to_string());
                rows.push((Method::Conjecture4D, format!("{} (conjectured)", status(v))));
            }
        }
        rows
    }

    fn sweep(&self, out: &mut dyn Write, dims: &[usize], profile: Option<&Path>, full: bool) -> Outcome {
        let shape = GridShape::new(dims)?;
        self.echo_shape(out, &shape)?;
        let summary = match profile {
            None => sweep_with(&shape, self.mem, |_, _| {})?,
            Some(path) => {
                let mut w = ProfileWriter::new(create(path)?, shape.num_vertices(), full)?;
                let mut io_err = None;
                let summary = sweep_with(&shape, self.mem, |k, b| {
                    if io_err.is_none() {
                        io_err = w.row(k, b).err();
                    }
                })?;
                if let Some(e) = io_err {
                    return Err(Failure::usage(format!("{}: {e}", path.display())));
                }
                w.finish()?;
                summary
            }
        };
        self.report_sweep(out, shape.dims(), &summary, "Sweep")?;
        Ok(EXIT_OK)
    }

    fn report_sweep(
        &self,
        out: &mut dyn Write,
        dims: &[usize],
        s: &SweepSummary,
        method: &str,
    ) -> io::Result<()> {
        if self.json() {
            return self.emit(
                out,
                &Report {
                    shape: dims.to_vec(),
                    value: Some(s.vbw),
                    method: Some(method.into()),
                    conjectured: false,
                    argmax_k: Some(s.argmax_k),
                },
            );
        }
        writeln!(out, "vertices: {}", s.num_vertices)?;
        writeln!(out, "vbw = pw = bw: {}", s.vbw)?;
        writeln!(out, "argmax_k: {}", s.argmax_k)
    }

    fn torus(&self, out: &mut dyn Write, lengths: &[usize]) -> Outcome {
        let t = TorusShape::new(lengths)?;
        let sorted: Vec<usize> = t.half_dims().iter().map(|h| 2 * h).collect();
        if let Ok(r) = vbw_torus_large_max(t.half_dims()) {
            if let Some(value) = r.value {
                if self.json() {
                    let report = Report {
                        shape: sorted,
                        value: Some(value),
                        method: Some(Method::TorusLargeMax.name().into()),
                        conjectured: false,
                        argmax_k: None,
                    };
                    self.emit(out, &report)?;
                } else {
                    writeln!(out, "torus: {}", cycles(&sorted))?;
                    writeln!(out, "method: {}", Method::TorusLargeMax)?;
                    writeln!(out, "vbw = pw = bw: {value}")?;
                }
                return Ok(EXIT_OK);
            }
        }
        let grid = reduce_torus(&t)?;
        let summary = sweep_with(&grid, self.mem, |_, _| {})?;
        if self.json() {
            self.report_sweep(out, &sorted, &summary, "ReducedSweep")?;
        } else {
            writeln!(out, "torus: {}", cycles(&sorted))?;
            writeln!(out, "reduced grid: {grid}")?;
            writeln!(out, "method: ReducedSweep")?;
            self.report_sweep(out, &sorted, &summary, "ReducedSweep")?;
        }
        Ok(EXIT_OK)
    }

    fn certify(
        &self,
        out: &mut dyn Write,
        dims: &[usize],
        ordering: Option<&Path>,
        decomp: Option<&Path>,
        verify_only: bool,
    ) -> Outcome {
        let shape = GridShape::new(dims)?;
        self.echo_shape(out, &shape)?;
        if verify_only && ordering.is_none() && decomp.is_none() {
            return Err(Failure::usage("--verify-only needs --ordering or --decomp"));
        }
        let expected = sweep_with(&shape, self.mem, |_, _| {})?.vbw;

        let ord: Option<VertexOrdering> = match (verify_only, ordering) {
            (true, None) => None,
            (true, Some(p)) => Some(formats::read_ordering(open(p)?, &shape).map_err(with_path(p))?),
            (false, path) => {
                let o = emit_bandwidth_ordering(&shape, self.mem)?;
                if let Some(p) = path {
                    formats::write_ordering(create(p)?, &shape, &o).map_err(with_path(p))?;
                }
                Some(o)
            }
        };
        let pd: Option<PathDecomposition> = match (verify_only, decomp) {
            (true, None) => None,
            (true, Some(p)) => Some(formats::read_decomposition(open(p)?).map_err(with_path(p))?),
            (false, path) => {
                let d = emit_path_decomposition(&shape, self.mem)?;
                if let Some(p) = path {
                    formats::write_decomposition(create(p)?, &d)?;
                }
                Some(d)
            }
        };

        let bw = ord
            .map(|o| ordering_bandwidth(&shape, &o).map_err(|e| Failure::mismatch(format!("ordering: {e}"))))
            .transpose()?;
        let pw = pd
            .map(|d| {
                verify_path_decomposition(&shape, &d)
                    .map_err(|v| Failure::mismatch(format!("decomposition: {v}")))
            })
            .transpose()?;

        let achieved = bw.or(pw).expect("at least one certificate");
        if self.json() {
            self.emit(
                out,
                &Report {
                    shape: shape.dims().to_vec(),
                    value: Some(achieved),
                    method: Some("Certificate".into()),
                    conjectured: false,
                    argmax_k: None,
                },
            )?;
        } else {
            writeln!(out, "vbw: {expected}")?;
            if let Some(b) = bw {
                writeln!(out, "ordering bandwidth: {b}")?;
            }
            if let Some(p) = pw {
                writeln!(out, "decomposition width: {p}")?;
            }
        }
        for (what, got) in [("ordering bandwidth", bw), ("decomposition width", pw)] {
            if let Some(got) = got {
                if got != expected {
                    return Err(Failure::mismatch(format!("{what} {got} differs from vbw {expected}")));
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn oracle(&self, out: &mut dyn Write, args: &OracleArgs) -> Outcome {
        let (g, shape) = if let Some(dims) = &args.grid {
            let s = GridShape::new(dims)?;
            (Graph::grid(dims)?, s.dims().to_vec())
        } else if let Some(lengths) = &args.torus {
            let mut sorted = lengths.clone();
            sorted.sort_unstable();
            (Graph::torus(lengths)?, sorted)
        } else {
            let p = args.file.as_deref().expect("clap enforces one graph source");
            (formats::read_graph(open(p)?).map_err(with_path(p))?, Vec::new())
        };
        if args.k.is_some() && args.what != Quantity::Phi {
            return Err(Failure::usage("--k only applies to --what phi"));
        }
        let (value, argmax_k, label) = match (args.what, args.k) {
            (Quantity::Phi, Some(k)) => (brute_phi(&g, k)?, None, "phi"),
            (Quantity::Phi, None) | (Quantity::Vbw, _) => {
                let table = brute_phi_all(&g)?;
                if args.what == Quantity::Phi && !self.json() {
                    for (k, v) in table.iter().enumerate() {
                        writeln!(out, "phi({k}) = {v}")?;
                    }
                }
                let vbw = table.iter().copied().max().unwrap_or(0);
                let k = table.iter().skip(1).position(|&v| v == vbw).map_or(1, |i| i as u64 + 1);
                (vbw, Some(k), "vbw")
            }
            (Quantity::Bw, _) => (brute_bandwidth(&g)?, None, "bw"),
            (Quantity::Pw, _) => (brute_pathwidth(&g)?, None, "pw"),
        };
        if self.json() {
            let method = format!("Oracle:{label}");
            self.emit(
                out,
                &Report { shape, value: Some(value), method: Some(method), conjectured: false, argmax_k },
            )?;
        } else {
            writeln!(out, "vertices: {}, edges: {}", g.vertex_count(), g.edge_count())?;
            match args.k {
                Some(k) => writeln!(out, "phi({k}) = {value}")?,
                None => writeln!(out, "{label} = {value}")?,
            }
            if let Some(k) = argmax_k {
                writeln!(out, "argmax_k: {k}")?;
            }
        }
        Ok(EXIT_OK)
    }

    fn conjecture(&self, out: &mut dyn Write, max_n: u64, threads: Option<usize>) -> Outcome {
        if max_n < 2 {
            return Err(Failure::usage("--max-n must be at least 2"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.unwrap_or(0))
            .build()
            .map_err(Failure::usage)?;
        let mem = self.mem;
        let rows: Vec<Result<(u64, SweepSummary, u64), Failure>> = pool.install(|| {
            (2..=max_n)
                .into_par_iter()
                .map(|n| {
                    let shape = GridShape::new(&[n as usize; 4])?;
                    let summary = sweep_with(&shape, mem, |_, _| {})?;
                    let conj = conjecture_4d(n)?.value.expect("defined for n >= 2");
                    Ok((n, summary, conj))
                })
                .collect()
        });
        let mut mismatches = 0;
        for row in rows {
            let (n, summary, conj) = row?;
            let verdict = if summary.vbw == conj { "MATCH" } else { "MISMATCH" };
            if summary.vbw != conj {
                mismatches += 1;
            }
            if self.json() {
                let shape = vec![n as usize; 4];
                self.report_sweep(out, &shape, &summary, "Sweep")?;
                self.emit(
                    out,
                    &Report {
                        shape,
                        value: Some(conj),
                        method: Some(Method::Conjecture4D.name().into()),
                        conjectured: true,
                        argmax_k: None,
                    },
                )?;
            } else {
                writeln!(out, "n={n}: sweep {}, conjecture {conj}, {verdict}", summary.vbw)?;
            }
        }
        if mismatches > 0 {
            return Err(Failure::mismatch(format!("{mismatches} conjecture mismatches")));
        }
        Ok(EXIT_OK)
    }

    fn selfcheck(&self, out: &mut dyn Write) -> Outcome {
        let mut failed = 0;
        for check in selfcheck::CHECKS {
            let result = (check.run)(self.mem);
            match &result {
                Ok(detail) => writeln!(out, "PASS  {}: {detail}", check.name)?,
                Err(detail) => {
                    failed += 1;
                    writeln!(out, "FAIL  {}: {detail}", check.name)?;
                }
            }
        }
        if failed > 0 {
            return Err(Failure::mismatch(format!("{failed} self-checks failed")));
        }
        Ok(EXIT_OK)
    }
}

fn cycles(lengths: &[usize]) -> String {
    lengths.iter().map(|l| format!("C{l}")).collect::<Vec<_>>().join(" x ")
}
