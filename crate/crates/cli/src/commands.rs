//! Subcommand dispatch. Every command is a thin wrapper over the library:
//! outputs are produced by the same calls a library user would make.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use weylk0::cylinder::{
    chain_decompose, complement_components, consistency_check, Configuration, CylGeometry,
};
use weylk0::halfint::HalfInt;
use weylk0::line::enumerate_simples;
use weylk0::modsim::{sl2_build, sl2_verify, Sl2Factors};
use weylk0::split::enumerate_indecomposables;
use weylk0::verify::{run_cylinder_relations, run_rank1_oracle};

use crate::eval::{eval, print_normalized, print_value};
use crate::parser::{parse_expr, parse_parameter};
use crate::render::{render_ascii, render_svg};

#[derive(Parser)]
#[command(name = "weylk0", version, about = "Exact computations in Grothendieck rings of weight modules over generalized Weyl algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression and print its canonical basis expansion.
    Mul {
        expr: String,
        /// Cylinder period m (required for cylinder expressions).
        #[arg(long)]
        m: Option<i64>,
        /// Cylinder period n (required for cylinder expressions).
        #[arg(long)]
        n: Option<i64>,
    },
    /// Evaluate an expression and print each basis class as its canonical
    /// generator word (rank-1 rings) or basis expansion (cylinder ring).
    Normalize {
        expr: String,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
    },
    /// List the simple classes of a rank-1 parameter, e.g. '{1/2:1,5/2:2}'.
    Simples { t: String },
    /// List the indecomposable split classes of a rank-1 parameter.
    Indecomposables { t: String },
    /// Decompose a configuration file into its chain of paths.
    Decompose { file: PathBuf },
    /// List the complement components of a configuration file.
    Components { file: PathBuf },
    /// Check the consistency equation for a configuration file.
    Consistency { file: PathBuf },
    /// Draw a configuration file as text (and optionally SVG).
    Render {
        file: PathBuf,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Replay the rank-1 tensor rules against the explicit-module
    /// simulator, exhaustively over a root pool.
    OracleRank1 {
        /// Comma-separated half-integer roots.
        #[arg(long, default_value = "-3/2,-1/2,1/2,3/2", allow_hyphen_values = true)]
        roots: String,
        /// Weight window 'lo..hi'.
        #[arg(long, default_value = "-8..8", allow_hyphen_values = true)]
        window: String,
        /// Largest root multiplicity.
        #[arg(long, default_value_t = 2)]
        max_mult: u32,
    },
    /// Build and verify an sl2 module as a tensor product of two
    /// Weyl-algebra modules.
    Sl2 {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        /// Factor choice: '-+' (finite dimensional) or '--' (truncated Verma).
        #[arg(long, default_value = "-+", allow_hyphen_values = true)]
        factors: String,
        /// Basis size for the truncated case.
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// Evaluate the cylinder presentation relations on an exhaustive window.
    VerifyCylinder {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        /// Number of face rows in the path window.
        #[arg(long)]
        max_height: i64,
    },
}

/// Captured output of one command invocation.
pub struct CmdOutcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutcome {
    fn ok(stdout: String) -> Self {
        CmdOutcome { stdout, stderr: String::new(), code: 0 }
    }

    fn failed(stdout: String) -> Self {
        CmdOutcome { stdout, stderr: String::new(), code: 1 }
    }

    fn usage(message: String) -> Self {
        CmdOutcome { stdout: String::new(), stderr: message, code: 2 }
    }
}

/// Run the CLI on the given arguments (including the binary name).
pub fn run<I, S>(args: I) -> CmdOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors" with exit code 0.
            let rendered = e.render().to_string();
            return if e.exit_code() == 0 {
                CmdOutcome::ok(rendered)
            } else {
                CmdOutcome::usage(rendered)
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(outcome) => outcome,
        Err(message) => CmdOutcome::usage(message),
    }
}

fn geometry(m: Option<i64>, n: Option<i64>) -> Result<Option<CylGeometry>, String> {
    match (m, n) {
        (None, None) => Ok(None),
        (Some(m), Some(n)) => CylGeometry::new(m, n).map(Some).map_err(|e| e.to_string()),
        _ => Err("--m and --n must be given together".into()),
    }
}

fn load_config(path: &PathBuf) -> Result<Configuration, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Configuration::parse(&text).map_err(|e| e.to_string())
}

fn parse_halfint_arg(s: &str) -> Result<HalfInt, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(format!("'{s}' is not a half-integer"));
        }
        let n: i64 = num.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        Ok(HalfInt::from_twice(n))
    } else {
        let n: i64 = s.parse().map_err(|_| format!("'{s}' is not an integer or half-integer"))?;
        Ok(HalfInt::from_int(n))
    }
}

fn dispatch(cmd: Cmd) -> Result<CmdOutcome, String> {
    match cmd {
        Cmd::Mul { expr, m, n } => {
            let ast = parse_expr(&expr).map_err(|e| e.to_string())?;
            let value = eval(&ast, geometry(m, n)?).map_err(|e| e.to_string())?;
            Ok(CmdOutcome::ok(format!("{}\n", print_value(&value))))
        }
        Cmd::Normalize { expr, m, n } => {
            let ast = parse_expr(&expr).map_err(|e| e.to_string())?;
            let value = eval(&ast, geometry(m, n)?).map_err(|e| e.to_string())?;
            Ok(CmdOutcome::ok(format!("{}\n", print_normalized(&value))))
        }
        Cmd::Simples { t } => {
            let t = parse_parameter(&t).map_err(|e| e.to_string())?;
            let mut out = String::new();
            for c in enumerate_simples(&t) {
                let _ = writeln!(out, "{c}");
            }
            Ok(CmdOutcome::ok(out))
        }
        Cmd::Indecomposables { t } => {
            let t = parse_parameter(&t).map_err(|e| e.to_string())?;
            let mut out = String::new();
            for c in enumerate_indecomposables(&t) {
                let _ = writeln!(out, "{c}");
            }
            Ok(CmdOutcome::ok(out))
        }
        Cmd::Decompose { file } => {
            let cfg = load_config(&file)?;
            let mut out = String::new();
            for p in chain_decompose(&cfg) {
                let _ = writeln!(out, "{p}");
            }
            Ok(CmdOutcome::ok(out))
        }
        Cmd::Components { file } => {
            let cfg = load_config(&file)?;
            let mut out = String::new();
            for c in complement_components(&cfg) {
                let faces = if c.y_bounded { c.faces.len().to_string() } else { "unbounded".to_string() };
                let _ = writeln!(
                    out,
                    "{}\tcontractible={}\tfaces={}",
                    c.id, c.contractible, faces
                );
            }
            Ok(CmdOutcome::ok(out))
        }
        Cmd::Consistency { file } => {
            let cfg = load_config(&file)?;
            let (t1, t2) = cfg.to_t();
            let ok = consistency_check(cfg.geom(), &t1, &t2);
            let out = format!("t1 = {t1}\nt2 = {t2}\nconsistent: {ok}\n");
            Ok(if ok { CmdOutcome::ok(out) } else { CmdOutcome::failed(out) })
        }
        Cmd::Render { file, svg } => {
            let cfg = load_config(&file)?;
            if let Some(path) = svg {
                std::fs::write(&path, render_svg(&cfg)).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(CmdOutcome::ok(render_ascii(&cfg)))
        }
        Cmd::OracleRank1 { roots, window, max_mult } => {
            let roots: Vec<HalfInt> = roots
                .split(',')
                .map(parse_halfint_arg)
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(bad) = roots.iter().find(|r| !r.is_proper()) {
                return Err(format!("root {bad} is not a half-integer with odd numerator"));
            }
            let (lo, hi) = window
                .split_once("..")
                .ok_or_else(|| format!("window '{window}' must look like 'lo..hi'"))?;
            let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound '{lo}'"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound '{hi}'"))?;
            let report = run_rank1_oracle(&roots, max_mult, (lo, hi));
            let mut out = format!(
                "checked {} ordered pairs of indecomposables, {} failures\n",
                report.cases, report.failures
            );
            for d in &report.details {
                let _ = writeln!(out, "  {d}");
            }
            Ok(if report.ok() { CmdOutcome::ok(out) } else { CmdOutcome::failed(out) })
        }
        Cmd::Sl2 { k, l, factors, window } => {
            let k = parse_halfint_arg(&k)?;
            let l = parse_halfint_arg(&l)?;
            let factors = Sl2Factors::parse(&factors)
                .ok_or_else(|| format!("factors must be '-+' or '--', got '{factors}'"))?;
            let module = sl2_build(k, l, factors, window).map_err(|e| e.to_string())?;
            let report = sl2_verify(&module, k, l);
            let mut out = String::new();
            let _ = writeln!(out, "dim = {}", report.dim);
            let spectrum: Vec<String> = report.h_spectrum.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "h-spectrum = {{{}}}", spectrum.join(","));
            let _ = writeln!(
                out,
                "relations [e,f]=h, [h,e]=2e, [h,f]=-2f: {}",
                if report.brackets_ok { "OK" } else { "FAILED" }
            );
            let _ = writeln!(out, "highest-weight vectors: {}", report.highest_weight_vectors.len());
            match report.casimir {
                Some(c) => {
                    let _ = writeln!(out, "casimir = {c} (scalar)");
                }
                None => {
                    let _ = writeln!(out, "casimir: not scalar");
                }
            }
            let ok = report.brackets_ok && report.weights_consistent && report.casimir.is_some();
            Ok(if ok { CmdOutcome::ok(out) } else { CmdOutcome::failed(out) })
        }
        Cmd::VerifyCylinder { m, n, max_height } => {
            let geom = CylGeometry::new(m, n).map_err(|e| e.to_string())?;
            let suite = run_cylinder_relations(geom, max_height);
            let out = suite.summary();
            Ok(if suite.ok() { CmdOutcome::ok(out) } else { CmdOutcome::failed(out) })
        }
    }
}
