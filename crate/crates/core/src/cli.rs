//! Command-line front end. Every subcommand renders either plain text or
//! JSON; [`run`] returns the rendered output so it can be tested in-process.

use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::affine_perm::AffinePerm;
use crate::ambc::{self, DomTriple};
use crate::error::{Error, Result};
use crate::jring::{self, JElement};
use crate::lusztig_vogan::{self, LvPair};
use crate::partition;
use crate::rep_ring::{self, FWeight};
use crate::tabloid::Tabloid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Parser)]
#[command(name = "ambc", version, about = "Affine matrix-ball construction and related tables")]
pub struct CliConfig {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Period; inferred from the input where possible.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Worker threads for table generation.
    #[arg(long, default_value_t = NonZeroUsize::MIN, global = true)]
    pub jobs: NonZeroUsize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Φ of a window, printed as {"p","q","rho"}.
    AmbcForward { window: String },
    /// Ψ of a triple given as {"p","q","rho"}.
    AmbcBackward { triple: String },
    /// Distinguished involutions of a two-sided cell.
    Involutions { shape: String },
    /// Product t_u · t_v in the asymptotic Hecke algebra.
    Jmult { u: String, v: String },
    /// Θ₁ of a dominant weight.
    Lv { mu: String },
    /// Θ₁⁻¹ of a shape and a row weight (one entry per row of the shape).
    LvInverse { shape: String, weight: String },
    /// Decomposition of V(μ) ⊗ V(ν) for GL_m.
    Tensor { mu: String, nu: String },
    /// Differential checks of the main algorithms against brute force.
    SelfCheck {
        /// Largest period enumerated.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Print passing checks too.
        #[arg(long)]
        verbose: bool,
    },
}

/// Rendered output, plus whether a self-check found discrepancies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub failed: bool,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, failed: false }
    }
}

fn check_n(cfg: &CliConfig, n: usize) -> Result<()> {
    match cfg.n {
        Some(m) if m != n => Err(Error::PeriodMismatch(m, n)),
        _ => Ok(()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Maps `f` over `items` on `jobs` threads, preserving order.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[derive(Deserialize)]
struct RawTriple {
    p: Tabloid,
    q: Tabloid,
    rho: Vec<i64>,
}

pub fn run(cfg: &CliConfig) -> Result<Output> {
    let json = cfg.format == Format::Json;
    match &cfg.command {
        Command::AmbcForward { window } => {
            let w: AffinePerm = window.parse()?;
            check_n(cfg, w.n())?;
            Ok(Output::ok(to_json(&ambc::phi(&w)?)))
        }
        Command::AmbcBackward { triple } => {
            let raw: RawTriple =
                serde_json::from_str(triple).map_err(|e| Error::Parse(format!("triple: {e}")))?;
            let t = DomTriple::new(raw.p, raw.q, raw.rho)?;
            check_n(cfg, t.p.n())?;
            let w = ambc::psi_triple(&t)?;
            Ok(Output::ok(if json { to_json(&w) } else { w.to_string() }))
        }
        Command::Involutions { shape } => {
            let shape = partition::parse_shape(shape)?;
            check_n(cfg, shape.iter().sum())?;
            let tabs = Tabloid::enumerate(&shape)?;
            let zero = vec![0; shape.len()];
            let invs = par_map(&tabs, cfg.jobs.get(), |t| ambc::psi(t, t, &zero))
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            if json {
                let items: Vec<_> = invs
                    .iter()
                    .zip(&tabs)
                    .map(|(w, t)| json!({ "window": w, "shape": shape, "p": t, "q": t }))
                    .collect();
                Ok(Output::ok(to_json(&json!({ "shape": shape, "count": invs.len(), "involutions": items }))))
            } else {
                let mut s = String::new();
                for w in &invs {
                    writeln!(s, "{w}").unwrap();
                }
                write!(s, "count {}", invs.len()).unwrap();
                Ok(Output::ok(s))
            }
        }
        Command::Jmult { u, v } => {
            let (u, v): (AffinePerm, AffinePerm) = (u.parse()?, v.parse()?);
            check_n(cfg, u.n())?;
            let prod = jring::t_multiply(&u, &v)?;
            Ok(Output::ok(if json { prod.to_json().to_string() } else { prod.to_string() }))
        }
        Command::Lv { mu } => {
            let mu = rep_ring::parse_weight(mu)?;
            lusztig_vogan::check_dominant(&mu)?;
            check_n(cfg, mu.len())?;
            let pair = lusztig_vogan::theta1(&mu)?;
            Ok(Output::ok(if json { to_json(&pair) } else { format_lv(&pair) }))
        }
        Command::LvInverse { shape, weight } => {
            let shape = partition::parse_shape(shape)?;
            check_n(cfg, shape.iter().sum())?;
            let rows = rep_ring::parse_weight(weight)?;
            let f = FWeight::from_rows(&shape, &rows)?;
            let mu = lusztig_vogan::theta1_inverse(&f)?;
            Ok(Output::ok(if json { to_json(&mu) } else { rep_ring::format_weight(&mu) }))
        }
        Command::Tensor { mu, nu } => {
            let (mu, nu) = (rep_ring::parse_weight(mu)?, rep_ring::parse_weight(nu)?);
            check_n(cfg, mu.len())?;
            let dec = rep_ring::tensor_gl(&mu, &nu)?;
            if json {
                let items: Vec<_> = dec.iter().rev().map(|(w, c)| json!({ "weight": w, "mult": c })).collect();
                return Ok(Output::ok(to_json(&items)));
            }
            let width = dec.values().map(|c| c.to_string().len()).max().unwrap_or(1);
            let lines: Vec<String> = dec
                .iter()
                .rev()
                .map(|(w, c)| format!("{c:>width$}  V({})", rep_ring::format_weight(w)))
                .collect();
            Ok(Output::ok(lines.join("\n")))
        }
        Command::SelfCheck { max_n, verbose } => self_check(cfg, *max_n, *verbose),
    }
}

fn format_lv(p: &LvPair) -> String {
    let blocks: Vec<String> = p.weight_blocks.iter().map(|b| rep_ring::format_weight(b)).collect();
    format!("shape {} weight {}", partition::format_shape(&p.shape), blocks.join(" | "))
}

#[cfg(feature = "testing")]
fn self_check(cfg: &CliConfig, max_n: usize, verbose: bool) -> Result<Output> {
    use crate::oracles;
    if max_n == 0 {
        return Err(Error::OutOfRange("--max-n must be positive".into()));
    }
    let cases = oracles::self_check_cases(max_n);
    let reports: Vec<oracles::OracleReport> = par_map(&cases, cfg.jobs.get(), oracles::run_case)
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let failed = reports.iter().filter(|r| !r.pass).count();
    let text = if cfg.format == Format::Json {
        to_json(&reports)
    } else {
        let mut s = String::new();
        for r in reports.iter().filter(|r| verbose || !r.pass) {
            writeln!(s, "{r}").unwrap();
        }
        write!(s, "{} checks, {failed} failed", reports.len()).unwrap();
        s
    };
    Ok(Output { text, failed: failed > 0 })
}

#[cfg(not(feature = "testing"))]
fn self_check(_: &CliConfig, _: usize, _: bool) -> Result<Output> {
    Err(Error::Precondition("built without the `testing` feature".into()))
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(out) => {
            println!("{}", out.text);
            if out.failed {
                3
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                2
            } else {
                3
            }
        }
    }
}

/// Parses a J-ring element in either text or JSON form.
pub fn parse_jelement(text: &str, n: Option<usize>) -> Result<JElement> {
    if text.trim_start().starts_with("[{") || text.trim() == "[]" {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = n.or_else(|| v.get(0).and_then(|t| t["window"].as_array()).map(Vec::len));
        let n = n.ok_or_else(|| Error::Parse("the zero element needs an explicit n".into()))?;
        return JElement::from_json(&v, n);
    }
    JElement::parse(text, n)
}
