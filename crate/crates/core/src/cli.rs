use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bwb::{gr_ext, sum_cohomology, GradedDims};
use crate::chessboard::{sod2, sod2_final};
use crate::error::{Error, Result};
use crate::expr::{parse_gr, parse_object};
use crate::flagx::{e_ext, x_ext, EObject, ExtResult};
use crate::report::Report;
use crate::scripts::{parse_script, run_script, Parity};
use crate::verify::{verify_lemma, Lemma, Options};

/// Largest `N` accepted without `--allow-large`.
pub const N_CAP: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Gr,
    E,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Odd,
    Even,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Ascii,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "flipcheck", version, about = "Symbolic checker for mutations of exceptional collections on Grassmannian flips")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for claim evaluation.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Also check the backward direction of every exchange.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Lift the cap N ≤ 15.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of a bundle on Gr(2,N), or on E with --space e.
    Cohom {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_enum, default_value = "gr")]
        space: Space,
        expr: String,
    },
    /// Ext•(A, B) on Gr(2,N), on E, or between pushforwards on X.
    Ext {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_enum)]
        space: Space,
        a: String,
        b: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        parity: ParityArg,
        /// van, van.1..van.6, mut, steps, sod, chessboard, even or all.
        #[arg(long, default_value = "all")]
        lemma: String,
        /// Run every n from --n to --n-max.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Chessboards for N = 2n+1.
    Chessboard {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "ascii")]
        render: Render,
    },
    /// Replay a mutation script.
    Replay {
        #[arg(long)]
        script: std::path::PathBuf,
    },
}

fn check_cap(big_n: usize, allow: bool) -> Result<()> {
    if big_n > N_CAP && !allow {
        return Err(Error::OutOfRange(format!("N = {big_n} exceeds {N_CAP}; pass --allow-large to override")));
    }
    Ok(())
}

fn dims_text(d: &GradedDims, sym: &str) -> String {
    if d.is_zero() {
        return "0\n".into();
    }
    d.iter().map(|(k, v)| format!("{sym}^{k} = {v}\n")).collect()
}

fn exact_or_zero(d: GradedDims) -> ExtResult {
    if d.is_zero() {
        ExtResult::Zero
    } else {
        ExtResult::Exact { dims: d }
    }
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

/// Output text and exit code of a parsed command line.
pub fn execute(cli: &Cli) -> Result<(String, i32)> {
    let json = cli.format == Format::Json;
    let opts = Options { strict: cli.strict };
    match &cli.command {
        Command::Cohom { big_n, space, expr } => {
            check_cap(*big_n, cli.allow_large)?;
            let d = match space {
                Space::Gr => sum_cohomology(&parse_gr(expr)?, *big_n)?,
                Space::E => e_ext(&EObject::line(0, 0), &parse_object(expr)?, *big_n)?,
                Space::X => return Err(Error::OutOfRange("cohom supports --space gr|e".into())),
            };
            let out = if json {
                json_line(json!({ "N": big_n, "object": expr, "cohomology": d }))
            } else {
                dims_text(&d, "H")
            };
            Ok((out, 0))
        }
        Command::Ext { big_n, space, a, b } => {
            check_cap(*big_n, cli.allow_large)?;
            let e = match space {
                Space::Gr => exact_or_zero(gr_ext(&parse_gr(a)?, &parse_gr(b)?, *big_n)?),
                Space::E => exact_or_zero(e_ext(&parse_object(a)?, &parse_object(b)?, *big_n)?),
                Space::X => x_ext(&parse_object(a)?, &parse_object(b)?, *big_n)?,
            };
            let code = if e.is_bounded() { 2 } else { 0 };
            let out = if json {
                json_line(json!({ "N": big_n, "a": a, "b": b, "ext": e }))
            } else {
                match &e {
                    ExtResult::Zero => "0\n".into(),
                    ExtResult::Exact { dims } => dims_text(dims, "Ext"),
                    ExtResult::Bounded { front, back } => {
                        format!("indeterminate: front {front} meets back {back}\n")
                    }
                }
            };
            Ok((out, code))
        }
        Command::Verify { n, parity, lemma, n_max } => {
            let lemma: Lemma = lemma.parse()?;
            let parities = match parity {
                ParityArg::Odd => vec![Parity::Odd],
                ParityArg::Even => vec![Parity::Even],
                ParityArg::Both => vec![Parity::Odd, Parity::Even],
            };
            let last = n_max.unwrap_or(*n);
            for p in &parities {
                check_cap(p.big_n(last), cli.allow_large)?;
            }
            let single = last == *n && parities.len() == 1;
            let (big_n, label) = if single {
                (parities[0].big_n(*n), parities[0].to_string())
            } else {
                let l = match parity {
                    ParityArg::Both => "both".to_string(),
                    _ => parities[0].to_string(),
                };
                (0, l)
            };
            let mut report = Report::new(big_n, label, vec![]);
            for k in *n..=last {
                for p in &parities {
                    report.extend(verify_lemma(lemma, k, *p, &opts)?);
                }
            }
            let out = if json { format!("{}\n", report.to_json()) } else { report.to_text() };
            Ok((out, report.exit_code()))
        }
        Command::Chessboard { n, render } => {
            if *n < 2 {
                return Err(Error::OutOfRange("chessboard needs n ≥ 2".into()));
            }
            check_cap(2 * n + 1, cli.allow_large)?;
            let ni = *n as i64;
            let boards = [sod2(ni), sod2_final(ni)];
            let out = match render {
                Render::Json => json_line(json!({ "n": n, "N": 2 * n + 1, "boards": boards })),
                Render::Ascii => boards.iter().map(|b| b.render_ascii()).collect::<Vec<_>>().join("\n"),
            };
            Ok((out, 0))
        }
        Command::Replay { script } => {
            let text = std::fs::read_to_string(script)
                .map_err(|e| Error::Io(format!("{}: {e}", script.display())))?;
            let s = parse_script(&text)?;
            check_cap(s.big_n, cli.allow_large)?;
            let out = run_script(&s, cli.strict)?;
            let objs: Vec<String> = out.collection.objects().iter().map(|o| o.to_expr()).collect();
            let failure = out.failure.as_ref().map(|(i, mv, e)| json!({ "index": i, "move": mv.to_string(), "error": e.to_string() }));
            let code = if out.ok() { 0 } else { 1 };
            let text = if json {
                json_line(json!({
                    "N": s.big_n,
                    "ok": out.ok(),
                    "moves_applied": out.moves_applied,
                    "count": out.collection.count_objects(),
                    "count_conserved": out.count_conserved,
                    "final": objs,
                    "failure": failure,
                }))
            } else {
                let mut t = format!("{}\n", out.collection);
                match &out.failure {
                    None => t.push_str(&format!("ok: {} moves, {} objects\n", out.moves_applied, out.collection.count_objects())),
                    Some((i, mv, e)) => t.push_str(&format!("failed at move {i} '{mv}': {e}\n")),
                }
                t
            };
            Ok((text, code))
        }
    }
}

/// Full command-line entry point: returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::OutOfRange("--jobs must be positive".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::OutOfRange(format!("thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
    }
}
