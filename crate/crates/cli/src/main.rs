//! `obdd-width`: build, run and verify width-bounded OBDDs, compute width
//! oracles and print separation reports.
//!
//! Exit codes: 0 when the command succeeds and any checked claim holds,
//! 2 when a claim does not hold or the result is inconclusive, 1 on error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use obdd_width::bits::parse_bits;
use obdd_width::constructions::{
    build_det_eqs, build_det_mod, build_det_notpal, build_det_partialmod, build_nobdd_noteqs_fingerprint,
    build_nobdd_noto_fingerprint, build_quantum_nondet_noto, build_quantum_partialmod, counter, noto_cutoff,
};
use obdd_width::document::{decode_program, encode_program};
use obdd_width::markov::{classify_states, period_lcm_certificate};
use obdd_width::oracles::{
    distinguishability_lower_bound, min_width_over_orders, partial_min_width_exact, stable_exhaustive_search,
    subfunction_widths, OracleCaps,
};
use obdd_width::report::{run_report, ReportParams, ReportTask};
use obdd_width::{
    AcceptanceMode, FunctionName, FunctionSpec, ObddProgram, ProgramKind, VariableOrder, Verdict,
};

#[derive(Parser, Debug)]
#[command(
    name = "obdd-width",
    version,
    about = "Width-bounded OBDDs: constructions, oracles and reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the explicit construction for a function and print its document.
    Build {
        #[command(flatten)]
        function: FunctionArgs,
        /// Which model to build; defaults to the function's only construction.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the acceptance probability of a program on one input.
    Simulate {
        program: PathBuf,
        /// Input bits x1 x2 … xn, e.g. `0110`.
        input: String,
    },
    /// Check that a program computes a function on every input.
    Verify {
        program: PathBuf,
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        acceptance: AcceptanceArgs,
        /// Check one input per one-count class (for count-based programs).
        #[arg(long)]
        by_count: bool,
    },
    /// Compute a width oracle for a function.
    Minwidth {
        #[command(flatten)]
        function: FunctionArgs,
        /// `natural`, `pairing`, a comma list such as `1,4,2,3`, or `all`.
        #[arg(long, default_value = "natural")]
        order: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Largest width tried by `stable`; class cap per level for `partial`.
        #[arg(long)]
        width_cap: Option<usize>,
        /// Program kind searched by `stable`.
        #[arg(long, value_enum, default_value_t = ModeArg::Deterministic)]
        mode: ModeArg,
    },
    /// Print a separation or hierarchy table.
    Report {
        /// separation-quantum-classical, separation-nondet, hierarchy-small,
        /// hierarchy-large or markov-analysis.
        task: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Target width for the hierarchy tasks.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the symbol chain of a stable program and run the period certificate.
    Markov {
        /// Stable program document; omit to analyse a counter of width `--width-cap`.
        program: Option<PathBuf>,
        /// Certificate parameter: passes iff a class period is a multiple of 2^(k+1).
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        symbol: u8,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        width_cap: Option<usize>,
    },
    /// Print a function's truth table, one `<input> <0|1|*>` line per input.
    Table {
        #[command(flatten)]
        function: FunctionArgs,
    },
}

#[derive(Args, Debug)]
struct FunctionArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: usize,
}

impl FunctionArgs {
    fn spec(&self) -> Result<FunctionSpec> {
        let name: FunctionName = self.function.parse()?;
        Ok(FunctionSpec::new(name, self.k, self.n)?)
    }
}

#[derive(Args, Debug)]
struct AcceptanceArgs {
    /// Defaults to the program kind's natural mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    cutoff: f64,
}

impl AcceptanceArgs {
    fn resolve(&self, kind: ProgramKind) -> Result<AcceptanceMode> {
        let mode = self.mode.unwrap_or(match kind {
            ProgramKind::Deterministic => ModeArg::Deterministic,
            ProgramKind::Nondeterministic => ModeArg::Nondet,
            _ => ModeArg::Exact,
        });
        Ok(match mode {
            ModeArg::Deterministic => AcceptanceMode::Deterministic,
            ModeArg::Exact => AcceptanceMode::Exact,
            ModeArg::Bounded => AcceptanceMode::bounded_error(self.epsilon)?,
            ModeArg::Nondet => AcceptanceMode::nondeterministic(self.cutoff)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Deterministic,
    Exact,
    Bounded,
    Nondet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exact: subfunction counting for total functions, the partial minimizer otherwise.
    Auto,
    Subfunction,
    Partial,
    /// Lower bound from pairwise comparable, nonequivalent prefixes.
    Distinguish,
    /// Smallest stable width with a computing program, up to `--width-cap`.
    Stable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Md,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<ObddProgram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    decode_program(&text).with_context(|| format!("decoding {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_order(s: &str, n: usize) -> Result<VariableOrder> {
    let order = match s {
        "natural" => VariableOrder::natural(n),
        "pairing" => VariableOrder::pairing(n),
        list => {
            let perm = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .with_context(|| format!("bad order entry `{t}`"))
                })
                .collect::<Result<Vec<_>>>()?;
            VariableOrder::from_one_based(&perm)?
        }
    };
    if order.len() != n {
        bail!("order has {} variables, expected {n}", order.len());
    }
    Ok(order)
}

/// Returns whether the command's claim holds.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build { function, mode, out } => {
            let p = build(&function, mode)?;
            if p.kind() == ProgramKind::Quantum && function.spec()?.name() == Some(FunctionName::NotO) {
                eprintln!("verify with --mode nondet --cutoff {:e}", noto_cutoff(function.n));
            }
            emit(&encode_program(&p), out.as_deref())?;
            Ok(true)
        }
        Command::Simulate { program, input } => {
            let p = load(&program)?;
            let bits = parse_bits(&input)?;
            println!("{}", p.simulate(&bits)?);
            Ok(true)
        }
        Command::Verify {
            program,
            function,
            acceptance,
            by_count,
        } => {
            let p = load(&program)?;
            let f = function.spec()?;
            let mode = acceptance.resolve(p.kind())?;
            let verdict = if by_count {
                p.computes_by_count_class(&f, mode)?
            } else {
                p.computes(&f, mode)?
            };
            match verdict {
                Verdict::Yes => {
                    println!(
                        "holds: program computes {f} under {mode} (width {})",
                        p.width().max
                    );
                    Ok(true)
                }
                Verdict::No(cx) => {
                    println!("fails: {cx}");
                    Ok(false)
                }
            }
        }
        Command::Minwidth {
            function,
            order,
            method,
            width_cap,
            mode,
        } => minwidth(&function.spec()?, &order, method, width_cap, mode),
        Command::Report {
            task,
            k,
            n,
            d,
            format,
            out,
        } => {
            let task: ReportTask = task.parse()?;
            let report = run_report(
                task,
                &ReportParams {
                    k,
                    n,
                    d,
                    caps: OracleCaps::default(),
                },
            )?;
            let text = match format {
                Format::Md => report.to_markdown(),
                Format::Csv => report.to_csv()?,
            };
            emit(&text, out.as_deref())?;
            Ok(report.holds())
        }
        Command::Markov {
            program,
            k,
            symbol,
            n,
            width_cap,
        } => {
            let p = match program {
                Some(path) => load(&path)?,
                None => {
                    let w = width_cap.unwrap_or(2 << k);
                    counter(w, n.unwrap_or(2 * w), [0])?
                }
            };
            let symbol = match symbol {
                0 => false,
                1 => true,
                s => bail!("symbol must be 0 or 1, got {s}"),
            };
            let dec = classify_states(&p.stable_symbol_chain(symbol)?)?;
            println!("transient: {:?}", dec.transient);
            for (i, c) in dec.classes.iter().enumerate() {
                println!(
                    "class {i}: states {:?} period {} cyclic subsets {:?}",
                    c.states, c.period, c.cyclic_subsets
                );
            }
            println!("lcm of periods: {}", dec.lcm);
            let cert = period_lcm_certificate(&dec, k);
            println!("certificate: {cert}");
            Ok(cert.passed())
        }
        Command::Table { function } => {
            print!("{}", function.spec()?.truth_table()?.to_text());
            Ok(true)
        }
    }
}

fn build(args: &FunctionArgs, mode: Option<ModeArg>) -> Result<ObddProgram> {
    use FunctionName::*;
    let f = args.spec()?;
    let name = f.name().context("not a named function")?;
    let k = f.k().unwrap_or(0);
    let n = args.n;
    let p = match (name, mode) {
        (PartialMod, None | Some(ModeArg::Exact | ModeArg::Bounded)) => build_quantum_partialmod(k, n)?,
        (PartialMod, Some(ModeArg::Deterministic)) => build_det_partialmod(k, n)?,
        (Mod, None | Some(ModeArg::Deterministic)) => build_det_mod(k, n)?,
        (Eqs, None | Some(ModeArg::Deterministic)) => build_det_eqs(k, n)?,
        (NotPal, None | Some(ModeArg::Deterministic)) => build_det_notpal(n)?,
        (NotOk, None | Some(ModeArg::Nondet)) => build_nobdd_noto_fingerprint(k, n)?,
        (NotEqs, None | Some(ModeArg::Nondet)) => build_nobdd_noteqs_fingerprint(k, n)?,
        (NotO, None | Some(ModeArg::Nondet)) => build_quantum_nondet_noto(n)?,
        (name, mode) => {
            let mode = mode.map_or("default".to_string(), |m| format!("{m:?}").to_lowercase());
            bail!("no {mode} construction for {name}")
        }
    };
    Ok(p)
}

fn minwidth(
    f: &FunctionSpec,
    order: &str,
    method: Method,
    width_cap: Option<usize>,
    mode: ModeArg,
) -> Result<bool> {
    let mut caps = OracleCaps::default();
    if order == "all" {
        let s = min_width_over_orders(f, &caps)?;
        println!(
            "{f}: minimum over {} orders ({} distinct tables)",
            s.orders, s.distinct_tables
        );
        println!("best: {} at order {:?}", s.best, s.best_order.one_based());
        println!("worst: {} at order {:?}", s.worst, s.worst_order.one_based());
        return Ok(true);
    }
    let order = parse_order(order, f.n())?;
    let report = match method {
        Method::Auto if f.is_total() => subfunction_widths(f, &order, &caps)?,
        Method::Subfunction => subfunction_widths(f, &order, &caps)?,
        Method::Auto | Method::Partial => {
            if let Some(cap) = width_cap {
                caps.max_classes = cap;
            }
            let m = partial_min_width_exact(f, &order, &caps)?;
            println!("search nodes: {}", m.search_nodes);
            m.report
        }
        Method::Distinguish => distinguishability_lower_bound(f, &order, &caps)?,
        Method::Stable => {
            if !order.is_id() {
                bail!("stable search uses the natural order");
            }
            let kind = match mode {
                ModeArg::Deterministic => ProgramKind::Deterministic,
                ModeArg::Nondet => ProgramKind::Nondeterministic,
                m => bail!("stable search supports deterministic and nondet, not {m:?}"),
            };
            let cap = width_cap.unwrap_or(4);
            for w in 1..=cap {
                let s = stable_exhaustive_search(f, w, kind, &caps)?;
                match s.found {
                    Some(p) => {
                        println!(
                            "{f}: smallest stable {kind} width {w} (searched {} structures)",
                            s.space
                        );
                        print!("{}", encode_program(&p));
                        return Ok(true);
                    }
                    None => println!("width {w}: none among {} structures", s.space),
                }
            }
            println!("{f}: no stable {kind} program of width <= {cap}");
            return Ok(true);
        }
    };
    println!("{f} order {:?}: {report}", order.one_based());
    Ok(true)
}
