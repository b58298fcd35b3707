//! `gelfand`: spherical spectra, Stockwell analysis/synthesis, localization
//! and the verification audit on finite Gelfand pairs.
//!
//! Exit status is 0 on success, 1 when `verify` finds an asserted failure,
//! and 2 for usage, parse or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gelfand_stockwell::audit::{run_verify, Tolerances};
use gelfand_stockwell::catalog::{self, list_pairs};
use gelfand_stockwell::io::{self, LoadedPair, PairFile};
use gelfand_stockwell::localization::{bound_suite, build_localization, SymbolFunction};
use gelfand_stockwell::spherical::{spherical_ft, BiInvariantSignal, SphericalDual};
use gelfand_stockwell::stockwell::{
    stockwell_forward, stockwell_inverse, TimePhaseCoefficients, Window,
};
use gelfand_stockwell::{GroupAutomorphism, GroupFunction64};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "gelfand",
    version,
    about = "Stockwell transforms on finite Gelfand pairs"
)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance for asserted identities and bound margins.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the built-in catalog.
    #[command(subcommand)]
    Pairs(PairsCommand),
    /// Spherical Fourier transform of a bi-invariant signal.
    Spectrum {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        signal: PathBuf,
    },
    /// Stockwell coefficients of a bi-invariant signal.
    Analyze {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        signal: PathBuf,
        /// JSON with norms and weights; defaults to `<output>.json`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Signal from Stockwell coefficients.
    Synthesize {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        coeffs: PathBuf,
    },
    /// Apply a localization operator and report its norms and bounds.
    Localize {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        symbol: PathBuf,
        /// Operator report JSON; defaults to `<output>.report.json`.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the audit suite over catalog pairs.
    Verify {
        /// Comma-separated catalog names; all pairs when omitted.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
    },
}

#[derive(Subcommand)]
enum PairsCommand {
    List,
    Show {
        name: String,
    },
    /// Write the pair as group JSON.
    Export {
        name: String,
    },
}

#[derive(Args)]
struct PairArg {
    /// Catalog name or path to a pair JSON file.
    #[arg(long)]
    pair: String,
}

#[derive(Args)]
struct Setting {
    #[command(flatten)]
    pair: PairArg,
    #[arg(long)]
    window: PathBuf,
    /// Automorphism name; the first listed one when omitted.
    #[arg(long)]
    automorphism: Option<String>,
    /// Rescale the window to unit norm.
    #[arg(long)]
    normalize_window: bool,
}

enum Failure {
    Usage(String),
    Asserted,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Asserted) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Pairs(cmd) => pairs(cli, cmd),
        Command::Spectrum { pair, signal } => spectrum(cli, pair, signal),
        Command::Analyze {
            setting,
            signal,
            sidecar,
        } => analyze(cli, setting, signal, sidecar.as_deref()),
        Command::Synthesize { setting, coeffs } => synthesize(cli, setting, coeffs),
        Command::Localize {
            setting,
            signal,
            symbol,
            report,
        } => localize(cli, setting, signal, symbol, report.as_deref()),
        Command::Verify { pairs } => verify(cli, pairs),
    }
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    match &cli.output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn companion(cli: &Cli, explicit: Option<&Path>, suffix: &str) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        cli.output.as_ref().map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(suffix);
            PathBuf::from(s)
        })
    })
}

fn load_pair(arg: &PairArg) -> Result<LoadedPair, Failure> {
    let path = Path::new(&arg.pair);
    if path.is_file() {
        Ok(io::read_pair(path)?)
    } else {
        Ok(LoadedPair::from(catalog::get_pair(&arg.pair)?))
    }
}

struct Loaded {
    pair: LoadedPair,
    dual: SphericalDual<f64>,
    window: Window<f64>,
    alpha: GroupAutomorphism,
    alpha_name: String,
}

fn load_setting(s: &Setting) -> Result<Loaded, Failure> {
    let pair = load_pair(&s.pair)?;
    let dual = SphericalDual::compute(&pair.pair)?;
    let (alpha_name, alpha) = match &s.automorphism {
        Some(n) => {
            let a = pair
                .automorphism(n)
                .ok_or_else(|| Failure::Usage(format!("unknown automorphism '{n}'")))?;
            (n.clone(), a.clone())
        }
        None => pair.automorphisms[0].clone(),
    };
    let values = io::read_signal(&s.window, pair.pair.order())?;
    let mut window = Window::new(&pair.pair, values)?;
    if s.normalize_window {
        window = window.normalized()?;
    }
    Ok(Loaded {
        pair,
        dual,
        window,
        alpha,
        alpha_name,
    })
}

fn read_bi_invariant(pair: &LoadedPair, path: &Path) -> Result<BiInvariantSignal<f64>, Failure> {
    let f = io::read_signal(path, pair.pair.order())?;
    Ok(BiInvariantSignal::from_function(pair.pair.cosets(), &f)?)
}

fn pairs(cli: &Cli, cmd: &PairsCommand) -> Outcome {
    match cmd {
        PairsCommand::List => {
            let names = list_pairs();
            let text = if cli.format == Some(Format::Json) {
                json_text(&json!(names))
            } else {
                names.iter().map(|n| format!("{n}\n")).collect()
            };
            emit(cli, &text)
        }
        PairsCommand::Show { name } => {
            let e = catalog::get_pair(name)?;
            let dual = SphericalDual::<f64>::compute(&e.pair)?;
            let info = json!({
                "name": e.name,
                "order": e.pair.order(),
                "subgroup_order": e.pair.subgroup().order(),
                "double_cosets": e.pair.class_count(),
                "class_sizes": e.pair.cosets().class_sizes(),
                "abelian": e.abelian,
                "automorphisms": e.automorphisms.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                "plancherel_weights": dual.weights(),
                "positive_definite": dual.positive_mask(),
                "notes": e.notes,
            });
            let text = if cli.format == Some(Format::Csv) {
                let mut s = String::from("key,value\n");
                for (k, v) in info.as_object().expect("object literal") {
                    let v = match v {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string().replace(',', ";"),
                    };
                    s.push_str(&format!("{k},{v}\n"));
                }
                s
            } else {
                json_text(&info)
            };
            emit(cli, &text)
        }
        PairsCommand::Export { name } => {
            let e = catalog::get_pair(name)?;
            emit(cli, &io::pair_to_json(&PairFile::from_entry(e)))
        }
    }
}

fn spectrum(cli: &Cli, pair_arg: &PairArg, signal: &Path) -> Outcome {
    let pair = load_pair(pair_arg)?;
    let dual = SphericalDual::compute(&pair.pair)?;
    let f = read_bi_invariant(&pair, signal)?;
    let fhat = spherical_ft(&pair.pair, &dual, &f)?;
    let weights: Vec<f64> = dual.positive_part().iter().map(|(_, w)| *w).collect();
    let text = if cli.format == Some(Format::Json) {
        json_text(&json!({
            "weights": weights,
            "re": fhat.iter().map(|z| z.re).collect::<Vec<_>>(),
            "im": fhat.iter().map(|z| z.im).collect::<Vec<_>>(),
        }))
    } else {
        io::spectrum_to_csv(&weights, &fhat)
    };
    emit(cli, &text)
}

fn coefficients_json(c: &TimePhaseCoefficients<f64>) -> serde_json::Value {
    let m = c.matrix();
    let rows: Vec<_> = (0..m.nrows())
        .map(|t| {
            (0..m.ncols())
                .map(|p| [m[(t, p)].re, m[(t, p)].im])
                .collect::<Vec<_>>()
        })
        .collect();
    json!(rows)
}

fn analyze(cli: &Cli, setting: &Setting, signal: &Path, sidecar: Option<&Path>) -> Outcome {
    let l = load_setting(setting)?;
    let f = read_bi_invariant(&l.pair, signal)?;
    let c = stockwell_forward(&l.pair.pair, &l.dual, &f, &l.window, &l.alpha)?;
    let summary = json!({
        "automorphism": l.alpha_name,
        "weights": c.weights(),
        "signal_norm": f.norm_l2(l.pair.pair.cosets()),
        "window_norm": l.window.norm_l2(),
        "coefficient_norm": c.norm_l2(),
        "coefficient_sup": c.norm_sup(),
    });
    if cli.format == Some(Format::Json) {
        let mut v = summary;
        v["coefficients"] = coefficients_json(&c);
        return emit(cli, &json_text(&v));
    }
    emit(cli, &io::matrix_to_csv(c.matrix()))?;
    if let Some(p) = companion(cli, sidecar, ".json") {
        std::fs::write(p, json_text(&summary))?;
    }
    Ok(())
}

fn synthesize(cli: &Cli, setting: &Setting, coeffs: &Path) -> Outcome {
    let l = load_setting(setting)?;
    let weights: Vec<f64> = l.dual.positive_part().iter().map(|(_, w)| *w).collect();
    let m = io::read_coeffs(coeffs, l.pair.pair.order(), weights.len())?;
    let c = TimePhaseCoefficients::new(m, weights)?;
    let s = stockwell_inverse(&l.pair.pair, &l.dual, &c, &l.window, &l.alpha)?;
    let f = s.signal.to_function(l.pair.pair.cosets());
    if cli.format == Some(Format::Json) {
        return emit(
            cli,
            &json_text(&json!({
                "re": f.values().iter().map(|z| z.re).collect::<Vec<_>>(),
                "im": f.values().iter().map(|z| z.im).collect::<Vec<_>>(),
                "leakage": s.leakage,
            })),
        );
    }
    eprintln!("bi-invariance leakage: {:e}", s.leakage);
    emit(cli, &io::signal_to_csv(&f))
}

fn localize(
    cli: &Cli,
    setting: &Setting,
    signal: &Path,
    symbol: &Path,
    report: Option<&Path>,
) -> Outcome {
    let l = load_setting(setting)?;
    let pair = &l.pair.pair;
    let f = read_bi_invariant(&l.pair, signal)?;
    let values = io::read_symbol(symbol, pair.order(), l.dual.positive_len())?;
    let u = SymbolFunction::new(pair, &l.dual, values)?;
    let op = build_localization(pair, &l.dual, &u, &l.window, &l.alpha)?;
    let out: GroupFunction64 = op.apply(pair, &f).to_function(pair.cosets());
    let rep = bound_suite(pair, &l.dual, &u, &l.window, &l.alpha)?;
    let rep_json = serde_json::to_value(&rep)?;
    if cli.format == Some(Format::Json) {
        return emit(
            cli,
            &json_text(&json!({
                "re": out.values().iter().map(|z| z.re).collect::<Vec<_>>(),
                "im": out.values().iter().map(|z| z.im).collect::<Vec<_>>(),
                "report": rep_json,
            })),
        );
    }
    emit(cli, &io::signal_to_csv(&out))?;
    match companion(cli, report, ".report.json") {
        Some(p) => std::fs::write(p, json_text(&rep_json))?,
        None => eprint!("{}", json_text(&rep_json)),
    }
    Ok(())
}

fn verify(cli: &Cli, selection: &[String]) -> Outcome {
    let names: Vec<String> = if selection.is_empty() {
        list_pairs().iter().map(|s| s.to_string()).collect()
    } else {
        selection.to_vec()
    };
    let tol = Tolerances {
        property: cli.tol,
        ..Tolerances::default()
    };
    let report = run_verify(&names, cli.seed, &tol)?;
    let text = if cli.format == Some(Format::Csv) {
        let mut s = String::from("pair,automorphism,theorem,status,residual,margin\n");
        for (c, r) in report.rows() {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.pair,
                c.automorphism,
                r.theorem,
                r.status.label(),
                io::format_float(r.residual),
                io::format_float(r.margin)
            ));
        }
        s
    } else {
        report.to_json()
    };
    emit(cli, &text)?;
    if cli.output.is_some() {
        print!("{}", report.table());
    } else {
        eprint!("{}", report.table());
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Asserted)
    }
}
