//! `multlab`: command-line front door to the weighted Fourier multiplier
//! laboratory. Every subcommand emits a versioned CSV or JSON table whose
//! rows carry their full parameter provenance, writes output atomically, and
//! is byte-for-byte reproducible for identical arguments and seed.
//!
//! Exit codes: 0 = computed and all built-in checks pass, 1 = usage or
//! parameter error, 2 = a numeric assertion failed (the offending row is
//! echoed to stderr).

use clap::{Args, Parser, Subcommand};
use multlab_core::{
    ap_constant, ax_constant, certificate_sweep, default_delta_schedule, default_two_classes_j,
    discrete_l2_operator_norm, doubling_constant_estimate, dyadic_intervals,
    exp_weight_unbounded_demo, kernel_l1_upper_bound, lebesgue_point_integral, mollifier,
    nondoubling_growth_demo, parse_weight_spec, power_trick_check, superexp_triviality_demo,
    symbol_on_grid, two_classes_demo, weak_doubling_witness, weighted_young_check, BSequence, Cell,
    CenterRule, Error as CoreError, Grid, MultiplierSymbol, SampledFunction, ScenarioReport,
    SpaceSpec, SupportConstraint, Table, WeightSpec,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug)]
enum CliError {
    /// Bad arguments or unparsable parameters: exit 1.
    Usage(String),
    /// A numeric check failed or a computation could not reach its target
    /// accuracy: exit 2.
    Assertion(String),
}

type CliResult<T> = Result<T, CliError>;

/// Classify library errors: parameter-shaped problems are usage errors,
/// accuracy/consistency problems are assertion failures.
fn lift(e: CoreError) -> CliError {
    match e {
        CoreError::Parse { .. }
        | CoreError::InvalidGrid(_)
        | CoreError::GridMismatch
        | CoreError::OutOfRange(_)
        | CoreError::Resolution(_)
        | CoreError::ProbeSupport
        | CoreError::UnsupportedWeight(_)
        | CoreError::DepthOverflow(_) => CliError::Usage(e.to_string()),
        _ => CliError::Assertion(e.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "multlab",
    version,
    about = "Numerical laboratory for Fourier multipliers on weighted Lebesgue spaces",
    after_help = "Weight DSL: const:c=1 | power:alpha=0.5 | powerabs:gamma=0.5 | \
                  exp:c=1 | expabs:c=1 | subexp:c=1,beta=0.5 | superexp:alpha1=2,alpha2=2 | \
                  phiexp:c=1 | cantor:depth=8 | cantorseq:depth=8,b=harmonic\n\
                  Symbol DSL: const:re=1,im=0 | lorentzian:center=0,width=1 | \
                  band:lo=-1,hi=1 | modulation:y=1 | mollifier:j=4 | aminusalpha:alpha=0.5"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    format: String,
    /// Output file; written atomically (temp file + rename). Stdout when
    /// omitted.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct GridOpts {
    /// Window half-width: nodes cover [-L, L).
    #[arg(long = "L", default_value_t = 16.0)]
    l: f64,
    /// Node count (power of two).
    #[arg(long = "N", default_value_t = 1024)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate the ball-norm doubling constant of a weighted space over an
    /// R-schedule, taking the infimum over candidate centers y.
    Doubling {
        /// Weight DSL (see `multlab --help` for the grammar).
        #[arg(long, default_value = "const:c=1")]
        weight: String,
        /// Lebesgue exponent p (a real >= 1, or `inf`).
        #[arg(long, default_value = "2")]
        p: String,
        /// Dilation factor tau > 1.
        #[arg(long, default_value_t = 2.0)]
        tau: f64,
        /// Comma-separated ball radii.
        #[arg(long = "R", default_value = "4,8,16")]
        r: String,
        /// Comma-separated candidate centers.
        #[arg(long, default_value = "0,1,-1,5,-5")]
        y: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Two-sided doubling witness: along a drifting sequence of balls the
    /// doubling ratios of a sub-exponential weight stay bounded.
    Witness {
        #[arg(long, default_value = "subexp:c=1,beta=0.5")]
        weight: String,
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, default_value_t = 2.0)]
        tau: f64,
        /// Number of balls in the drifting sequence.
        #[arg(long, default_value_t = 40)]
        jmax: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Muckenhoupt constant over a dyadic interval family, with an
    /// independent cross-check of the two equivalent formulas (exit 2 if the
    /// two disagree beyond 1e-6 relative).
    Ap {
        #[arg(long, default_value = "const:c=1")]
        weight: String,
        #[arg(long, default_value = "2")]
        p: String,
        /// Dyadic generation depth of the interval family.
        #[arg(long = "K", default_value_t = 8)]
        k: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Discrete L^2(w) operator norm of a multiplier (Lanczos on the
    /// normal operator), with the grid sup of the symbol for comparison.
    Mnorm {
        /// Symbol DSL (see `multlab --help` for the grammar).
        #[arg(long, default_value = "lorentzian:center=0,width=1")]
        symbol: String,
        #[arg(long, default_value = "const:c=1")]
        weight: String,
        #[command(flatten)]
        grid: GridOpts,
        /// Discretization size for the norm computation (<= 512).
        #[arg(long, default_value_t = 256)]
        nsmall: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Sweep modulated-plateau probes over frequencies and scales; each row
    /// is a certified lower bound on the multiplier norm.
    Probe {
        #[arg(long, default_value = "lorentzian:center=0,width=1")]
        symbol: String,
        #[arg(long, default_value = "const:c=1")]
        weight: String,
        #[arg(long, default_value = "2")]
        p: String,
        #[command(flatten)]
        grid: GridOpts,
        /// Comma-separated probe frequencies.
        #[arg(long, default_value = "0")]
        eta: String,
        /// Comma-separated concentration scales; default is a geometric
        /// schedule from 1 down to 8/L.
        #[arg(long)]
        delta: Option<String>,
        /// Comma-separated probe centers.
        #[arg(long, default_value = "0")]
        y: String,
        /// Plateau width parameter (> 1).
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Weighted L^1 bound on the convolution kernel of a symbol: an upper
    /// bound on the multiplier norm for one-sided exponential weights.
    Kernelbound {
        /// Symbol DSL; must be a symbol with a known kernel
        /// (aminusalpha:alpha=...).
        #[arg(long, default_value = "aminusalpha:alpha=0.5")]
        symbol: String,
        #[arg(long, default_value = "exp:c=1")]
        weight: String,
        /// Allow weights outside the one-sided exponential family for which
        /// the bound is proved; the integral is still computed but is then
        /// only diagnostic.
        #[arg(long)]
        caveat: bool,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Local oscillation of a symbol at a frequency: the mollified mean of
    /// |a(.) - a(eta)| over shrinking scales delta.
    Lebesgue {
        #[arg(long, default_value = "lorentzian:center=0,width=1")]
        symbol: String,
        /// Frequency at which the oscillation is measured.
        #[arg(long, default_value = "0.7")]
        eta: String,
        /// Comma-separated scales.
        #[arg(long, default_value = "1,0.5,0.25,0.125,0.0625")]
        delta: String,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Random-draw check of the weighted convolution inequality
    /// ||k * f||_{L^p(w)} <= ||k||_{L^1(w*)} ||f||_{L^p(w)} (exit 2 on any
    /// violating draw).
    Young {
        /// Weight w of the target space.
        #[arg(long, default_value = "exp:c=1")]
        weight: String,
        /// Weight w* for the kernel factor.
        #[arg(long, default_value = "exp:c=1")]
        wstar: String,
        #[arg(long, default_value = "2")]
        p: String,
        /// Support constraint on the kernel: `all` or `nonpositive`.
        #[arg(long, value_parser = ["all", "nonpositive"], default_value = "all")]
        omega: String,
        /// Number of random (kernel, function) draws.
        #[arg(long, default_value_t = 20)]
        draws: u32,
        #[command(flatten)]
        grid: GridOpts,
        /// Seed for the random draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run a named end-to-end demonstration; exit 2 unless every row passes.
    Scenario {
        #[command(subcommand)]
        which: ScenarioCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ScenarioCommand {
    /// Cantor-type weight vs a decaying-plateau weight: mollification is
    /// uniformly bounded on one and blows up along the plateaus of the other.
    TwoClasses {
        /// Construction depth of the fat Cantor set (>= 6).
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Mollifier index; default is the smallest power of two resolving
        /// the surviving intervals at this depth.
        #[arg(long)]
        j: Option<u32>,
        /// Number of plateau copies to scan (1..=8).
        #[arg(long, default_value_t = 5)]
        mmax: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Unbounded symbol, bounded operator: the fractional-integration symbol
    /// on a one-sided exponential space.
    ExpUnbounded {
        /// Exponential weight rate c > 0.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Singularity exponent alpha in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value = "2")]
        p: String,
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Doubling-constant growth for exp(c|x|) along an R-schedule, against
    /// the bounded witness ratios of a sub-exponential weight.
    Nondoubling {
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 2.0)]
        tau: f64,
        #[arg(long, default_value = "2")]
        p: String,
        /// Comma-separated radii (at least two).
        #[arg(long = "R", default_value = "10,20,40")]
        r: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Powers of a symbol: sup norms multiply exactly, operator norms are
    /// submultiplicative, and m-th roots squeeze down to the sup.
    PowerTrick {
        #[arg(long, default_value = "lorentzian:center=0,width=1")]
        symbol: String,
        #[arg(long, default_value = "power:alpha=0.2")]
        weight: String,
        #[command(flatten)]
        grid: GridOpts,
        /// Discretization size for the operator norms (<= 512).
        #[arg(long, default_value_t = 128)]
        nsmall: usize,
        /// Largest power checked (1..=8).
        #[arg(long, default_value_t = 5)]
        mmax: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Super-exponential weights force translation-norm ratios to blow up
    /// along a drifting sequence, while exponential weights stay flat.
    Superexp {
        #[arg(long, default_value_t = 2.0)]
        alpha1: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha2: f64,
        /// Comma-separated base offsets.
        #[arg(long, default_value = "1,2")]
        x0: String,
        /// Mollification radius (< min|x0| / 3).
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn parse_p(text: &str) -> CliResult<f64> {
    if text == "inf" {
        return Ok(f64::INFINITY);
    }
    text.parse::<f64>()
        .map_err(|e| CliError::Usage(format!("--p {text}: {e}")))
}

fn parse_list(flag: &str, text: &str) -> CliResult<Vec<f64>> {
    let vals: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match vals {
        Ok(v) if !v.is_empty() => Ok(v),
        Ok(_) => Err(CliError::Usage(format!("--{flag}: empty list"))),
        Err(e) => Err(CliError::Usage(format!("--{flag} {text}: {e}"))),
    }
}

fn parse_weight(text: &str) -> CliResult<WeightSpec> {
    parse_weight_spec(text).map_err(|e| CliError::Usage(format!("--weight {text}: {e}")))
}

fn parse_space(weight: &str, p: &str) -> CliResult<SpaceSpec> {
    SpaceSpec::new(parse_p(p)?, parse_weight(weight)?).map_err(lift)
}

fn make_grid(opts: &GridOpts) -> CliResult<Grid> {
    Grid::new(opts.l, opts.n).map_err(lift)
}

/// Symbol DSL: `name` or `name:key=value,...`; numeric fields default to the
/// values listed in `multlab --help`.
fn parse_symbol(text: &str, grid: Grid) -> CliResult<MultiplierSymbol> {
    let usage = |msg: String| CliError::Usage(format!("--symbol {text}: {msg}"));
    let (name, rest) = match text.split_once(':') {
        Some((n, r)) => (n, r),
        None => (text, ""),
    };
    let mut fields = std::collections::BTreeMap::new();
    if !rest.is_empty() {
        for part in rest.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("expected key=value, got `{part}`")))?;
            let num: f64 = v
                .trim()
                .parse()
                .map_err(|e| usage(format!("field {k}: {e}")))?;
            fields.insert(k.trim().to_string(), num);
        }
    }
    let get = |key: &str, default: f64| fields.get(key).copied().unwrap_or(default);
    let known: &[&str] = match name {
        "const" => &["re", "im"],
        "lorentzian" => &["center", "width"],
        "band" => &["lo", "hi"],
        "modulation" => &["y"],
        "mollifier" => &["j"],
        "aminusalpha" => &["alpha"],
        _ => return Err(usage("unknown symbol family".into())),
    };
    if let Some(stray) = fields.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(usage(format!("unknown field `{stray}`")));
    }
    let sym = match name {
        "const" => MultiplierSymbol::ConstantSymbol(Complex64::new(get("re", 1.0), get("im", 0.0))),
        "lorentzian" => MultiplierSymbol::Lorentzian {
            center: get("center", 0.0),
            width: get("width", 1.0),
        },
        "band" => MultiplierSymbol::BandIndicator {
            lo: get("lo", -1.0),
            hi: get("hi", 1.0),
        },
        "modulation" => MultiplierSymbol::Modulation { y: get("y", 1.0) },
        "mollifier" => {
            let j = get("j", 4.0);
            if j < 1.0 || j.fract() != 0.0 || j > u32::MAX as f64 {
                return Err(usage(format!("j={j}, need a positive integer")));
            }
            MultiplierSymbol::MollifierTransform { j: j as u32 }
        }
        "aminusalpha" => MultiplierSymbol::a_minus_alpha(get("alpha", 0.5), grid).map_err(lift)?,
        _ => unreachable!(),
    };
    Ok(sym)
}

fn emit(table: &Table, output: &OutputOpts) -> CliResult<()> {
    let text = match output.format.as_str() {
        "csv" => table.to_csv(),
        _ => table.to_json(),
    };
    match &output.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let tmp = format!("{path}.tmp");
            std::fs::write(&tmp, &text)
                .and_then(|()| std::fs::rename(&tmp, path))
                .map_err(|e| CliError::Usage(format!("--out {path}: {e}")))
        }
    }
}

fn real(v: f64) -> Cell {
    Cell::Real(v)
}

fn meta_grid(grid: Grid) -> Vec<(String, String)> {
    vec![
        ("L".into(), format!("{}", grid.half_width())),
        ("N".into(), format!("{}", grid.count())),
    ]
}

fn scenario_table(report: &ScenarioReport) -> Table {
    let mut meta = vec![("scenario".into(), report.scenario.clone())];
    meta.extend(report.params.iter().cloned());
    let mut t = Table::new(meta, &["label", "measured", "predicted", "pass", "formula"]);
    for row in &report.rows {
        t.push(vec![
            Cell::Text(row.label.clone()),
            real(row.measured),
            real(row.predicted),
            Cell::Flag(row.pass),
            Cell::Text(row.formula.clone()),
        ]);
    }
    t
}

fn finish_scenario(report: &ScenarioReport, output: &OutputOpts) -> CliResult<()> {
    emit(&scenario_table(report), output)?;
    if report.overall_pass {
        Ok(())
    } else {
        let bad: Vec<String> = report
            .rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("{}: measured {} vs predicted {}", r.label, r.measured, r.predicted))
            .collect();
        Err(CliError::Assertion(format!(
            "failing rows: {}",
            bad.join("; ")
        )))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Doubling {
            weight,
            p,
            tau,
            r,
            y,
            output,
        } => {
            let space = parse_space(&weight, &p)?;
            let r_schedule = parse_list("R", &r)?;
            let y_search = parse_list("y", &y)?;
            let report = doubling_constant_estimate(&space, tau, &r_schedule, &y_search)
                .map_err(lift)?;
            let mut t = Table::new(
                vec![
                    ("weight".into(), weight.clone()),
                    ("p".into(), p.clone()),
                    ("tau".into(), format!("{tau}")),
                    (
                        "liminf-estimate".into(),
                        Cell::Real(report.liminf_estimate).render(),
                    ),
                ],
                &["R", "y", "ratio", "inf-over-y"],
            );
            for entry in &report.entries {
                for &(yv, ratio) in &entry.ratios {
                    t.push(vec![
                        real(entry.r),
                        real(yv),
                        real(ratio),
                        real(entry.inf_over_y),
                    ]);
                }
            }
            emit(&t, &output)
        }
        Command::Witness {
            weight,
            p,
            tau,
            jmax,
            output,
        } => {
            let space = parse_space(&weight, &p)?;
            let report = weak_doubling_witness(&space, tau, jmax).map_err(lift)?;
            let mut t = Table::new(
                vec![
                    ("weight".into(), weight.clone()),
                    ("p".into(), p.clone()),
                    ("tau".into(), format!("{tau}")),
                ],
                &["j", "y", "R", "ratio"],
            );
            for (j, (&(yv, rv), &ratio)) in report.pairs.iter().zip(&report.ratios).enumerate() {
                t.push(vec![
                    Cell::Int(j as i64),
                    real(yv),
                    real(rv),
                    real(ratio),
                ]);
            }
            emit(&t, &output)
        }
        Command::Ap {
            weight,
            p,
            k,
            output,
        } => {
            let space = parse_space(&weight, &p)?;
            let ap = ap_constant(&space, dyadic_intervals(k)).map_err(lift)?;
            let ax = ax_constant(&space, dyadic_intervals(k)).map_err(lift)?;
            let mut t = Table::new(
                vec![
                    ("weight".into(), weight.clone()),
                    ("p".into(), p.clone()),
                    ("K".into(), format!("{k}")),
                ],
                &["quantity", "value", "argmax-lo", "argmax-hi", "divergent"],
            );
            for (label, rep) in [("ap", &ap), ("ax", &ax)] {
                t.push(vec![
                    Cell::Text(label.into()),
                    real(rep.value),
                    real(rep.argmax.0),
                    real(rep.argmax.1),
                    Cell::Flag(rep.divergent),
                ]);
            }
            emit(&t, &output)?;
            let agree = match (ap.divergent, ax.divergent) {
                (true, true) => true,
                (false, false) => (ap.value - ax.value).abs() <= 1e-6 * ap.value.abs(),
                _ => false,
            };
            if agree {
                Ok(())
            } else {
                Err(CliError::Assertion(format!(
                    "the two Muckenhoupt formulas disagree: {} vs {}",
                    ap.value, ax.value
                )))
            }
        }
        Command::Mnorm {
            symbol,
            weight,
            grid,
            nsmall,
            output,
        } => {
            let g = make_grid(&grid)?;
            let a = parse_symbol(&symbol, g)?;
            let w = parse_weight(&weight)?;
            let norm = discrete_l2_operator_norm(&a, &w, g, nsmall).map_err(lift)?;
            let sup = symbol_on_grid(&a, g).map_err(lift)?.max_abs();
            let mut meta = vec![
                ("symbol".into(), symbol.clone()),
                ("weight".into(), weight.clone()),
            ];
            meta.extend(meta_grid(g));
            meta.push(("nsmall".into(), format!("{nsmall}")));
            let mut t = Table::new(meta, &["norm", "symbol-sup"]);
            t.push(vec![real(norm), real(sup)]);
            emit(&t, &output)
        }
        Command::Probe {
            symbol,
            weight,
            p,
            grid,
            eta,
            delta,
            y,
            rho,
            output,
        } => {
            let g = make_grid(&grid)?;
            let a = parse_symbol(&symbol, g)?;
            let space = parse_space(&weight, &p)?;
            let eta_list = parse_list("eta", &eta)?;
            let delta_schedule = match &delta {
                Some(text) => parse_list("delta", text)?,
                None => default_delta_schedule(g),
            };
            let centers = CenterRule::List(parse_list("y", &y)?);
            let sweep = certificate_sweep(&a, &space, g, &eta_list, &delta_schedule, &centers, rho)
                .map_err(lift)?;
            let mut meta = vec![
                ("symbol".into(), symbol.clone()),
                ("weight".into(), weight.clone()),
                ("p".into(), p.clone()),
            ];
            meta.extend(meta_grid(g));
            meta.push(("rho".into(), format!("{rho}")));
            meta.push((
                "best-overall".into(),
                Cell::Real(sweep.best_overall).render(),
            ));
            let mut t = Table::new(meta, &["eta", "delta", "y", "lower-bound"]);
            for entry in &sweep.entries {
                t.push(vec![
                    real(entry.eta),
                    real(entry.best.delta),
                    real(entry.best.y),
                    real(entry.best.lower_bound),
                ]);
            }
            emit(&t, &output)
        }
        Command::Kernelbound {
            symbol,
            weight,
            caveat,
            grid,
            output,
        } => {
            let g = make_grid(&grid)?;
            let a = parse_symbol(&symbol, g)?;
            let w = parse_weight(&weight)?;
            let kernel = a.kernel().ok_or_else(|| {
                CliError::Usage(format!(
                    "--symbol {symbol}: no closed-form kernel for this family"
                ))
            })?;
            let bound = kernel_l1_upper_bound(&kernel, &w, caveat).map_err(lift)?;
            let mut t = Table::new(
                vec![
                    ("symbol".into(), symbol.clone()),
                    ("weight".into(), weight.clone()),
                    ("caveat".into(), format!("{caveat}")),
                ],
                &["upper-bound", "finite"],
            );
            t.push(vec![real(bound), Cell::Flag(bound.is_finite())]);
            emit(&t, &output)
        }
        Command::Lebesgue {
            symbol,
            eta,
            delta,
            grid,
            output,
        } => {
            let g = make_grid(&grid)?;
            let a = parse_symbol(&symbol, g)?;
            let eta_v = parse_list("eta", &eta)?;
            if eta_v.len() != 1 {
                return Err(CliError::Usage("--eta: expected a single frequency".into()));
            }
            let deltas = parse_list("delta", &delta)?;
            let psi = mollifier(1, g).map_err(lift)?;
            let mut meta = vec![
                ("symbol".into(), symbol.clone()),
                ("eta".into(), eta.clone()),
            ];
            meta.extend(meta_grid(g));
            let mut t = Table::new(meta, &["delta", "integral"]);
            for &d in &deltas {
                let v = lebesgue_point_integral(&a, eta_v[0], &psi, d).map_err(lift)?;
                t.push(vec![real(d), real(v)]);
            }
            emit(&t, &output)
        }
        Command::Young {
            weight,
            wstar,
            p,
            omega,
            draws,
            grid,
            seed,
            output,
        } => {
            let g = make_grid(&grid)?;
            let w = parse_weight(&weight)?;
            let ws = parse_weight(&wstar)?;
            let pv = parse_p(&p)?;
            let constraint = if omega == "nonpositive" {
                SupportConstraint::NonPositive
            } else {
                SupportConstraint::AllReals
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut meta = vec![
                ("weight".into(), weight.clone()),
                ("wstar".into(), wstar.clone()),
                ("p".into(), p.clone()),
                ("omega".into(), omega.clone()),
            ];
            meta.extend(meta_grid(g));
            meta.push(("seed".into(), format!("{seed}")));
            let mut t = Table::new(meta, &["draw", "lhs", "rhs", "holds"]);
            let mut violation: Option<String> = None;
            let half = 0.45 * g.half_width();
            for draw in 0..draws {
                let kernel_hi = match constraint {
                    SupportConstraint::AllReals => half,
                    SupportConstraint::NonPositive => 0.0,
                };
                let kappa = random_smooth(g, &mut rng, -half, kernel_hi);
                let f = random_smooth(g, &mut rng, -half, half);
                let report =
                    weighted_young_check(&kappa, &f, &ws, &w, pv, constraint).map_err(lift)?;
                t.push(vec![
                    Cell::Int(draw as i64),
                    real(report.lhs),
                    real(report.rhs),
                    Cell::Flag(report.holds),
                ]);
                if !report.holds && violation.is_none() {
                    violation = Some(format!(
                        "draw {draw}: lhs {} exceeds rhs {}",
                        report.lhs, report.rhs
                    ));
                }
            }
            emit(&t, &output)?;
            match violation {
                None => Ok(()),
                Some(msg) => Err(CliError::Assertion(msg)),
            }
        }
        Command::Scenario { which } => match which {
            ScenarioCommand::TwoClasses {
                depth,
                j,
                mmax,
                output,
            } => {
                let j = j.unwrap_or_else(|| default_two_classes_j(depth));
                let report =
                    two_classes_demo(depth, BSequence::Harmonic, j, mmax).map_err(lift)?;
                finish_scenario(&report, &output)
            }
            ScenarioCommand::ExpUnbounded {
                c,
                alpha,
                p,
                grid,
                seed,
                output,
            } => {
                let g = make_grid(&grid)?;
                let report =
                    exp_weight_unbounded_demo(c, alpha, parse_p(&p)?, g, seed).map_err(lift)?;
                finish_scenario(&report, &output)
            }
            ScenarioCommand::Nondoubling {
                c,
                tau,
                p,
                r,
                output,
            } => {
                let r_schedule = parse_list("R", &r)?;
                let report = nondoubling_growth_demo(c, tau, parse_p(&p)?, &r_schedule)
                    .map_err(lift)?;
                finish_scenario(&report, &output)
            }
            ScenarioCommand::PowerTrick {
                symbol,
                weight,
                grid,
                nsmall,
                mmax,
                output,
            } => {
                let g = make_grid(&grid)?;
                let a = parse_symbol(&symbol, g)?;
                let w = parse_weight(&weight)?;
                let report = power_trick_check(&a, &w, g, nsmall, mmax).map_err(lift)?;
                finish_scenario(&report, &output)
            }
            ScenarioCommand::Superexp {
                alpha1,
                alpha2,
                x0,
                eps,
                output,
            } => {
                let x0_list = parse_list("x0", &x0)?;
                let report =
                    superexp_triviality_demo(alpha1, alpha2, &x0_list, eps).map_err(lift)?;
                finish_scenario(&report, &output)
            }
        },
    }
}

/// Seeded random smooth test function: a few Gaussian bumps under a window
/// vanishing outside [lo, hi].
fn random_smooth(grid: Grid, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> SampledFunction {
    let bumps: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(lo..hi.max(lo + 1e-9)),
                rng.gen_range(0.2..0.6),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect();
    let cut = 0.5 * (lo + hi);
    let half = (0.5 * (hi - lo)).max(1e-9);
    SampledFunction::from_real_fn(grid, move |x| {
        let window = (1.0 - ((x - cut) / half).powi(2)).max(0.0);
        bumps
            .iter()
            .map(|&(c, s, amp)| amp * (-((x - c) / s).powi(2)).exp())
            .sum::<f64>()
            * window
    })
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successful exits; anything else is a
            // usage error
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Assertion(msg)) => {
            eprintln!("assertion failure: {msg}");
            std::process::exit(2);
        }
    }
}
