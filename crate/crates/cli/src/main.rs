use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polynorm::inequalities::PExponent;
use polynorm::interp::{
    boas_derivative, odd_reciprocal_square_sum, riesz_measure, riesz_weight_identity,
    DEFAULT_BOAS_TRUNCATION,
};
use polynorm::kernels::{
    besov_111_bound_constant, besov_inf1_bound_constant, besov_inf1_bound_constant_from_one,
    deriv_via_kernel, trig_deriv_via_kernel, wiener_bound_constant,
};
use polynorm::norms::{
    besov_111_seminorm, besov_inf1_seminorm, lp_norm, mahler_jensen, mahler_quadrature,
    mahler_trig, sup_norm, wiener_norm, QuadratureConfig,
};
use polynorm::sweep::{run_sweep, SweepConfig};
use polynorm::{Polynomial, C64};

#[derive(Parser)]
#[command(name = "polynorm", version)]
#[command(about = "Norms, exact derivatives and Bernstein-type inequality checks for polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a norm of a polynomial read from a JSON file.
    Norm {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: NormArg,
        /// Exponent for `--kind lp`.
        #[arg(long)]
        p: Option<f64>,
        /// Quadrature settings as JSON (missing fields take defaults).
        #[arg(long)]
        cfg: Option<PathBuf>,
    },
    /// Differentiate at one or more points and compare with the direct value.
    Diff {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        /// Evaluation point: a real `x` (angle for trigonometric input, real
        /// axis point for algebraic input) or `re,im`. Repeatable.
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<String>,
        /// Odd truncation order of the Boas series.
        #[arg(long, default_value_t = DEFAULT_BOAS_TRUNCATION)]
        terms: usize,
    },
    /// Run a seeded verification sweep; exit 1 if any check fails.
    Verify {
        /// Sweep configuration as JSON; defaults apply when omitted.
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Replaces the list of rho values.
        #[arg(long, value_delimiter = ',')]
        rho: Option<Vec<f64>>,
        /// Output prefix: writes PREFIX.jsonl and PREFIX.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Negative control: multiply every bound by this factor.
        #[arg(long, num_args = 0..=1, default_missing_value = "0.99")]
        debug_shrink_bound: Option<f64>,
    },
    /// Print the embedding constants and the Riesz and Euler sums.
    Constants {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Sup,
    Lp,
    Mahler,
    MahlerQuadrature,
    Wiener,
    BesovInf1,
    Besov111,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Method {
    Direct,
    Riesz,
    Kernel,
    Boas,
}

/// Usage and input errors; reported with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Norm { file, kind, p, cfg } => cmd_norm(&file, kind, p, cfg.as_deref()),
        Command::Diff {
            file,
            method,
            at,
            terms,
        } => cmd_diff(&file, method, &at, terms),
        Command::Verify {
            config,
            seed,
            trials,
            tol,
            rho,
            out,
            debug_shrink_bound,
        } => cmd_verify(config, seed, trials, tol, rho, out, debug_shrink_bound),
        Command::Constants { n } => cmd_constants(n),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// 15 digits after the leading one, trailing zeros trimmed (`2.0`,
/// `1.414213562373095`).
fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:?}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&mag) {
        return format!("{x:.15e}");
    }
    let s = format!("{:.*}", (15 - mag).max(1) as usize, x);
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

fn fmt_complex(z: C64) -> String {
    let im = fmt_num(z.im.abs());
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_num(z.re))
}

fn read_poly(path: &std::path::Path) -> Result<Polynomial, UsageError> {
    let text =
        fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    Ok(Polynomial::from_json(&text)?)
}

fn cmd_norm(
    file: &std::path::Path,
    kind: NormArg,
    p: Option<f64>,
    cfg: Option<&std::path::Path>,
) -> CmdResult {
    let poly = read_poly(file)?;
    let cfg: QuadratureConfig = match cfg {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => QuadratureConfig::default(),
    };
    let trig = match &poly {
        Polynomial::Alg(a) => a.to_trig(),
        Polynomial::Trig(t) => t.clone(),
        Polynomial::ExpSum(_) => {
            return Err(UsageError(
                "norms are defined for alg and trig input".into(),
            ))
        }
    };
    let analytic = || match &poly {
        Polynomial::Alg(a) => Ok(a.clone()),
        _ => Err(UsageError("this norm needs alg input".into())),
    };
    let value = match kind {
        NormArg::Sup => sup_norm(&trig),
        NormArg::Lp => {
            let p = p.ok_or_else(|| UsageError("--kind lp needs --p".into()))?;
            match PExponent::from_f64(p)? {
                PExponent::Zero => mahler_trig(&trig)?,
                PExponent::Infinity => sup_norm(&trig),
                PExponent::Finite(p) => lp_norm(&trig, p, &cfg)?,
            }
        }
        NormArg::Mahler => match &poly {
            Polynomial::Alg(a) => mahler_jensen(a)?,
            _ => mahler_trig(&trig)?,
        },
        NormArg::MahlerQuadrature => mahler_quadrature(&trig, &cfg)?,
        NormArg::Wiener => match &poly {
            Polynomial::Alg(a) => wiener_norm(a),
            _ => trig.coeffs().iter().map(|c| c.norm()).sum(),
        },
        NormArg::BesovInf1 => besov_inf1_seminorm(&analytic()?, &cfg),
        NormArg::Besov111 => besov_111_seminorm(&analytic()?, &cfg),
    };
    println!("{}", fmt_num(value));
    Ok(ExitCode::SUCCESS)
}

fn parse_point(s: &str) -> Result<C64, UsageError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| UsageError(format!("bad point {s:?}")))
    };
    match parts.as_slice() {
        [x] => Ok(C64::new(num(x)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(UsageError(format!("bad point {s:?}"))),
    }
}

fn real_point(z: C64, what: &str) -> Result<f64, UsageError> {
    if z.im != 0.0 {
        return Err(UsageError(format!(
            "{what} needs a real point, got {}",
            fmt_complex(z)
        )));
    }
    Ok(z.re)
}

fn cmd_diff(file: &std::path::Path, method: Method, at: &[String], terms: usize) -> CmdResult {
    let poly = read_poly(file)?;
    let points = at
        .iter()
        .map(|s| parse_point(s))
        .collect::<Result<Vec<_>, _>>()?;
    let boas = match (&poly, method) {
        (Polynomial::ExpSum(f), Method::Boas) => Some(boas_derivative(f, terms)?),
        (_, Method::Boas) => return Err(UsageError("boas needs expsum input".into())),
        (Polynomial::ExpSum(_), Method::Riesz | Method::Kernel) => {
            return Err(UsageError(
                "expsum input supports direct and boas only".into(),
            ))
        }
        _ => None,
    };
    let riesz = match (&poly, method) {
        (Polynomial::Trig(t), Method::Riesz) => Some(riesz_measure(t.degree())?),
        (Polynomial::Alg(p), Method::Riesz) => Some(riesz_measure(p.degree())?),
        _ => None,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (z, label) in points.into_iter().zip(at) {
        let (direct, value) = match &poly {
            Polynomial::Trig(t) => {
                let x = real_point(z, "trigonometric input")?;
                let direct = t.derivative().eval(x);
                let value = match method {
                    Method::Direct => direct,
                    Method::Riesz => riesz.as_ref().expect("built").convolve(t, x),
                    // The kernel gives d/dz; d/dx = i z d/dz.
                    Method::Kernel => {
                        let xi = C64::cis(x);
                        C64::new(0.0, 1.0) * xi * trig_deriv_via_kernel(t, xi)?
                    }
                    Method::Boas => unreachable!(),
                };
                (direct, value)
            }
            Polynomial::Alg(p) => match method {
                Method::Riesz => {
                    // Angle on the circle: d/dx P(e^{ix}).
                    let x = real_point(z, "riesz")?;
                    let t = p.to_trig();
                    let direct = t.derivative().eval(x);
                    (direct, riesz.as_ref().expect("built").convolve(&t, x))
                }
                _ => {
                    let direct = p.derivative().eval(z);
                    let value = match method {
                        Method::Kernel => deriv_via_kernel(p, z)?,
                        _ => direct,
                    };
                    (direct, value)
                }
            },
            Polynomial::ExpSum(f) => {
                let x = real_point(z, "expsum input")?;
                let direct = f.derivative_at(x);
                let value = match &boas {
                    Some(b) => b.eval(x),
                    None => direct,
                };
                (direct, value)
            }
        };
        let mut line = format!("{label}\t{}", fmt_complex(value));
        if method != Method::Direct {
            line.push_str(&format!("\tresidual {}", fmt_num((value - direct).norm())));
            if let Some(b) = &boas {
                line.push_str(&format!("\tbound {}", fmt_num(b.error_bound())));
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    config: Option<PathBuf>,
    seed: Option<u64>,
    trials: Option<usize>,
    tol: Option<f64>,
    rho: Option<Vec<f64>>,
    out: Option<PathBuf>,
    shrink: Option<f64>,
) -> CmdResult {
    let mut cfg = match &config {
        Some(path) => SweepConfig::from_json(&fs::read_to_string(path)?)?,
        None => SweepConfig::default(),
    };
    if let Some(s) = seed {
        cfg.master_seed = s;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(t) = tol {
        cfg.tol = t;
    }
    if let Some(r) = rho {
        cfg.rho_list = r;
    }
    if let Some(s) = shrink {
        cfg.debug_bound_scale = Some(s);
    }
    if let Some(prefix) = &out {
        let p = prefix.display();
        cfg.out_jsonl = Some(format!("{p}.jsonl"));
        cfg.out_csv = Some(format!("{p}.csv"));
    }
    cfg.validate()?;
    let outcome = run_sweep(&cfg)?;
    if let Some(path) = &cfg.out_jsonl {
        outcome.write_jsonl(io::BufWriter::new(fs::File::create(path)?))?;
    }
    match &cfg.out_csv {
        Some(path) => outcome.write_csv(fs::File::create(path)?)?,
        None => outcome.write_csv(io::stdout().lock())?,
    }
    let total = outcome.records.len();
    let failed = outcome.failures().count();
    eprintln!("{} trials, {} failed", total, failed);
    if failed == 0 {
        return Ok(ExitCode::SUCCESS);
    }
    let stderr = io::stderr();
    let mut err = stderr.lock();
    for record in outcome.failures().take(5) {
        writeln!(err, "witness: {}", serde_json::to_string(record)?)?;
    }
    Ok(ExitCode::from(1))
}

fn cmd_constants(n: usize) -> CmdResult {
    if n < 1 {
        return Err(UsageError("--n must be >= 1".into()));
    }
    let odd = odd_reciprocal_square_sum(n);
    let partial: f64 = (1..=n)
        .rev()
        .map(|r| 1.0 / ((2 * r - 1) as f64).powi(2))
        .sum();
    let rows = [
        ("wiener", fmt_num(wiener_bound_constant(n))),
        ("besov_inf1", fmt_num(besov_inf1_bound_constant(n))),
        (
            "besov_inf1_from_k1",
            fmt_num(besov_inf1_bound_constant_from_one(n)),
        ),
        ("besov_111", fmt_num(besov_111_bound_constant(n))),
        (
            "besov_111_8n_over_pi",
            fmt_num(8.0 * n as f64 / std::f64::consts::PI),
        ),
        (
            "riesz_identity",
            format!("{:.12}", riesz_weight_identity(n)),
        ),
        ("euler_odd_ratio", fmt_num(odd)),
        ("pi2_over_8_partial", fmt_num(partial)),
        ("pi2_over_6_partial", fmt_num(4.0 * partial / 3.0)),
    ];
    for (name, value) in rows {
        println!("{name}\t{value}");
    }
    Ok(ExitCode::SUCCESS)
}
