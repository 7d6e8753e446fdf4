use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use rweis::arith::{
    dedekind_sum, dedekind_sum_naive, e_of, kronecker, parse_rational, Phase, Rational,
};
use rweis::cover::{CoverElement, Matrix2};
use rweis::eisenstein::{qexpansion, Cusp, EisensteinParams};
use rweis::eta::{eta_quotient_series, order_at_cusp};
use rweis::gamma::{gamma_reference, gamma_series, GammaArg, GammaRequest, Route};
use rweis::multiplier::{
    chi_general, chi_integer, chi_special, special_family_of, EtaQuotientSpec, PrimeLevelSpec,
};
use rweis::par::with_threads;
use rweis::verify::{self, IdentityReport};

const DEFAULT_C_MAX: u64 = 2000;

#[derive(Parser)]
#[command(
    name = "rweis",
    version,
    about = "Eisenstein series of rational weight on Gamma0(p), eta-quotient multipliers and Gamma-value series"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Bits of working precision for root-of-unity evaluation.
    #[arg(long, default_value_t = 53, global = true,
          value_parser = clap::value_parser!(u32).range(24..=53))]
    precision: u32,
    /// Largest modulus kept in the Eisenstein and Gamma series.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    c_max: Option<u64>,
    /// Worker threads; all cores when unset.
    #[arg(long, env = "RWEIS_THREADS", global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Dedekind sum s(h, k).
    Dedekind {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long)]
        k: i64,
        /// Sum the definition directly instead of using reciprocity.
        #[arg(long)]
        naive: bool,
    },
    /// Kronecker symbol (a|n).
    Kronecker {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Exact q-expansion of an eta quotient.
    Eta {
        #[command(flatten)]
        quotient: Quotient,
        /// Number of coefficients.
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Order of an eta quotient at the cusp a/c.
    Order {
        #[command(flatten)]
        quotient: Quotient,
        #[arg(long, allow_hyphen_values = true)]
        cusp: String,
    },
    /// Multiplier system value chi(g) as an element of Q/Z.
    Chi {
        #[command(flatten)]
        level: PrimeLevel,
        /// Matrix entries a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = Formula::General)]
        formula: Formula,
        /// Index of the attached root of unity in the cover.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        eps: i64,
    },
    /// Fourier coefficients of an Eisenstein series.
    Eis {
        #[command(flatten)]
        level: PrimeLevel,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value_t = CuspArg::Infty)]
        cusp: CuspArg,
        #[arg(long, default_value_t = 5)]
        n_max: u64,
    },
    /// Gamma(k) from an Eisenstein coefficient.
    Gamma {
        /// Rational "p/q" or a real number.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
        /// Coefficient index used by the route.
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// Two-point extrapolation in c_max (no guaranteed bound).
        #[arg(long)]
        extrapolate: bool,
    },
    /// Checks an identity numerically against its exact side.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Quotient {
    #[arg(long)]
    level: u64,
    /// Exponents as "n:r,n:r", for example "1:9,3:-3".
    #[arg(long, allow_hyphen_values = true)]
    exp: String,
}

#[derive(Args)]
struct PrimeLevel {
    #[arg(long)]
    p: u64,
    #[arg(long, allow_hyphen_values = true)]
    r1: String,
    #[arg(long, allow_hyphen_values = true)]
    rp: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    identity: Identity,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    n1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n_inf: Option<String>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    r1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rp: Option<String>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Random samples for the character checks.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    General,
    Special,
    Integer,
}

#[derive(Clone, Copy, ValueEnum)]
enum CuspArg {
    Infty,
    One,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    P2,
    P3,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Thm71,
    Thm72,
    Carlitz,
    Classical,
    GammaExamples,
    Kloosterman,
    Characters,
}

/// Usage or parameter error, reported on stderr with exit code 2.
struct Failure(String);

impl From<rweis::Error> for Failure {
    fn from(e: rweis::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<Output, Failure>;

/// A command result: the JSON document plus its plain-text rendering.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            failed: false,
        }
    }
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn exponents(s: &str) -> Result<Vec<(u64, Rational)>, Failure> {
    s.split(',')
        .map(|item| {
            let (n, r) = item
                .split_once(':')
                .ok_or_else(|| Failure(format!("exponent {item:?} is not n:r")))?;
            let n = n
                .trim()
                .parse()
                .map_err(|_| Failure(format!("bad divisor {n:?}")))?;
            Ok((n, rational(r)?))
        })
        .collect()
}

fn prime_level(l: &PrimeLevel) -> Result<PrimeLevelSpec, Failure> {
    Ok(PrimeLevelSpec::new(
        l.p,
        rational(&l.r1)?,
        rational(&l.rp)?,
    )?)
}

fn phase_json(phase: &Phase, precision: u32) -> Result<Value, Failure> {
    let z = e_of(phase, precision)?;
    Ok(json!({"value": phase.value().to_string(), "re": z.re, "im": z.im, "err": z.err}))
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{} {:+}i", z.re, z.im)
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dedekind { h, k, naive } => {
            if *k < 1 {
                return Err(Failure(format!("k = {k} must be positive")));
            }
            let s = if *naive {
                dedekind_sum_naive(h.rem_euclid(*k), *k)
            } else {
                dedekind_sum(*h, *k)
            };
            Ok(Output::new(
                json!({"h": h, "k": k, "value": s.to_string()}),
                s.to_string(),
            ))
        }
        Command::Kronecker { a, n } => {
            let v = kronecker(*a, *n);
            Ok(Output::new(
                json!({"a": a, "n": n, "value": v}),
                v.to_string(),
            ))
        }
        Command::Eta { quotient, terms } => {
            if *terms == 0 {
                return Err(Failure("--terms must be positive".into()));
            }
            let spec = EtaQuotientSpec::new(quotient.level, exponents(&quotient.exp)?)?;
            let series = eta_quotient_series(&spec, terms - 1)?;
            let mut text = format!("offset {}", series.offset);
            for (i, c) in series.coeffs.iter().enumerate() {
                text.push_str(&format!("\n{i} {c}"));
            }
            let mut json = serde_json::to_value(&series).expect("series serializes");
            json["level"] = json!(spec.level());
            json["weight"] = json!(spec.weight().to_string());
            Ok(Output::new(json, text))
        }
        Command::Order { quotient, cusp } => {
            let spec = EtaQuotientSpec::new(quotient.level, exponents(&quotient.exp)?)?;
            let (a, c) = match cusp.split_once('/') {
                Some((a, c)) => (a.trim().parse().ok(), c.trim().parse().ok()),
                None => (cusp.trim().parse().ok(), Some(1)),
            };
            let (Some(a), Some(c)) = (a, c) else {
                return Err(Failure(format!("cusp {cusp:?} is not a/c")));
            };
            let order = order_at_cusp(&spec, a, c)?;
            Ok(Output::new(
                json!({"level": spec.level(), "cusp": format!("{a}/{c}"), "order": order.to_string()}),
                order.to_string(),
            ))
        }
        Command::Chi {
            level,
            matrix,
            formula,
            eps,
        } => {
            let spec = prime_level(level)?;
            let eta = spec.eta_spec();
            let entries: Vec<i64> = matrix
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure(format!("matrix {matrix:?} is not a,b,c,d")))?;
            let [a, b, c, d] = entries[..] else {
                return Err(Failure(format!("matrix {matrix:?} needs four entries")));
            };
            let m = Matrix2::new(a, b, c, d)?;
            let g = CoverElement::new(m, eta.cover_order(), *eps)?;
            let value = match formula {
                Formula::General => chi_general(&eta, &g)?,
                Formula::Integer => chi_integer(&spec, &g)?,
                Formula::Special => {
                    let (family, t) = special_family_of(level.p, &m).ok_or_else(|| {
                        Failure(format!("{m} belongs to none of the special families"))
                    })?;
                    // the closed form is stated for the canonical lift
                    let base = CoverElement::new(m, eta.cover_order(), 0)?;
                    let shift = chi_general(&eta, &g)?.value() - chi_general(&eta, &base)?.value();
                    Phase::new(chi_special(&spec, family, t)?.value() + shift)
                }
            };
            let formula = match formula {
                Formula::General => "general",
                Formula::Special => "special",
                Formula::Integer => "integer",
            };
            let json = json!({
                "p": level.p,
                "r1": spec.r1.to_string(),
                "rp": spec.rp.to_string(),
                "matrix": [a, b, c, d],
                "eps": eps,
                "formula": formula,
                "chi": phase_json(&value, cli.precision)?,
            });
            Ok(Output::new(json, value.value().to_string()))
        }
        Command::Eis {
            level,
            k,
            cusp,
            n_max,
        } => {
            let spec = prime_level(level)?;
            let cusp = match cusp {
                CuspArg::Infty => Cusp::Infty,
                CuspArg::One => Cusp::One,
            };
            let c_max = cli.c_max.unwrap_or(DEFAULT_C_MAX);
            let params = EisensteinParams::new(spec, rational(k)?, cusp, c_max, cli.precision)?;
            let coeffs = qexpansion(&params, *n_max)?;
            let text = coeffs
                .iter()
                .map(|c| {
                    format!(
                        "{} {} (err {:e}, tail {:e})",
                        c.n,
                        complex_text(c.value.value()),
                        c.value.err,
                        c.tail_bound
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "p": params.spec.p,
                "r1": params.spec.r1.to_string(),
                "rp": params.spec.rp.to_string(),
                "k": params.k.to_string(),
                "cusp": params.cusp,
                "c_max": c_max,
                "coeffs": coeffs,
            });
            Ok(Output::new(json, text))
        }
        Command::Gamma {
            k,
            route,
            n,
            extrapolate,
        } => {
            let route = match route {
                RouteArg::P2 => Route::P2,
                RouteArg::P3 => Route::P3,
                RouteArg::Auto => Route::Auto,
            };
            let mut req = GammaRequest::new(
                GammaArg::parse(k)?,
                route,
                cli.c_max.unwrap_or(DEFAULT_C_MAX),
            );
            req.n_choice = *n;
            req.precision = cli.precision;
            req.extrapolate = *extrapolate;
            let result = gamma_series(&req)?;
            let reference = gamma_reference(&req.k, cli.precision)?;
            let mut json = serde_json::to_value(&result).expect("result serializes");
            json["reference"] = json!(reference.re);
            Ok(Output::new(json, complex_text(result.value.value())))
        }
        Command::Verify(args) => {
            let report = run_verify(cli, args)?;
            let mut text = String::new();
            for r in &report.rows {
                text.push_str(&format!(
                    "{} exact {} numeric {} residual {:e}{}\n",
                    r.n,
                    r.exact,
                    complex_text(Complex64::new(r.numeric_re, r.numeric_im)),
                    r.residual,
                    match (r.checked, r.ok) {
                        (false, _) => " (informational)",
                        (true, true) => "",
                        (true, false) => " FAIL",
                    }
                ));
            }
            text.push_str(&format!(
                "{}: {}",
                report.identity,
                serde_json::to_value(report.verdict)
                    .expect("verdict serializes")
                    .as_str()
                    .unwrap_or_default()
            ));
            let failed = !report.passed();
            let mut out = Output::new(
                serde_json::to_value(&report).expect("report serializes"),
                text,
            );
            out.failed = failed;
            Ok(out)
        }
    }
}

fn run_verify(cli: &Cli, a: &VerifyArgs) -> Result<IdentityReport, Failure> {
    let rat_or = |s: &Option<String>, default: &str| rational(s.as_deref().unwrap_or(default));
    let c_max = |default: u64| cli.c_max.unwrap_or(default);
    let n_max = a.n_max.unwrap_or(5);
    Ok(match a.identity {
        Identity::Thm71 => verify::verify_thm71(
            a.p.unwrap_or(3),
            &rat_or(&a.n1, "1")?,
            n_max,
            c_max(DEFAULT_C_MAX),
            a.tol.unwrap_or(1e-3),
        )?,
        Identity::Thm72 => verify::verify_thm72(
            a.p.unwrap_or(2),
            &rat_or(&a.n_inf, "1")?,
            n_max,
            c_max(DEFAULT_C_MAX),
            a.tol.unwrap_or(1e-3),
        )?,
        Identity::Carlitz => {
            verify::verify_carlitz(n_max, c_max(DEFAULT_C_MAX), a.tol.unwrap_or(1e-3))?
        }
        Identity::Classical => verify::verify_classical(
            a.p.unwrap_or(2),
            a.k.unwrap_or(4),
            &rat_or(&a.r1, "8")?,
            &rat_or(&a.rp, "8")?,
            a.n_max.unwrap_or(10),
            c_max(DEFAULT_C_MAX),
            a.tol.unwrap_or(1e-3),
        )?,
        Identity::GammaExamples => {
            verify::verify_gamma_examples(c_max(DEFAULT_C_MAX), a.tol.unwrap_or(1e-2))?
        }
        Identity::Kloosterman => {
            verify::verify_kloosterman(c_max(50), n_max, a.tol.unwrap_or(1e-12))?
        }
        Identity::Characters => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            verify::verify_characters(
                a.p.unwrap_or(11),
                &rat_or(&a.r1, "44/9")?,
                &rat_or(&a.rp, "-4/9")?,
                a.samples,
                &mut rng,
            )?
        }
    })
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn csv_table(rows: &[Value]) -> String {
    let mut header: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    if header.is_empty() {
        let mut out = String::from("index,value\n");
        for (i, v) in rows.iter().enumerate() {
            out.push_str(&format!("{i},{}\n", csv_field(v)));
        }
        return out;
    }
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let line: Vec<String> = header
            .iter()
            .map(|k| csv_field(r.get(k).unwrap_or(&Value::Null)))
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Tables come from the first array of the document (`rows`, `coeffs`), or
/// the whole document as a single row.
fn to_csv(v: &Value) -> String {
    if let Value::Object(m) = v {
        for key in ["rows", "coeffs"] {
            if let Some(Value::Array(rows)) = m.get(key) {
                return csv_table(rows);
            }
        }
        let flat: Map<String, Value> = m
            .iter()
            .flat_map(|(k, v)| match v {
                Value::Object(inner) => inner
                    .iter()
                    .map(|(ik, iv)| (format!("{k}_{ik}"), iv.clone()))
                    .collect::<Vec<_>>(),
                _ => vec![(k.clone(), v.clone())],
            })
            .collect();
        return csv_table(&[Value::Object(flat)]);
    }
    csv_table(std::slice::from_ref(v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.threads {
        Some(t) => with_threads(t as usize, || run(&cli)),
        None => run(&cli),
    };
    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json output")
                ),
                Format::Csv => print!("{}", to_csv(&out.json)),
                Format::Text => println!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
