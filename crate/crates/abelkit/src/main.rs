//! Command-line front end: series expansion, Abel values, inverses,
//! fractional iterates, normalization-offset reports, plot-data export, and
//! the reference-constants verification suite.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use abelkit::bigfloat::{self, Bf};
use abelkit::catalog::{BaseFunction, Catalog};
use abelkit::solver;
use abelkit::eval::{self, EvalError};
use abelkit::limit;
use abelkit::rational::{parse_rational, Rational};
use abelkit::reference;

#[derive(Parser)]
#[command(
    name = "abelkit",
    about = "Abel-equation toolkit: series solver, fractional iterates, normalization offsets",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DigitsOpt {
    /// Decimal digits after the point (display is truncated, not rounded).
    #[arg(long, default_value_t = 50)]
    digits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// List the function catalog.
    List {
        #[arg(long)]
        csv: bool,
    },
    /// Print the Julia series, its reciprocal, and the Abel expansion as exact fractions.
    Expand {
        function: String,
        /// Truncation parameter K of the series solver.
        #[arg(long, default_value_t = 16)]
        terms: u32,
        /// Family parameter for pow-p.
        #[arg(long, value_name = "RAT")]
        p: Option<String>,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate the Abel function ("xexp" gives the piecewise x·e^x solution).
    Eval {
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        digits: DigitsOpt,
        #[arg(long, value_name = "RAT")]
        p: Option<String>,
    },
    /// Invert the Abel function: find z with G(z) = y on the principal branch.
    Inverse {
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        digits: DigitsOpt,
        #[arg(long, value_name = "RAT")]
        p: Option<String>,
    },
    /// Fractional iterate θ^[t](x).
    Iterate {
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        digits: DigitsOpt,
        #[arg(long, value_name = "RAT")]
        p: Option<String>,
    },
    /// Half-iterate; targets: any catalog map, plus "xexp" (x·e^x) and
    /// "x-plus-inv" (x + 1/x).
    Half {
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        digits: DigitsOpt,
    },
    /// Offset between the series-normalized and limit-normalized Abel values.
    Delta {
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, default_value_t = 65536)]
        nmax: u64,
        #[arg(long, value_name = "RAT")]
        p: Option<String>,
    },
    /// Principal Abel value by sequence extrapolation.
    Ml {
        function: String,
        x: String,
        #[arg(long, default_value_t = 65536)]
        nmax: u64,
        #[arg(long, value_name = "RAT")]
        p: Option<String>,
    },
    /// Emit CSV samples (x, θ(x), θ^[1/2](x)); target "f67" emits (x, f67(x)).
    Plot {
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        min: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        max: Option<String>,
        #[arg(long, default_value_t = 21)]
        samples: u32,
        #[command(flatten)]
        digits: DigitsOpt,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check every reference constant and exact series table; exit 0 iff all pass.
    Verify {
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help/version are not usage errors.
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(CliError::Numeric(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Numeric(String),
    Io(std::io::Error),
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<solver::SolverError> for CliError {
    fn from(e: solver::SolverError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Numeric CLI argument: exact rational, decimal, or a rational multiple of π.
enum NumArg {
    Rational(Rational),
    PiMultiple(Rational),
}

impl NumArg {
    fn parse(s: &str) -> Option<NumArg> {
        let t = s.trim();
        if let Some(idx) = t.find("pi") {
            let (pre, post) = (&t[..idx], &t[idx + 2..]);
            let mut mult = match pre {
                "" | "+" => Rational::from_integer(1.into()),
                "-" => Rational::from_integer((-1).into()),
                _ => parse_rational(pre)?,
            };
            match post.strip_prefix('/') {
                Some(den) => {
                    let d = parse_rational(den)?;
                    if num_traits::Zero::is_zero(&d) {
                        return None;
                    }
                    mult /= d;
                }
                None if post.is_empty() => {}
                None => return None,
            }
            return Some(NumArg::PiMultiple(mult));
        }
        parse_rational(t).map(NumArg::Rational)
    }

    fn to_bf(&self, p: usize) -> Bf {
        match self {
            NumArg::Rational(r) => bigfloat::from_rational(r, p),
            NumArg::PiMultiple(m) => {
                bigfloat::mul(&bigfloat::pi(p + 32), &bigfloat::from_rational(m, p + 32), p)
            }
        }
    }
}

fn parse_num(label: &str, s: &str) -> Result<NumArg, CliError> {
    NumArg::parse(s).ok_or_else(|| CliError::Usage(format!("cannot parse {} value '{}'", label, s)))
}

fn lookup(name: &str, p: &Option<String>) -> Result<BaseFunction, CliError> {
    if name == "pow-p" {
        let raw = p
            .as_ref()
            .ok_or_else(|| CliError::Usage("pow-p requires --p <rational>".into()))?;
        let param = parse_rational(raw)
            .filter(|v| num_traits::Signed::is_positive(v))
            .ok_or_else(|| CliError::Usage(format!("invalid family parameter '{}'", raw)))?;
        return Ok(Catalog::pow_p(param));
    }
    Catalog::get(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown function '{}'; see `abelkit list` (family: pow-p --p <rational>)",
            name
        ))
    })
}

fn write_output(path: &Option<String>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::List { csv } => cmd_list(csv),
        Command::Expand {
            function,
            terms,
            p,
            csv,
            out,
        } => cmd_expand(&function, terms, &p, csv, &out),
        Command::Eval {
            function,
            x,
            digits,
            p,
        } => cmd_eval(&function, &x, digits.digits, &p),
        Command::Inverse {
            function,
            y,
            digits,
            p,
        } => cmd_inverse(&function, &y, digits.digits, &p),
        Command::Iterate {
            function,
            t,
            x,
            digits,
            p,
        } => cmd_iterate(&function, &t, &x, digits.digits, &p),
        Command::Half { target, x, digits } => cmd_half(&target, &x, digits.digits),
        Command::Delta {
            function,
            x,
            nmax,
            p,
        } => cmd_delta(&function, &x, nmax, &p),
        Command::Ml {
            function,
            x,
            nmax,
            p,
        } => cmd_ml(&function, &x, nmax, &p),
        Command::Plot {
            target,
            min,
            max,
            samples,
            digits,
            out,
        } => cmd_plot(&target, &min, &max, samples, digits.digits, &out),
        Command::Verify { digits, csv } => cmd_verify(digits, csv),
    }
}

fn cmd_list(csv: bool) -> Result<(), CliError> {
    if csv {
        println!("name,tau,gamma,basin,delta_conjecture,kindred");
        for f in Catalog::all() {
            println!(
                "{},{},{},\"{}\",\"{}\",{}",
                f.name(),
                f.tau(),
                f.gamma(),
                f.basin_top(),
                f.delta_conjecture()
                    .map(|d| d.to_string())
                    .unwrap_or_default(),
                f.kindred_partner().unwrap_or("")
            );
        }
        println!("pow-p,1,-p,\"(0, inf)\",\"((1-p)/2p)*ln(p)\",");
    } else {
        println!(
            "{:<16} {:>3} {:>6}  {:<9} {:<18} {}",
            "name", "tau", "gamma", "basin", "delta conjecture", "kindred"
        );
        for f in Catalog::all() {
            println!(
                "{:<16} {:>3} {:>6}  {:<9} {:<18} {}",
                f.name(),
                f.tau(),
                f.gamma().to_string(),
                f.basin_top().to_string(),
                f.delta_conjecture()
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "-".into()),
                f.kindred_partner().unwrap_or("-")
            );
        }
        println!(
            "{:<16} {:>3} {:>6}  {:<9} {:<18} {}",
            "pow-p --p <q>",
            1,
            "-p",
            "(0, inf)",
            "((1-p)/2p)*ln(p)",
            "-"
        );
    }
    Ok(())
}

fn cmd_expand(
    name: &str,
    terms: u32,
    p: &Option<String>,
    csv: bool,
    out: &Option<String>,
) -> Result<(), CliError> {
    let base = lookup(name, p)?;
    let ej = solver::julia_series(&base, terms)?;
    let mut content = String::new();
    if csv {
        content.push_str("part,exponent,numerator,denominator\n");
        for (e, c) in ej.lambda.iter() {
            content.push_str(&format!("lambda,{},{},{}\n", e, c.numer(), c.denom()));
        }
        for (e, c) in ej.gprime.iter() {
            content.push_str(&format!("gprime,{},{},{}\n", e, c.numer(), c.denom()));
        }
        let a = &ej.abel;
        content.push_str(&format!(
            "g,{},{},{}\n",
            -a.tau,
            a.pole_coefficient.numer(),
            a.pole_coefficient.denom()
        ));
        content.push_str(&format!(
            "g_log,0,{},{}\n",
            a.log_coefficient.numer(),
            a.log_coefficient.denom()
        ));
        for (e, c) in a.taylor.iter() {
            content.push_str(&format!("g,{},{},{}\n", e, c.numer(), c.denom()));
        }
    } else {
        let published = if base.presentation_sign() < 0 { "-g" } else { "g" };
        content.push_str(&format!("lambda(x) = {}\n", ej.lambda.to_text()));
        content.push_str(&format!("{}'(x) = {}\n", published, ej.gprime.to_text()));
        content.push_str(&format!("{}(x) = {}\n", published, ej.abel.to_text()));
    }
    write_output(out, &content)
}

fn cmd_eval(name: &str, x: &str, digits: u32, p: &Option<String>) -> Result<(), CliError> {
    let pb = bigfloat::bits_for_digits(digits + 12);
    let xv = parse_num("--x", x)?.to_bf(pb);
    if name == "xexp" {
        let v = eval::f67(&xv, digits)?;
        println!("{}", bigfloat::decimal_truncated(&v, digits as usize));
        return Ok(());
    }
    if name == "x-plus-inv" {
        // Abel solution for x + 1/x through the conjugacy y = 1/x.
        let base = Catalog::x_over_1px2();
        let y = bigfloat::recip(&xv, pb);
        let r = eval::abel_value(&base, &y, digits)?;
        println!("{}", bigfloat::decimal_truncated(&r.value, digits as usize));
        println!(
            "error_estimate: {}  n: {}  K: {}",
            bigfloat::to_sci_string(&r.error_estimate, 3),
            r.n_used,
            r.k_used
        );
        return Ok(());
    }
    let base = lookup(name, p)?;
    let r = eval::abel_value(&base, &xv, digits)?;
    println!("{}", bigfloat::decimal_truncated(&r.value, digits as usize));
    println!(
        "error_estimate: {}  n: {}  K: {}",
        bigfloat::to_sci_string(&r.error_estimate, 3),
        r.n_used,
        r.k_used
    );
    Ok(())
}

fn cmd_inverse(name: &str, y: &str, digits: u32, p: &Option<String>) -> Result<(), CliError> {
    let base = lookup(name, p)?;
    let pb = bigfloat::bits_for_digits(2 * digits + 30);
    let yv = parse_num("--y", y)?.to_bf(pb);
    let z = eval::abel_inverse(&base, &yv, digits)?;
    println!("{}", bigfloat::decimal_truncated(&z, digits as usize));
    Ok(())
}

fn cmd_iterate(
    name: &str,
    t: &str,
    x: &str,
    digits: u32,
    p: &Option<String>,
) -> Result<(), CliError> {
    let base = lookup(name, p)?;
    let tv = match parse_num("--t", t)? {
        NumArg::Rational(r) => r,
        NumArg::PiMultiple(_) => {
            return Err(CliError::Usage("iteration order t must be rational".into()))
        }
    };
    let pb = bigfloat::bits_for_digits(2 * digits + 30);
    let xv = parse_num("--x", x)?.to_bf(pb);
    let z = eval::fractional_iterate(&base, &tv, &xv, digits)?;
    println!("{}", bigfloat::decimal_truncated(&z, digits as usize));
    Ok(())
}

fn cmd_half(target: &str, x: &str, digits: u32) -> Result<(), CliError> {
    let pb = bigfloat::bits_for_digits(2 * digits + 30);
    let xv = parse_num("--x", x)?.to_bf(pb);
    let z = match target {
        "xexp" => eval::xexp_half(&xv, digits)?,
        "x-plus-inv" => eval::xplusinv_half(&xv, digits)?,
        _ => {
            let base = lookup(target, &None)?;
            let half = Rational::new(1.into(), 2.into());
            eval::fractional_iterate(&base, &half, &xv, digits)?
        }
    };
    println!("{}", bigfloat::decimal_truncated(&z, digits as usize));
    Ok(())
}

fn cmd_delta(
    name: &str,
    x: &Option<String>,
    nmax: u64,
    p: &Option<String>,
) -> Result<(), CliError> {
    let base = lookup(name, p)?;
    let pb = bigfloat::bits_for_digits(90);
    let xv = match x {
        Some(s) => parse_num("--x", s)?.to_bf(pb),
        None => base.sample_point().to_bf(pb),
    };
    let report = limit::delta_estimate(&base, &xv, nmax)?;
    print!("{}", report);
    Ok(())
}

fn cmd_ml(name: &str, x: &str, nmax: u64, p: &Option<String>) -> Result<(), CliError> {
    let base = lookup(name, p)?;
    let pb = bigfloat::bits_for_digits(90);
    let xv = parse_num("x", x)?.to_bf(pb);
    let (est, bar) = limit::ml_value(&base, &xv, nmax, limit::ML_MODEL_ORDER)?;
    println!(
        "{} +/- {}",
        bigfloat::decimal_truncated(&est, 20),
        bigfloat::to_sci_string(&bar, 3)
    );
    Ok(())
}

fn cmd_plot(
    target: &str,
    min: &Option<String>,
    max: &Option<String>,
    samples: u32,
    digits: u32,
    out: &Option<String>,
) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Usage("need at least 2 samples".into()));
    }
    let digits = digits.min(40);
    let pb = bigfloat::bits_for_digits(2 * digits + 30);
    let parse_or = |opt: &Option<String>, dflt: f64| -> Result<f64, CliError> {
        match opt {
            Some(s) => Ok(bigfloat::to_f64(&parse_num("--min/--max", s)?.to_bf(96))),
            None => Ok(dflt),
        }
    };
    let mut content = String::new();
    match target {
        "f67" => {
            // The Abel solution on both branches of x·e^x; 0 is excluded.
            let lo = parse_or(min, -2.0)?;
            let hi = parse_or(max, 2.0)?;
            content.push_str("x,f67\n");
            for i in 0..samples {
                let xf = lo + (hi - lo) * (i as f64) / ((samples - 1) as f64);
                if xf.abs() < 0.05 {
                    continue;
                }
                let xv = bigfloat::parse_decimal(&format!("{:.12}", xf), pb);
                let v = eval::f67(&xv, digits)?;
                content.push_str(&format!(
                    "{:.6},{}\n",
                    xf,
                    bigfloat::decimal_truncated(&v, digits as usize)
                ));
            }
        }
        "xexp" | "x-plus-inv" | _ => {
            let composite = matches!(target, "xexp" | "x-plus-inv");
            let base = if composite { None } else { Some(lookup(target, &None)?) };
            let (dlo, dhi) = match target {
                "xexp" => (-2.0, 1.0),
                "x-plus-inv" => (0.4, 3.0),
                _ => (0.05, 2.0),
            };
            let lo = parse_or(min, dlo)?;
            let hi = parse_or(max, dhi)?;
            content.push_str("x,theta,half_iterate\n");
            let half = Rational::new(1.into(), 2.into());
            for i in 0..samples {
                let xf = lo + (hi - lo) * (i as f64) / ((samples - 1) as f64);
                let xv = bigfloat::parse_decimal(&format!("{:.12}", xf), pb);
                let (theta, h) = match target {
                    "xexp" => {
                        if xf.abs() < 1e-9 {
                            (bigfloat::from_i64(0, pb), bigfloat::from_i64(0, pb))
                        } else {
                            let theta = bigfloat::mul(&xv, &bigfloat::exp(&xv, pb), pb);
                            (theta, eval::xexp_half(&xv, digits)?)
                        }
                    }
                    "x-plus-inv" => {
                        let theta = bigfloat::add(&xv, &bigfloat::recip(&xv, pb), pb);
                        (theta, eval::xplusinv_half(&xv, digits)?)
                    }
                    _ => {
                        let base = base.as_ref().expect("catalog target");
                        let theta = base.eval_forward(&xv, pb)?;
                        (theta, eval::fractional_iterate(base, &half, &xv, digits)?)
                    }
                };
                content.push_str(&format!(
                    "{:.6},{},{}\n",
                    xf,
                    bigfloat::decimal_truncated(&theta, digits as usize),
                    bigfloat::decimal_truncated(&h, digits as usize)
                ));
            }
        }
    }
    write_output(out, &content)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckRow {
    name: String,
    expected: String,
    computed: String,
    matched: usize,
    pass: bool,
}

fn check_series_tables() -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for table in reference::series_tables() {
        let base = Catalog::get(table.fn_name).expect("catalog entry");
        let ej = match solver::julia_series(&base, 20) {
            Ok(e) => e,
            Err(err) => {
                rows.push(CheckRow {
                    name: format!("exact {}", table.fn_name),
                    expected: "series".into(),
                    computed: err.to_string(),
                    matched: 0,
                    pass: false,
                });
                continue;
            }
        };
        let mut all = true;
        let mut count = 0usize;
        let mut mismatch = String::new();
        let mut check = |part: &str, e: i64, expect: Rational, got: Option<Rational>| {
            count += 1;
            if got.as_ref() != Some(&expect) {
                all = false;
                if mismatch.is_empty() {
                    mismatch = format!(
                        "{} x^{}: {} != {}",
                        part,
                        e,
                        got.map(|g| g.to_string()).unwrap_or_else(|| "?".into()),
                        expect
                    );
                }
            }
        };
        for (e, n, d) in table.lambda {
            check(
                "lambda",
                *e,
                reference::to_rational(*n, *d),
                ej.lambda.coefficient_at(*e).ok(),
            );
        }
        for (e, n, d) in table.gprime {
            check(
                "gprime",
                *e,
                reference::to_rational(*n, *d),
                ej.gprime.coefficient_at(*e).ok(),
            );
        }
        check(
            "g pole",
            -base.tau(),
            reference::to_rational(table.g_pole.0, table.g_pole.1),
            Some(ej.abel.pole_coefficient.clone()),
        );
        check(
            "g log",
            0,
            reference::to_rational(table.g_log.0, table.g_log.1),
            Some(ej.abel.log_coefficient.clone()),
        );
        for (e, n, d) in table.g_taylor {
            check(
                "g",
                *e,
                reference::to_rational(*n, *d),
                ej.abel.taylor.coefficient_at(*e).ok(),
            );
        }
        rows.push(CheckRow {
            name: format!("exact {}", table.fn_name),
            expected: format!("{} fractions", count),
            computed: if all {
                "all equal".into()
            } else {
                mismatch
            },
            matched: if all { count } else { 0 },
            pass: all,
        });
    }
    rows
}

fn ref_arg_to_bf(arg: reference::RefArg, p: usize) -> Bf {
    match arg {
        reference::RefArg::Rat(n, d) => {
            bigfloat::from_rational(&Rational::new(n.into(), d.into()), p)
        }
        reference::RefArg::HalfPi => {
            bigfloat::div(&bigfloat::pi(p + 32), &bigfloat::from_i64(2, p + 32), p)
        }
    }
}

fn digit_row(name: &str, expected: &str, computed: String, need: usize) -> CheckRow {
    let matched = reference::matching_digits(expected, &computed);
    CheckRow {
        name: name.into(),
        expected: expected.chars().take(need + 2).collect(),
        computed,
        matched,
        pass: matched >= need,
    }
}

fn check_abel_constants(digits: u32) -> Vec<CheckRow> {
    use rayon::prelude::*;
    reference::ABEL_CONSTANTS
        .par_iter()
        .map(|c| {
            let p = bigfloat::bits_for_digits(digits + 12);
            let base = Catalog::get(c.fn_name).expect("catalog entry");
            let x = ref_arg_to_bf(c.arg, p);
            match eval::abel_value(&base, &x, digits + 5) {
                Ok(r) => digit_row(
                    c.label,
                    c.value,
                    bigfloat::decimal_truncated(&r.value, digits as usize + 5),
                    digits as usize,
                ),
                Err(e) => CheckRow {
                    name: c.label.into(),
                    expected: c.value.chars().take(digits as usize).collect(),
                    computed: e.to_string(),
                    matched: 0,
                    pass: false,
                },
            }
        })
        .collect()
}

fn check_half_constants(digits: u32) -> Vec<CheckRow> {
    use rayon::prelude::*;
    reference::HALF_CONSTANTS
        .par_iter()
        .map(|c| {
            let p = bigfloat::bits_for_digits(2 * digits + 30);
            let x = bigfloat::from_rational(&Rational::new(c.arg.0.into(), c.arg.1.into()), p);
            let result = match c.target {
                reference::HalfTarget::XExp => eval::xexp_half(&x, digits + 4),
                reference::HalfTarget::XPlusInv => eval::xplusinv_half(&x, digits + 4),
                reference::HalfTarget::Arcsinh => {
                    let base = Catalog::arcsinh();
                    let half = Rational::new(1.into(), 2.into());
                    eval::fractional_iterate(&base, &half, &x, digits + 4)
                }
            };
            match result {
                Ok(v) => digit_row(
                    c.label,
                    c.value,
                    bigfloat::decimal_truncated(&v, digits as usize + 4),
                    digits as usize,
                ),
                Err(e) => CheckRow {
                    name: c.label.into(),
                    expected: c.value.chars().take(digits as usize).collect(),
                    computed: e.to_string(),
                    matched: 0,
                    pass: false,
                },
            }
        })
        .collect()
}

fn check_principal_constants(digits: u32) -> Vec<CheckRow> {
    use rayon::prelude::*;
    reference::PRINCIPAL_CONSTANTS
        .par_iter()
        .map(|c| {
            let p = bigfloat::bits_for_digits(digits + 15);
            let base = Catalog::get(c.fn_name).expect("catalog entry");
            let x = ref_arg_to_bf(c.arg, p);
            let run = || -> Result<Bf, EvalError> {
                let g = eval::abel_value(&base, &x, digits + 8)?;
                let offset = limit::delta_hypothesis(&base)?.numeric(p);
                Ok(bigfloat::sub(&g.value, &offset, p))
            };
            match run() {
                Ok(v) => digit_row(
                    c.label,
                    c.value,
                    bigfloat::decimal_truncated(&v, digits as usize + 5),
                    digits as usize,
                ),
                Err(e) => CheckRow {
                    name: c.label.into(),
                    expected: c.value.chars().take(digits as usize).collect(),
                    computed: e.to_string(),
                    matched: 0,
                    pass: false,
                },
            }
        })
        .collect()
}

fn cmd_verify(digits: u32, csv: bool) -> Result<(), CliError> {
    if digits > 60 {
        return Err(CliError::Usage(
            "verify references carry 100 digits; use --digits <= 60".into(),
        ));
    }
    if let Ok(threads) = std::env::var("ABELKIT_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let mut rows = check_series_tables();
    rows.extend(check_abel_constants(digits));
    rows.extend(check_half_constants(digits.min(40)));
    rows.extend(check_principal_constants(digits.min(45)));
    let mut all_pass = true;
    if csv {
        println!("name,expected,computed,matched_digits,status");
        for r in &rows {
            all_pass &= r.pass;
            println!(
                "\"{}\",\"{}\",\"{}\",{},{}",
                r.name,
                r.expected,
                r.computed,
                r.matched,
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
    } else {
        for r in &rows {
            all_pass &= r.pass;
            println!(
                "{:<30} matched {:>3}   {}",
                r.name,
                r.matched,
                if r.pass { "PASS" } else { "FAIL" }
            );
            if !r.pass {
                println!("    expected: {}", r.expected);
                println!("    computed: {}", r.computed);
            }
        }
    }
    if all_pass {
        println!("verify: all {} checks passed", rows.len());
        Ok(())
    } else {
        println!("verify: FAILURES present");
        Err(CliError::Numeric("verification failures".into()))
    }
}
