//! Argument definitions and command execution. Every command renders into
//! an [`Outcome`]; only `main` touches the process streams.

use clap::{Args, Parser, Subcommand, ValueEnum};
use extcalc::em::{build_lagrangian, derive_equations, dual_lagrangian, dual_theory, wave_form, MaxwellConfig};
use extcalc::properties::{run_suite, PropertyResult, Suite};
use extcalc::scalar::{parse_rational, Rational};
use extcalc::variational::FieldEquation;
use extcalc::{Error, Metric};
use serde_json::json;

use crate::doc::{EquationDoc, MetricDoc};
use crate::expr::eval_text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "extcalc", version, about = "Exact exterior calculus on flat (k,n) spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive field equations from a preset Lagrangian density.
    Derive(DeriveArgs),
    /// Run the randomized identity battery.
    Verify(VerifyArgs),
    /// Evaluate an algebra expression and print its canonical form.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Maxwell,
    Dual,
    Electrostatics,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    Calculus,
    Variational,
    Em,
    All,
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).ok_or_else(|| format!("expected a rational p or p/q, got {text:?}"))
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Grade of the field strength. The potential has grade r-1 for
    /// maxwell and electrostatics, r+1 for dual.
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum)]
    pub preset: Preset,
    /// Proca mass.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub m: Option<Rational>,
    /// Gauge-fixing parameter.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub xi: Option<Rational>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Print the wave form instead of the derived equation (needs --xi).
    #[arg(long)]
    pub wave: bool,
    /// Print the Lagrangian density instead of equations.
    #[arg(long, conflicts_with = "wave")]
    pub lagrangian: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Exit status plus everything destined for stdout and stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Derive(args) => derive(args).unwrap_or_else(Outcome::usage),
        Command::Verify(args) => verify(args),
        Command::Eval(args) => eval(args).unwrap_or_else(Outcome::usage),
    }
}

fn render_equations(equations: &[FieldEquation], format: Format) -> String {
    let mut out = String::new();
    for eq in equations {
        match format {
            Format::Text => out.push_str(&eq.to_string()),
            Format::Json => out.push_str(&EquationDoc::from_equation(eq).to_json()),
        }
        out.push('\n');
    }
    out
}

fn maxwell_config(args: &DeriveArgs, metric: Metric) -> extcalc::Result<MaxwellConfig> {
    let mut cfg = match args.preset {
        Preset::Electrostatics => {
            if args.r != 1 {
                return Err(Error::Domain(format!("electrostatics has a scalar potential, so r must be 1 (got {})", args.r)));
            }
            MaxwellConfig::electrostatics(metric)?
        }
        _ => MaxwellConfig::new(metric, args.r)?,
    };
    if let Some(m) = &args.m {
        cfg = cfg.with_mass(m.clone())?;
    }
    if let Some(xi) = &args.xi {
        cfg = cfg.with_xi(xi.clone())?;
    }
    Ok(cfg)
}

pub fn derive(args: &DeriveArgs) -> extcalc::Result<Outcome> {
    let metric = Metric::new(args.k, args.n)?;
    if args.preset == Preset::Dual {
        if args.m.is_some() || args.xi.is_some() || args.wave {
            return Err(Error::Domain("--m, --xi and --wave apply only to the maxwell and electrostatics presets".into()));
        }
        let s = args.r + 1;
        if args.lagrangian {
            return Ok(Outcome::ok(lagrangian_text(&dual_lagrangian(metric, s)?, args.format)));
        }
        let (nonhomogeneous, homogeneous) = dual_theory(metric, s)?;
        return Ok(Outcome::ok(render_equations(&[nonhomogeneous, homogeneous], args.format)));
    }
    let cfg = maxwell_config(args, metric)?;
    if args.lagrangian {
        return Ok(Outcome::ok(lagrangian_text(&build_lagrangian(&cfg), args.format)));
    }
    let eq = if args.wave { wave_form(&cfg)? } else { derive_equations(&cfg)? };
    Ok(Outcome::ok(render_equations(&[eq], args.format)))
}

fn lagrangian_text(l: &extcalc::variational::LagrangianDensity, format: Format) -> String {
    match format {
        Format::Text => format!("{l}\n"),
        Format::Json => {
            let metric = MetricDoc {
                k: l.metric().k(),
                n: l.metric().n(),
            };
            format!("{}\n", json!({ "metric": metric, "lagrangian": l.to_string() }))
        }
    }
}

fn suites(arg: SuiteArg) -> Vec<Suite> {
    match arg {
        SuiteArg::Algebra => vec![Suite::Algebra],
        SuiteArg::Calculus => vec![Suite::Calculus],
        SuiteArg::Variational => vec![Suite::Variational],
        SuiteArg::Em => vec![Suite::Em],
        SuiteArg::All => Suite::ALL.to_vec(),
    }
}

/// Runs the selected suites; results are ordered by property name.
pub fn verify_results(args: &VerifyArgs) -> Vec<PropertyResult> {
    let trials = usize::try_from(args.trials).unwrap_or(usize::MAX);
    let mut results: Vec<PropertyResult> = suites(args.suite)
        .into_iter()
        .flat_map(|s| run_suite(s, args.seed, trials))
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    results
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let results = verify_results(args);
    let mut out = String::new();
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {} cases={} failures={}\n", r.name, r.cases, r.failures));
        if let Some(example) = &r.counterexample {
            out.push_str(&format!("  counterexample: {example}\n"));
        }
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    out.push_str(&format!(
        "{passed}/{} properties passed (seed {}, trials {})\n",
        results.len(),
        args.seed,
        args.trials
    ));
    Outcome {
        code: if passed == results.len() { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout: out,
        stderr: String::new(),
    }
}

pub fn eval(args: &EvalArgs) -> extcalc::Result<Outcome> {
    let metric = Metric::new(args.k, args.n)?;
    let value = eval_text(&args.expr, metric)?;
    let text = match args.format {
        Format::Text => value.to_string(),
        Format::Json => {
            let terms: Vec<_> = value
                .terms()
                .iter()
                .map(|(list, coeff)| json!({ "blade": list.to_vec(), "coeff": coeff.to_string() }))
                .collect();
            json!({
                "metric": MetricDoc { k: args.k, n: args.n },
                "grade": value.grade(),
                "terms": terms,
                "text": value.to_string(),
            })
            .to_string()
        }
    };
    Ok(Outcome::ok(format!("{text}\n")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use extcalc::scalar::format_rational;

    fn run_args(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("extcalc").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn derive_presets() {
        let out = run_args(&["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--format", "text"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "d_| ( d^ A ) = J\n"));
        let out = run_args(&["derive", "--k", "0", "--n", "3", "--r", "1", "--preset", "electrostatics"]);
        assert_eq!(out.stdout, "d_| ( d^ phi ) = rho\n");
        let out = run_args(&["derive", "--k", "1", "--n", "3", "--r", "1", "--preset", "dual"]);
        assert_eq!(out.stdout, "d^ ( d_| Abar ) = Jbar\nd_| ( d_| Abar ) = 0\n");
        let out = run_args(&["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--m", "2", "--xi", "1/3"]);
        assert_eq!(out.stdout, "d_| ( d^ A ) + 4 * A = J + 3 * d^ ( d_| A )\n");
        let out = run_args(&["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--xi", "1", "--wave"]);
        assert_eq!(out.stdout, "-lap A = J\n");
        let out = run_args(&["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--lagrangian"]);
        assert_eq!(out.stdout, "-1/2 * (d^ A . d^ A) + (J . A)\n");
    }

    #[test]
    fn derive_rejects_invalid_configs() {
        for args in [
            &["derive", "--k", "1", "--n", "3", "--r", "5", "--preset", "maxwell"][..],
            &["derive", "--k", "1", "--n", "3", "--r", "0", "--preset", "maxwell"],
            &["derive", "--k", "1", "--n", "3", "--r", "4", "--preset", "dual"],
            &["derive", "--k", "0", "--n", "3", "--r", "2", "--preset", "electrostatics"],
            &["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--wave"],
            &["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "maxwell", "--xi", "0"],
            &["derive", "--k", "1", "--n", "3", "--r", "2", "--preset", "dual", "--m", "1"],
            &["derive", "--k", "9", "--n", "9", "--r", "2", "--preset", "maxwell"],
        ] {
            let out = run_args(args);
            assert_eq!(out.code, EXIT_USAGE, "{args:?}");
            assert!(out.stdout.is_empty() && out.stderr.starts_with("error: "), "{args:?}");
        }
    }

    #[test]
    fn json_output_is_one_document_per_line() {
        let out = run_args(&["derive", "--k", "1", "--n", "3", "--r", "1", "--preset", "dual", "--format", "json"]);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 2);
        for line in lines {
            EquationDoc::from_json(line).unwrap().to_equation().unwrap();
        }
    }

    #[test]
    fn eval_formats() {
        let out = run_args(&["eval", "--expr", "e[1] _| e[1,2]", "--k", "1", "--n", "3"]);
        assert_eq!(out.stdout, "-e[2]\n");
        let out = run_args(&["eval", "--expr", "-x0 ^ e[1]", "--k", "1", "--n", "3", "--format", "json"]);
        assert_eq!(
            out.stdout,
            "{\"grade\":1,\"metric\":{\"k\":1,\"n\":3},\"terms\":[{\"blade\":[1],\"coeff\":\"-x0\"}],\"text\":\"-x0 ^ e[1]\"}\n"
        );
        let out = run_args(&["eval", "--expr", "e[2,1]", "--k", "1", "--n", "3"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert_eq!(out.stderr, "error: parse error at offset 4: indices must be strictly increasing\n");
    }

    #[test]
    fn verify_small_run_is_deterministic() {
        let args = VerifyArgs {
            suite: SuiteArg::Em,
            seed: 7,
            trials: 3,
        };
        let first = verify(&args);
        assert_eq!(first.code, EXIT_OK, "{}", first.stdout);
        assert_eq!(first, verify(&args));
        assert!(first.stdout.lines().next().unwrap().starts_with("PASS em."));
    }

    #[test]
    fn rationals_print_canonically() {
        assert_eq!(format_rational(&rational_arg("4/6").unwrap()), "2/3");
        assert!(rational_arg("two").is_err());
    }
}
