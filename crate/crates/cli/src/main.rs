mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use barron_core::operators::SymbolSpec;
use barron_core::spectra::{barron_report, sobolev_report};
use barron_core::verify::{run_suite, SuiteConfig};
use barron_core::{
    bessel_potential, convolve_direct, convolve_spectral, forward, lp_norm, pseudo_diff, s_inf_norm, sp_norm,
    sup_norm, synthesize, BandlimitedFunction, FourierCoefficients, Gamma, GridFunction, GroupDescriptor, NormKind,
    PrecisionProfile, ValueSpaceDescriptor, Weight,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use io::{emit, load_input, parse, read_text, write_atomic, CliResult, Failure, Input};

const DEFAULT_SUITE: &str = include_str!("../configs/default_suite.json");

/// Fourier analysis, spectral norms and inequality checks on compact groups.
///
/// Exit codes: 0 success, 1 a required suite check failed, 2 input or
/// configuration error, 3 precision or band error.
#[derive(Parser, Debug)]
#[command(name = "barron", version)]
struct Cli {
    /// Tolerance profile for `suite`: finite_exact or quadrature.
    #[arg(long, global = true, env = "BARRON_PROFILE")]
    profile: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grid samples or a mode list to Fourier coefficients.
    Transform(Transform),
    /// Coefficients or a mode list to samples on the quadrature grid.
    Synth(Synth),
    /// Prints a norm of a coefficient, function or grid file as JSON.
    Norm(Norm),
    /// Applies a spectral operator.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// Runs the verification suite and writes a JSON report plus a CSV.
    Suite(Suite),
}

#[derive(Args, Debug)]
struct Files {
    /// Input JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Expect {
    /// Required group of the input, e.g. `torus`, `su2`, `cyclic:8`, `dihedral:4` or a JSON object.
    #[arg(long)]
    group: Option<String>,
    /// Required value space of the input, e.g. `l2:3`, `op:2:alg`, `scalar` or a JSON object.
    #[arg(long)]
    space: Option<String>,
}

#[derive(Args, Debug)]
struct Transform {
    #[command(flatten)]
    files: Files,
    #[command(flatten)]
    expect: Expect,
    /// Dual band of the output; defaults to the band of the input.
    #[arg(long)]
    band: Option<usize>,
}

#[derive(Args, Debug)]
struct Synth {
    #[command(flatten)]
    files: Files,
    #[command(flatten)]
    expect: Expect,
    /// Quadrature band of the output grid; defaults to the band of the input.
    #[arg(long)]
    band: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormName {
    Sp,
    #[value(name = "s_inf")]
    SInf,
    Barron,
    Sobolev,
    Lp,
    Sup,
}

#[derive(Args, Debug)]
struct Norm {
    #[command(flatten)]
    files: Files,
    #[command(flatten)]
    expect: Expect,
    #[arg(long, value_enum)]
    norm: NormName,
    #[command(flatten)]
    weight: WeightArgs,
    /// Exponent for `sp` and `lp`.
    #[arg(long)]
    p: Option<f64>,
    /// Band used when the input must be transformed or synthesized first.
    #[arg(long)]
    band: Option<usize>,
}

#[derive(Args, Debug)]
struct WeightArgs {
    /// `abs_n`, `sqrt_l_lplus1`, `constant:<c>`, a weight JSON object or `@file`.
    /// Defaults to `abs_n` on the torus and cyclic groups and `sqrt_l_lplus1` on SU(2).
    #[arg(long)]
    weight: Option<String>,
    /// Order `s`; overrides an `s` inside a JSON weight.
    #[arg(long)]
    s: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Op {
    /// Multiplies each block by `(1 + gamma^2)^s`.
    Bessel {
        #[command(flatten)]
        files: Files,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Multiplies each block by a scalar symbol read from `--in2`.
    Pseudodiff {
        #[command(flatten)]
        files: Files,
        /// Symbol JSON: `{"table":{"<label>":[re,im],...}}` or `{"builtin":"bessel","s":<real>}`.
        #[arg(long)]
        in2: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Convolution `f * g`; two grids convolve directly, otherwise blockwise.
    Convolve {
        #[command(flatten)]
        files: Files,
        /// Second operand.
        #[arg(long)]
        in2: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Suite {
    /// Suite configuration JSON; the bundled default when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path; the CSV goes next to it with extension `.csv`.
    #[arg(long)]
    out: PathBuf,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Replaces the configured groups; repeatable.
    #[arg(long)]
    group: Vec<String>,
    /// Replaces the configured bands; repeatable.
    #[arg(long)]
    band: Vec<usize>,
    /// Replaces the configured value spaces; repeatable.
    #[arg(long)]
    space: Vec<String>,
    /// Replaces the configured weights; repeatable.
    #[arg(long)]
    weight: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let profile = cli.profile.as_deref().map(str::parse::<PrecisionProfile>).transpose()?;
    match cli.command {
        Command::Transform(a) => transform(a).map(|_| 0),
        Command::Synth(a) => synth(a).map(|_| 0),
        Command::Norm(a) => norm(a).map(|_| 0),
        Command::Op { op } => operator(op).map(|_| 0),
        Command::Suite(a) => suite(a, profile),
    }
}

fn parse_group(s: &str) -> CliResult<GroupDescriptor> {
    let g = match s.split_once(':') {
        _ if s.trim_start().starts_with('{') => return parse(s, Path::new("--group")),
        None if s == "torus" => GroupDescriptor::Torus,
        None if s == "su2" => GroupDescriptor::Su2,
        Some(("cyclic", n)) => GroupDescriptor::Cyclic { n: parse_count(n, s)? },
        Some(("dihedral", n)) => GroupDescriptor::Dihedral { n: parse_count(n, s)? },
        _ => return Err(Failure::input(anyhow!("unknown group {s:?}"))),
    };
    g.validate()?;
    Ok(g)
}

fn parse_count(n: &str, whole: &str) -> CliResult<usize> {
    n.parse().map_err(|_| Failure::input(anyhow!("bad size in {whole:?}")))
}

fn parse_space(s: &str) -> CliResult<ValueSpaceDescriptor> {
    if s.trim_start().starts_with('{') {
        return parse(s, Path::new("--space"));
    }
    if s == "scalar" {
        return Ok(ValueSpaceDescriptor::scalar());
    }
    let parts: Vec<&str> = s.split(':').collect();
    let norm = match parts.first() {
        Some(&"l1") => NormKind::L1,
        Some(&"l2") => NormKind::L2,
        Some(&"linf") => NormKind::Linf,
        Some(&"op") => NormKind::Operator,
        _ => return Err(Failure::input(anyhow!("unknown value space {s:?}"))),
    };
    let dim = parts.get(1).ok_or_else(|| Failure::input(anyhow!("value space {s:?} needs a dimension")))?;
    let algebra = match parts.get(2) {
        None => false,
        Some(&"alg") if parts.len() == 3 => true,
        _ => return Err(Failure::input(anyhow!("unknown value space {s:?}"))),
    };
    Ok(ValueSpaceDescriptor::new(parse_count(dim, s)?, norm, algebra)?)
}

/// A weight string; JSON forms may carry their own `s`.
fn parse_weight(s: &str) -> CliResult<(Gamma, Option<f64>)> {
    let text = match s.strip_prefix('@') {
        Some(path) => read_text(Path::new(path))?,
        None => s.to_string(),
    };
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = parse(&text, Path::new("--weight"))?;
        if value.get("s").is_some() {
            let w: Weight = parse(&text, Path::new("--weight"))?;
            return Ok((w.gamma, Some(w.s)));
        }
        return Ok((parse(&text, Path::new("--weight"))?, None));
    }
    let gamma = match text.split_once(':') {
        None if text == "abs_n" => Gamma::AbsN,
        None if text == "sqrt_l_lplus1" => Gamma::SqrtLLPlus1,
        Some(("constant", c)) => match c.parse::<f64>() {
            Ok(c) if c.is_finite() && c >= 0.0 => Gamma::Constant(c),
            _ => return Err(Failure::input(anyhow!("constant weight must be a finite value >= 0, got {c:?}"))),
        },
        _ => return Err(Failure::input(anyhow!("unknown weight {text:?}"))),
    };
    Ok((gamma, None))
}

impl WeightArgs {
    fn resolve(&self, group: &GroupDescriptor) -> CliResult<Weight> {
        let (gamma, s) = match &self.weight {
            Some(w) => parse_weight(w)?,
            None => (default_gamma(group)?, None),
        };
        Ok(Weight::new(gamma, self.s.or(s).unwrap_or(0.0))?)
    }
}

fn default_gamma(group: &GroupDescriptor) -> CliResult<Gamma> {
    match group {
        GroupDescriptor::Torus | GroupDescriptor::Cyclic { .. } => Ok(Gamma::AbsN),
        GroupDescriptor::Su2 => Ok(Gamma::SqrtLLPlus1),
        GroupDescriptor::Dihedral { .. } => {
            Err(Failure::input(anyhow!("{group} has no builtin weight; pass --weight")))
        }
    }
}

impl Input {
    fn group(&self) -> GroupDescriptor {
        match self {
            Input::Grid(f) => f.group,
            Input::Coefficients(c) => c.group(),
            Input::Function(f) => f.group,
        }
    }

    fn space(&self) -> ValueSpaceDescriptor {
        match self {
            Input::Grid(f) => f.space,
            Input::Coefficients(c) => c.space,
            Input::Function(f) => f.space,
        }
    }

    fn check(&self, expect: &Expect) -> CliResult<()> {
        if let Some(g) = &expect.group {
            let want = parse_group(g)?;
            if want != self.group() {
                return Err(Failure::input(anyhow!("input is on {}, expected {want}", self.group())));
            }
        }
        if let Some(s) = &expect.space {
            let want = parse_space(s)?;
            if want != self.space() {
                return Err(Failure::input(anyhow!("input takes values in {}, expected {want}", self.space())));
            }
        }
        Ok(())
    }

    /// Coefficients on the dual of `band`, defaulting to the input's own band.
    fn coefficients(self, band: Option<usize>) -> CliResult<FourierCoefficients> {
        match self {
            Input::Coefficients(c) => match band {
                Some(b) if b != c.dual.band => {
                    let f = BandlimitedFunction::from_coefficients(&c);
                    Ok(f.coefficients(&c.group().truncated_dual(b))?)
                }
                _ => Ok(c),
            },
            Input::Function(f) => {
                let dual = f.group.truncated_dual(band.unwrap_or_else(|| f.band()));
                Ok(f.coefficients(&dual)?)
            }
            Input::Grid(f) => {
                let dual = f.group.truncated_dual(band.unwrap_or(f.rule.band));
                Ok(forward(&f, &dual)?)
            }
        }
    }

    /// Samples on the quadrature grid of `band`, defaulting to the input's own band.
    fn grid(self, band: Option<usize>) -> CliResult<GridFunction> {
        let f = match self {
            Input::Grid(g) if band.is_none_or(|b| b == g.rule.band) => return Ok(g),
            Input::Grid(g) => {
                let c = forward(&g, &g.group.truncated_dual(g.rule.band))?;
                BandlimitedFunction::from_coefficients(&c)
            }
            Input::Coefficients(c) => {
                let b = band.unwrap_or(c.dual.band);
                return Ok(synthesize(&BandlimitedFunction::from_coefficients(&c), &c.group().quadrature(b))?);
            }
            Input::Function(f) => f,
        };
        let b = band.unwrap_or_else(|| f.band());
        Ok(synthesize(&f, &f.group.quadrature(b))?)
    }
}

fn transform(a: Transform) -> CliResult<()> {
    let input = load_input(&a.files.input)?;
    input.check(&a.expect)?;
    if matches!(input, Input::Coefficients(_)) {
        return Err(Failure::input(anyhow!("{} already holds coefficients", a.files.input.display())));
    }
    emit(&input.coefficients(a.band)?, a.files.out.as_deref())
}

fn synth(a: Synth) -> CliResult<()> {
    let input = load_input(&a.files.input)?;
    input.check(&a.expect)?;
    if matches!(input, Input::Grid(_)) {
        return Err(Failure::input(anyhow!("{} already holds grid samples", a.files.input.display())));
    }
    emit(&input.grid(a.band)?, a.files.out.as_deref())
}

fn norm(a: Norm) -> CliResult<()> {
    let input = load_input(&a.files.input)?;
    input.check(&a.expect)?;
    let group = input.group();
    let need_p = || a.p.ok_or_else(|| Failure::input(anyhow!("--p is required for this norm")));
    let out = match a.norm {
        NormName::Sp => {
            let p = need_p()?;
            json!({"norm": "sp", "p": p, "value": sp_norm(&input.coefficients(a.band)?, p)?})
        }
        NormName::SInf => json!({"norm": "s_inf", "value": s_inf_norm(&input.coefficients(a.band)?)}),
        NormName::Barron | NormName::Sobolev => {
            let w = a.weight.resolve(&group)?;
            let c = input.coefficients(a.band)?;
            let (name, report) = match a.norm {
                NormName::Barron => ("barron", barron_report(&c, &w)?),
                _ => ("sobolev", sobolev_report(&c, &w)?),
            };
            json!({"norm": name, "s": w.s, "value": report.value, "per_irrep": report.per_irrep})
        }
        NormName::Lp => {
            let p = need_p()?;
            json!({"norm": "lp", "p": p, "value": lp_norm(&input.grid(a.band)?, p)?})
        }
        NormName::Sup => json!({"norm": "sup", "value": sup_norm(&input.grid(a.band)?)}),
    };
    emit(&out, a.files.out.as_deref())
}

fn operator(op: Op) -> CliResult<()> {
    match op {
        Op::Bessel { files, weight } => {
            let input = load_input(&files.input)?;
            let w = weight.resolve(&input.group())?;
            emit(&bessel_potential(&input.coefficients(None)?, &w.gamma, w.s)?, files.out.as_deref())
        }
        Op::Pseudodiff { files, in2, weight } => {
            let c = load_input(&files.input)?.coefficients(None)?;
            let spec: SymbolSpec = parse(&read_text(&in2)?, &in2)?;
            let gamma = match (&spec, &weight.weight) {
                (SymbolSpec::Bessel { .. }, _) | (_, Some(_)) => Some(weight.resolve(&c.group())?.gamma),
                _ => None,
            };
            let a = spec.resolve(&c.dual, gamma.as_ref())?;
            emit(&pseudo_diff(&c, &a)?, files.out.as_deref())
        }
        Op::Convolve { files, in2 } => match (load_input(&files.input)?, load_input(&in2)?) {
            (Input::Grid(f), Input::Grid(g)) => emit(&convolve_direct(&f, &g)?, files.out.as_deref()),
            (f, g) => {
                let fc = f.coefficients(None)?;
                let gc = g.coefficients(Some(fc.dual.band))?;
                emit(&convolve_spectral(&fc, &gc)?, files.out.as_deref())
            }
        },
    }
}

fn suite(a: Suite, profile: Option<PrecisionProfile>) -> CliResult<u8> {
    let mut config: SuiteConfig = match &a.config {
        Some(path) => parse(&read_text(path)?, path)?,
        None => parse(DEFAULT_SUITE, Path::new("bundled default_suite.json"))?,
    };
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    if let Some(p) = profile {
        config.precision_profile = p;
    }
    if !a.group.is_empty() {
        config.groups = a.group.iter().map(|g| parse_group(g)).collect::<CliResult<_>>()?;
    }
    if !a.band.is_empty() {
        config.bands = a.band.clone();
    }
    if !a.space.is_empty() {
        config.spaces = a.space.iter().map(|s| parse_space(s)).collect::<CliResult<_>>()?;
    }
    if !a.weight.is_empty() {
        config.weights = a.weight.iter().map(|w| parse_weight(w).map(|(g, _)| g)).collect::<CliResult<_>>()?;
    }
    let report = run_suite(&config)?;

    let mut text = serde_json::to_vec(&report).map_err(|e| Failure::input(anyhow!(e)))?;
    text.push(b'\n');
    write_atomic(&a.out, &text)?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv).map_err(|e| Failure::input(anyhow!(e)))?;
    write_atomic(&a.out.with_extension("csv"), &csv)?;

    let env = &report.environment;
    let c = &env.counts;
    eprintln!(
        "{} cases, {} functions, {} checks: {} passed, {} failed, {} required failures",
        c.cases, c.functions, c.checks, c.passed, c.failed, c.required_failed
    );
    for (scope, t) in [("abelian", &env.kappa_paper.abelian), ("nonabelian", &env.kappa_paper.nonabelian)] {
        eprintln!("kappa_paper on {scope} groups: {} of {} pass", t.passed, t.checks);
    }
    Ok(if report.all_required_pass() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_config_is_the_library_default() {
        let bundled: SuiteConfig = serde_json::from_str(DEFAULT_SUITE).unwrap();
        assert_eq!(bundled, SuiteConfig::default());
    }

    #[test]
    fn group_strings() {
        assert_eq!(parse_group("cyclic:8").unwrap(), GroupDescriptor::Cyclic { n: 8 });
        assert_eq!(parse_group("{\"kind\":\"dihedral\",\"n\":4}").unwrap(), GroupDescriptor::Dihedral { n: 4 });
        assert_eq!(parse_group("su2").unwrap(), GroupDescriptor::Su2);
        assert_eq!(parse_group("dihedral:2").unwrap_err().code, io::INPUT);
        assert!(parse_group("circle").is_err());
    }

    #[test]
    fn space_strings() {
        assert_eq!(parse_space("op:2:alg").unwrap(), ValueSpaceDescriptor::matrix_algebra(2).unwrap());
        assert_eq!(parse_space("l1:3").unwrap(), ValueSpaceDescriptor::new(3, NormKind::L1, false).unwrap());
        assert!(parse_space("l2:3:alg").is_err());
        assert!(parse_space("l2").is_err());
    }

    #[test]
    fn weight_strings() {
        assert_eq!(parse_weight("constant:0.5").unwrap(), (Gamma::Constant(0.5), None));
        assert_eq!(parse_weight("{\"builtin\":\"abs_n\",\"s\":2.0}").unwrap(), (Gamma::AbsN, Some(2.0)));
        assert_eq!(parse_weight("{\"builtin\":\"sqrt_l_lplus1\"}").unwrap(), (Gamma::SqrtLLPlus1, None));
        assert!(parse_weight("constant:-1").is_err());
    }
}
