//! Batch verification over a grid of groups, value spaces, weights and
//! orders.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generate::{random_coefficients, random_symbol, Family};
use super::{
    convolution_bound, interpolation, isometry, linf_embedding, order_embedding, pseudodiff_bound,
    sobolev_embedding, CheckParams, CheckSettings, TheoremCheck, Variant,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fourier::{Convention, PointEvaluator, SpectralGrid};
use crate::group::{GroupDescriptor, TruncatedDual};
use crate::precision::{PrecisionProfile, Tolerances};
use crate::spectra::{lp_norm, EntryNorms, Gamma};
use crate::value::ValueSpaceDescriptor;
use crate::SCHEMA_VERSION;

/// Interpolation parameters; every triple with `r <= t` is checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationGrid {
    pub r: Vec<f64>,
    pub t: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl Default for InterpolationGrid {
    fn default() -> Self {
        InterpolationGrid {
            r: vec![0.0, 1.0, 2.0],
            t: vec![1.0, 2.0, 4.0],
            alpha: vec![0.25, 0.5, 0.75],
        }
    }
}

impl InterpolationGrid {
    fn triples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.r.iter().flat_map(move |&r| {
            self.t
                .iter()
                .filter(move |&&t| r <= t)
                .flat_map(move |&t| self.alpha.iter().map(move |&a| (r, t, a)))
        })
    }
}

fn default_families() -> Vec<Family> {
    Family::ALL.to_vec()
}

fn default_linf_density() -> usize {
    10
}

/// What to verify. Function `k` of a case uses family
/// `families[k % families.len()]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub groups: Vec<GroupDescriptor>,
    pub bands: Vec<usize>,
    pub spaces: Vec<ValueSpaceDescriptor>,
    /// A weight is used on every group where it is defined.
    pub weights: Vec<Gamma>,
    /// Orders `s` for single-order checks; ordered pairs `s < t` for the
    /// embeddings; all pairs for the pseudo-differential bound.
    pub orders: Vec<f64>,
    #[serde(default)]
    pub interpolation: InterpolationGrid,
    pub functions_per_case: usize,
    pub seed: u64,
    #[serde(default)]
    pub precision_profile: PrecisionProfile,
    #[serde(default = "default_families")]
    pub families: Vec<Family>,
    /// Dense-grid factor for the `L^inf` sup.
    #[serde(default = "default_linf_density")]
    pub linf_density: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            groups: vec![
                GroupDescriptor::Cyclic { n: 8 },
                GroupDescriptor::Dihedral { n: 4 },
                GroupDescriptor::Torus,
                GroupDescriptor::Su2,
            ],
            bands: vec![3],
            spaces: vec![
                ValueSpaceDescriptor::scalar(),
                ValueSpaceDescriptor::new(2, crate::value::NormKind::L1, false).expect("valid space"),
                ValueSpaceDescriptor::matrix_algebra(2).expect("valid space"),
            ],
            weights: vec![Gamma::AbsN, Gamma::SqrtLLPlus1, Gamma::Constant(1.0)],
            orders: vec![0.0, 0.5, 1.0, 2.0],
            interpolation: InterpolationGrid::default(),
            functions_per_case: 50,
            seed: 20240607,
            precision_profile: PrecisionProfile::FiniteExact,
            families: default_families(),
            linf_density: default_linf_density(),
        }
    }
}

fn nonneg(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} = {v} must be finite and >= 0")))
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.functions_per_case == 0 {
            return Err(Error::Config("functions_per_case must be >= 1".into()));
        }
        if self.families.is_empty() {
            return Err(Error::Config("families must not be empty".into()));
        }
        if self.linf_density == 0 {
            return Err(Error::Config("linf_density must be >= 1".into()));
        }
        for g in &self.groups {
            g.validate()?;
        }
        for &s in &self.orders {
            nonneg("order", s)?;
        }
        for &r in &self.interpolation.r {
            nonneg("interpolation r", r)?;
        }
        for &t in &self.interpolation.t {
            nonneg("interpolation t", t)?;
        }
        for &a in &self.interpolation.alpha {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::Config(format!("interpolation alpha = {a} must lie in [0, 1]")));
            }
        }
        if !self.groups.is_empty() && !self.bands.is_empty() {
            for w in &self.weights {
                let used = self
                    .groups
                    .iter()
                    .any(|g| self.bands.iter().any(|&b| w.values_on(&g.truncated_dual(b)).is_ok()));
                if !used {
                    return Err(Error::Config(format!(
                        "weight {} is not defined on any configured group",
                        w.id()
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Tally {
    fn add(&mut self, pass: bool) {
        self.checks += 1;
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

/// Outcomes of the `kappa_paper` Sobolev variant, split by commutativity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaCensus {
    pub abelian: Tally,
    pub nonabelian: Tally,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub cases: usize,
    pub functions: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    /// Failures outside the `kappa_paper` variant.
    pub required_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub schema_version: u32,
    pub convention: Convention,
    pub precision_profile: PrecisionProfile,
    pub seed: u64,
    pub bands: Vec<usize>,
    pub functions_per_case: usize,
    pub counts: Counts,
    pub kappa_paper: KappaCensus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub environment: Environment,
    pub checks: Vec<TheoremCheck>,
}

impl VerificationReport {
    pub fn all_required_pass(&self) -> bool {
        self.environment.counts.required_failed == 0
    }

    /// One row per check.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "name", "variant", "lhs", "rhs", "constant", "slack", "pass", "group", "space", "gamma", "band", "s",
            "t", "r", "alpha", "seed", "function", "family",
        ])?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for c in &self.checks {
            let name = serde_json::to_value(c.name).expect("enum serializes");
            let variant = c.variant.map(|v| serde_json::to_value(v).expect("enum serializes"));
            let family = c.params.family.map(|f| serde_json::to_value(f).expect("enum serializes"));
            let p = &c.params;
            out.write_record([
                name.as_str().unwrap_or_default().to_string(),
                variant.as_ref().and_then(|v| v.as_str()).unwrap_or_default().to_string(),
                c.lhs.to_string(),
                c.rhs.to_string(),
                c.constant.to_string(),
                c.slack.to_string(),
                c.pass.to_string(),
                p.group.clone(),
                p.space.clone(),
                p.gamma.clone(),
                p.band.to_string(),
                opt(p.s),
                opt(p.t),
                opt(p.r),
                opt(p.alpha),
                p.seed.map(|x| x.to_string()).unwrap_or_default(),
                p.function.map(|x| x.to_string()).unwrap_or_default(),
                family.as_ref().and_then(|v| v.as_str()).unwrap_or_default().to_string(),
            ])?;
        }
        out.flush()
    }
}

struct Case {
    resources: usize,
    space: ValueSpaceDescriptor,
    gamma: Gamma,
    tolerances: Tolerances,
}

struct Resources {
    dual: TruncatedDual,
    grid: Option<SpectralGrid>,
    points: PointEvaluator,
}

pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    run_suite_with(config, Exec::default())
}

/// Runs every case; functions are processed in parallel under
/// `Exec::Parallel` and the report is assembled in canonical order, so the
/// output does not depend on `exec`.
pub fn run_suite_with(config: &SuiteConfig, exec: Exec) -> Result<VerificationReport> {
    config.validate()?;
    let need_grid = config.spaces.iter().any(|s| s.algebra);
    let mut resources = Vec::new();
    let mut cases = Vec::new();
    for group in &config.groups {
        for &band in &config.bands {
            let dual = group.truncated_dual(band);
            let index = resources.len();
            resources.push(Resources {
                grid: need_grid.then(|| SpectralGrid::from_parts_with(group.quadrature(band), dual.clone(), exec)).transpose()?,
                points: PointEvaluator::dense(dual.clone(), config.linf_density, exec)?,
                dual,
            });
            for &space in &config.spaces {
                for gamma in &config.weights {
                    if gamma.values_on(&resources[index].dual).is_err() {
                        continue;
                    }
                    cases.push(Case {
                        resources: index,
                        space,
                        gamma: gamma.clone(),
                        tolerances: config.precision_profile.tolerances(group),
                    });
                }
            }
        }
    }

    let units: Vec<(usize, usize)> = (0..cases.len())
        .flat_map(|c| (0..config.functions_per_case).map(move |k| (c, k)))
        .collect();
    let results = exec.map_slice(&units, |&(c, k)| {
        let case = &cases[c];
        run_function(config, case, &resources[case.resources], c, k)
    });

    let mut counts = Counts {
        cases: cases.len(),
        functions: units.len(),
        ..Counts::default()
    };
    let mut census = KappaCensus::default();
    let mut checks = Vec::new();
    for (&(c, _), r) in units.iter().zip(results) {
        let abelian = resources[cases[c].resources].dual.group.is_abelian();
        for chk in r? {
            counts.checks += 1;
            if chk.pass {
                counts.passed += 1;
            } else {
                counts.failed += 1;
                if chk.is_required() {
                    counts.required_failed += 1;
                }
            }
            if chk.variant == Some(Variant::KappaPaper) {
                if abelian {
                    census.abelian.add(chk.pass);
                } else {
                    census.nonabelian.add(chk.pass);
                }
            }
            checks.push(chk);
        }
    }
    Ok(VerificationReport {
        environment: Environment {
            schema_version: SCHEMA_VERSION,
            convention: Convention::validated(),
            precision_profile: config.precision_profile,
            seed: config.seed,
            bands: config.bands.clone(),
            functions_per_case: config.functions_per_case,
            counts,
            kappa_paper: census,
        },
        checks,
    })
}

/// All checks for function `k` of case `c`, in declared theorem order.
fn run_function(config: &SuiteConfig, case: &Case, res: &Resources, c: usize, k: usize) -> Result<Vec<TheoremCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(((c as u64) << 32) | k as u64);
    let family = config.families[k % config.families.len()];
    let f = random_coefficients(family, case.space, &res.dual, &mut rng);
    let g = random_coefficients(family, case.space, &res.dual, &mut rng);
    let a = random_symbol(&res.dual, &mut rng);

    let cfg = CheckSettings::new(case.gamma.clone(), case.tolerances);
    let base = CheckParams {
        seed: Some(config.seed),
        function: Some(k),
        family: Some(family),
        ..cfg.params(&f)
    };
    let norms = EntryNorms::of_with(&f, Exec::Serial);
    let orders = &config.orders;
    let pairs: Vec<(f64, f64)> = orders
        .iter()
        .flat_map(|&s| orders.iter().filter(move |&&t| s < t).map(move |&t| (s, t)))
        .collect();
    let mut out = Vec::new();

    for &s in orders {
        out.push(isometry(&cfg, &f, &norms, base.clone(), s)?);
    }
    for (r, t, alpha) in config.interpolation.triples() {
        out.push(interpolation(&cfg, &norms, base.clone(), r, t, alpha)?);
    }
    for &s in orders {
        for &t in orders {
            out.push(pseudodiff_bound(&cfg, &f, &norms, base.clone(), &a, s, t)?);
        }
    }
    if case.space.algebra {
        let grid = res.grid.as_ref().expect("grid built for algebra spaces");
        let l1 = lp_norm(&grid.synthesize_coefficients(&f, Exec::Serial)?, 1.0)?;
        let g_norms = EntryNorms::of_with(&g, Exec::Serial);
        for &s in orders {
            out.push(convolution_bound(&cfg, &f, &g, l1, &g_norms, base.clone(), s)?);
        }
    }
    for &(s, t) in &pairs {
        out.push(order_embedding(&cfg, &norms, base.clone(), s, t)?);
    }
    for &(s, t) in &pairs {
        out.extend(sobolev_embedding(&cfg, &norms, base.clone(), s, t)?);
    }
    let sup = res.points.sup_norm(&f, Exec::Serial)?;
    for &s in orders {
        out.push(linf_embedding(&cfg, &norms, sup, base.clone(), s)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            groups: vec![GroupDescriptor::Dihedral { n: 3 }, GroupDescriptor::Torus],
            bands: vec![2],
            weights: vec![Gamma::AbsN, Gamma::Constant(1.0)],
            functions_per_case: 3,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn empty_config_gives_empty_report() {
        let cfg = SuiteConfig { groups: vec![], ..small() };
        let r = run_suite(&cfg).unwrap();
        assert!(r.checks.is_empty());
        assert_eq!(r.environment.counts, Counts::default());
        assert!(r.all_required_pass());
    }

    #[test]
    fn invalid_configs() {
        let bad = SuiteConfig { functions_per_case: 0, ..small() };
        assert!(matches!(run_suite(&bad), Err(Error::Config(_))));
        let mut bad = small();
        bad.interpolation.alpha = vec![1.5];
        assert!(matches!(run_suite(&bad), Err(Error::Config(_))));
        let bad = SuiteConfig { orders: vec![-1.0], ..small() };
        assert!(matches!(run_suite(&bad), Err(Error::Config(_))));
        let bad = SuiteConfig { weights: vec![Gamma::SqrtLLPlus1], ..small() };
        assert!(matches!(run_suite(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn serial_and_parallel_agree() {
        let cfg = small();
        let a = run_suite_with(&cfg, Exec::Serial).unwrap();
        let b = run_suite_with(&cfg, Exec::Parallel).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.all_required_pass());
    }

    #[test]
    fn weights_apply_where_defined() {
        let r = run_suite(&small()).unwrap();
        // D3: constant only; torus: abs_n and constant.
        assert_eq!(r.environment.counts.cases, 3 * 3);
        assert!(r.checks.iter().all(|c| !(c.params.group == "D3" && c.params.gamma == "abs_n")));
    }

    #[test]
    fn config_json_defaults() {
        let cfg: SuiteConfig = serde_json::from_str(
            r#"{"groups":[{"kind":"torus"}],"bands":[1],"spaces":[{"dim":1,"norm":"l2"}],
                "weights":[{"builtin":"abs_n"}],"orders":[0,1],"functions_per_case":2,"seed":7}"#,
        )
        .unwrap();
        assert_eq!(cfg.families, Family::ALL.to_vec());
        assert_eq!(cfg.interpolation, InterpolationGrid::default());
        assert_eq!(cfg.precision_profile, PrecisionProfile::FiniteExact);
        assert!(serde_json::from_str::<SuiteConfig>(r#"{"groups":[],"extra":1}"#).is_err());
    }

    #[test]
    fn csv_has_one_row_per_check() {
        let cfg = SuiteConfig { functions_per_case: 1, ..small() };
        let r = run_suite(&cfg).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), r.checks.len() + 1);
        assert!(text.lines().next().unwrap().starts_with("name,variant,lhs"));
    }
}
