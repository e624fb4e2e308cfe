//! Spectral norms: Assiamoua `S_p` and `S_inf`, spectral Barron `B^s`,
//! Sobolev `H^s`, and quadrature `L^p` / grid-sup norms.
//!
//! All reductions run over irreps in dual order and over block entries in
//! row-major order.

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fourier::{FourierCoefficients, GridFunction};
use crate::group::{GroupDescriptor, IrrepLabel, TruncatedDual};

/// The frequency scale `gamma` on the dual.
#[derive(Debug, Clone, PartialEq)]
pub enum Gamma {
    /// `|n|` on the torus; `min(k, N - k)` on `Z_N`.
    AbsN,
    /// `sqrt(l (l + 1))` on SU(2).
    SqrtLLPlus1,
    Constant(f64),
    Table(IndexMap<IrrepLabel, f64>),
}

impl Gamma {
    /// `gamma(label)`; values must be finite and nonnegative.
    pub fn value(&self, group: &GroupDescriptor, label: IrrepLabel) -> Result<f64> {
        let v = match (self, group) {
            (Gamma::AbsN, GroupDescriptor::Torus) => label.0.unsigned_abs() as f64,
            (Gamma::AbsN, GroupDescriptor::Cyclic { n }) => {
                let k = label.0.rem_euclid(*n as i64);
                k.min(*n as i64 - k) as f64
            }
            (Gamma::SqrtLLPlus1, GroupDescriptor::Su2) => {
                let l = label.0 as f64 / 2.0;
                (l * (l + 1.0)).sqrt()
            }
            (Gamma::Constant(c), _) => *c,
            (Gamma::Table(t), _) => *t.get(&label).ok_or_else(|| {
                Error::Config(format!("weight table has no entry for irrep {label}"))
            })?,
            (g, group) => {
                return Err(Error::Config(format!(
                    "builtin weight {} is not defined on {group}",
                    g.id()
                )))
            }
        };
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Config(format!("gamma({label}) = {v} is not a finite nonnegative value")));
        }
        Ok(v)
    }

    /// `gamma` on every label of `dual`, in dual order.
    pub fn values_on(&self, dual: &TruncatedDual) -> Result<Vec<f64>> {
        dual.labels().map(|l| self.value(&dual.group, l)).collect()
    }

    /// Short identifier used in reports.
    pub fn id(&self) -> String {
        match self {
            Gamma::AbsN => "abs_n".into(),
            Gamma::SqrtLLPlus1 => "sqrt_l_lplus1".into(),
            Gamma::Constant(c) => format!("constant:{c}"),
            Gamma::Table(_) => "table".into(),
        }
    }
}

#[derive(Serialize, Deserialize, Default)]
struct GammaRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<IndexMap<String, f64>>,
}

impl From<&Gamma> for GammaRepr {
    fn from(g: &Gamma) -> Self {
        match g {
            Gamma::AbsN => GammaRepr { builtin: Some("abs_n".into()), ..Default::default() },
            Gamma::SqrtLLPlus1 => GammaRepr {
                builtin: Some("sqrt_l_lplus1".into()),
                ..Default::default()
            },
            Gamma::Constant(c) => GammaRepr { constant: Some(*c), ..Default::default() },
            Gamma::Table(t) => GammaRepr {
                table: Some(t.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
                ..Default::default()
            },
        }
    }
}

impl TryFrom<GammaRepr> for Gamma {
    type Error = Error;

    fn try_from(r: GammaRepr) -> Result<Self> {
        match (r.builtin.as_deref(), r.constant, r.table) {
            (Some("abs_n"), None, None) => Ok(Gamma::AbsN),
            (Some("sqrt_l_lplus1"), None, None) => Ok(Gamma::SqrtLLPlus1),
            (Some(other), None, None) => Err(Error::Config(format!("unknown builtin weight {other:?}"))),
            (None, Some(c), None) if c.is_finite() && c >= 0.0 => Ok(Gamma::Constant(c)),
            (None, None, Some(t)) => {
                let mut out = IndexMap::new();
                for (k, v) in t {
                    let label = k
                        .parse()
                        .map_err(|_| Error::Config(format!("weight key {k:?} is not an integer label")))?;
                    if !v.is_finite() || v < 0.0 {
                        return Err(Error::Config(format!("weight value {v} for {k} must be >= 0")));
                    }
                    out.insert(IrrepLabel(label), v);
                }
                Ok(Gamma::Table(out))
            }
            _ => Err(Error::Config(
                "weight needs exactly one of \"builtin\", \"constant\" or \"table\"".into(),
            )),
        }
    }
}

impl Serialize for Gamma {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GammaRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gamma {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Gamma::try_from(GammaRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `gamma` together with an order `s >= 0`; the weight is `(1 + gamma^2)^(s/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub gamma: Gamma,
    pub s: f64,
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    #[serde(flatten)]
    gamma: GammaRepr,
    #[serde(default)]
    s: f64,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightRepr {
            gamma: GammaRepr::from(&self.gamma),
            s: self.s,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = WeightRepr::deserialize(d)?;
        Weight::new(Gamma::try_from(r.gamma).map_err(D::Error::custom)?, r.s).map_err(D::Error::custom)
    }
}

impl Weight {
    pub fn new(gamma: Gamma, s: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Config(format!("order s = {s} must be finite and >= 0")));
        }
        Ok(Weight { gamma, s })
    }

    /// `(1 + gamma(label)^2)^(s/2)`.
    pub fn factor(&self, group: &GroupDescriptor, label: IrrepLabel) -> Result<f64> {
        Ok(bessel_factor(self.gamma.value(group, label)?, self.s / 2.0))
    }
}

/// `(1 + gamma^2)^exponent`, exactly 1 for a zero exponent.
pub fn bessel_factor(gamma: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else {
        (1.0 + gamma * gamma).powf(exponent)
    }
}

/// A norm value with its per-irrep contributions.
///
/// For the `p = 1` norms (`S_1`, Barron) the contributions sum to `value`;
/// for the Sobolev norm they sum to `value^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub per_irrep: IndexMap<String, f64>,
}

/// `||entry||_A` for every block entry, computed once and reused.
#[derive(Debug, Clone)]
pub struct EntryNorms {
    dual: TruncatedDual,
    /// Per irrep, row-major entry norms.
    norms: Vec<Vec<f64>>,
}

impl EntryNorms {
    pub fn of(c: &FourierCoefficients) -> Self {
        Self::of_with(c, Exec::default())
    }

    pub fn of_with(c: &FourierCoefficients, exec: Exec) -> Self {
        let space = c.space;
        let norms = exec.map_slice(c.blocks(), |b| {
            b.entries().iter().map(|v| space.norm_unchecked(v)).collect()
        });
        EntryNorms {
            dual: c.dual.clone(),
            norms,
        }
    }

    pub fn dual(&self) -> &TruncatedDual {
        &self.dual
    }

    /// `sum_ij ||c(i, j)||^p` per irrep.
    fn inner_sums(&self, p: f64) -> Vec<f64> {
        self.norms
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&n| if p == 1.0 { n } else { n.powf(p) })
                    .sum()
            })
            .collect()
    }

    pub fn sp(&self, p: f64) -> Result<f64> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::Precondition(format!("S_p norm needs finite p >= 1, got {p}")));
        }
        let total: f64 = self
            .dual
            .irreps
            .iter()
            .zip(self.inner_sums(p))
            .map(|(r, inner)| r.dim as f64 * inner)
            .sum();
        Ok(if p == 1.0 { total } else { total.powf(1.0 / p) })
    }

    pub fn s_inf(&self) -> f64 {
        self.norms.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Weighted `S_1` norm with per-irrep factor `(1 + gamma^2)^(s/2)`.
    pub fn barron(&self, gamma: &Gamma, s: f64) -> Result<NormReport> {
        let gammas = gamma.values_on(&self.dual)?;
        let mut per_irrep = IndexMap::new();
        let mut value = 0.0;
        for ((r, inner), g) in self.dual.irreps.iter().zip(self.inner_sums(1.0)).zip(gammas) {
            let contrib = r.dim as f64 * bessel_factor(g, s / 2.0) * inner;
            value += contrib;
            per_irrep.insert(r.label.to_string(), contrib);
        }
        Ok(NormReport { value, per_irrep })
    }

    /// `(sum d (1 + gamma^2)^s sum_ij ||c||^2)^(1/2)`.
    pub fn sobolev(&self, gamma: &Gamma, s: f64) -> Result<NormReport> {
        let gammas = gamma.values_on(&self.dual)?;
        let mut per_irrep = IndexMap::new();
        let mut total = 0.0;
        for ((r, inner), g) in self.dual.irreps.iter().zip(self.inner_sums(2.0)).zip(gammas) {
            let contrib = r.dim as f64 * bessel_factor(g, s) * inner;
            total += contrib;
            per_irrep.insert(r.label.to_string(), contrib);
        }
        Ok(NormReport {
            value: total.sqrt(),
            per_irrep,
        })
    }
}

/// Assiamoua norm `(sum_sigma d_sigma sum_ij ||c(i,j)||^p)^(1/p)`, `1 <= p < inf`.
pub fn sp_norm(c: &FourierCoefficients, p: f64) -> Result<f64> {
    EntryNorms::of(c).sp(p)
}

/// Largest entry norm over all irreps and indices.
pub fn s_inf_norm(c: &FourierCoefficients) -> f64 {
    EntryNorms::of(c).s_inf()
}

pub fn barron_norm(c: &FourierCoefficients, w: &Weight) -> Result<f64> {
    Ok(EntryNorms::of(c).barron(&w.gamma, w.s)?.value)
}

pub fn barron_report(c: &FourierCoefficients, w: &Weight) -> Result<NormReport> {
    EntryNorms::of(c).barron(&w.gamma, w.s)
}

pub fn sobolev_norm(c: &FourierCoefficients, w: &Weight) -> Result<f64> {
    Ok(EntryNorms::of(c).sobolev(&w.gamma, w.s)?.value)
}

pub fn sobolev_report(c: &FourierCoefficients, w: &Weight) -> Result<NormReport> {
    EntryNorms::of(c).sobolev(&w.gamma, w.s)
}

/// Quadrature `L^p` norm `(sum_k w_k ||f(x_k)||^p)^(1/p)`.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::Precondition(format!("L^p norm needs finite p >= 1, got {p}")));
    }
    let total: f64 = f
        .samples
        .iter()
        .zip(&f.rule.weights)
        .map(|(v, w)| {
            let n = f.space.norm_unchecked(v);
            w * if p == 1.0 { n } else { n.powf(p) }
        })
        .sum();
    Ok(if p == 1.0 { total } else { total.powf(1.0 / p) })
}

/// Largest sample norm; a lower bound for the essential supremum.
pub fn sup_norm(f: &GridFunction) -> f64 {
    f.samples
        .iter()
        .map(|v| f.space.norm_unchecked(v))
        .fold(0.0, f64::max)
}
