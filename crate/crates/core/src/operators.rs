//! Spectral operators: Bessel potential, pseudo-differential multipliers and
//! group convolution.

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fourier::{Block, FourierCoefficients, GridFunction};
use crate::group::{GridLayout, GroupElement, IrrepLabel, TruncatedDual, C64};
use crate::spectra::{bessel_factor, Gamma};

/// A complex scalar per irrep.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSymbol {
    values: IndexMap<IrrepLabel, C64>,
}

impl SpectralSymbol {
    pub fn new(values: IndexMap<IrrepLabel, C64>) -> Self {
        SpectralSymbol { values }
    }

    pub fn from_fn<F: FnMut(IrrepLabel) -> C64>(dual: &TruncatedDual, mut f: F) -> Self {
        SpectralSymbol {
            values: dual.labels().map(|l| (l, f(l))).collect(),
        }
    }

    /// The constant symbol 1.
    pub fn identity(dual: &TruncatedDual) -> Self {
        Self::from_fn(dual, |_| C64::new(1.0, 0.0))
    }

    /// `(1 + gamma^2)^s`, the Bessel-potential multiplier.
    pub fn bessel(dual: &TruncatedDual, gamma: &Gamma, s: f64) -> Result<Self> {
        let gammas = gamma.values_on(dual)?;
        Ok(SpectralSymbol {
            values: dual
                .labels()
                .zip(gammas)
                .map(|(l, g)| (l, C64::new(bessel_factor(g, s), 0.0)))
                .collect(),
        })
    }

    pub fn get(&self, label: IrrepLabel) -> Option<C64> {
        self.values.get(&label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (IrrepLabel, C64)> + '_ {
        self.values.iter().map(|(l, v)| (*l, *v))
    }

    /// Pointwise product `a b`; both symbols must cover the same labels.
    pub fn compose(&self, other: &SpectralSymbol) -> Result<SpectralSymbol> {
        let values = self
            .values
            .iter()
            .map(|(l, a)| {
                other
                    .get(*l)
                    .map(|b| (*l, a * b))
                    .ok_or_else(|| Error::Config(format!("symbol has no value at irrep {l}")))
            })
            .collect::<Result<_>>()?;
        Ok(SpectralSymbol { values })
    }
}

/// Symbol as written in JSON: `{"table":{"<label>":[re,im],...}}` or
/// `{"builtin":"bessel","s":1.0}`; the latter needs a weight to resolve.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolSpec {
    Table(SpectralSymbol),
    Bessel { s: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<IndexMap<String, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
}

impl Serialize for SymbolSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            SymbolSpec::Table(t) => SymbolRepr {
                table: Some(t.iter().map(|(l, v)| (l.to_string(), [v.re, v.im])).collect()),
                builtin: None,
                s: None,
            },
            SymbolSpec::Bessel { s } => SymbolRepr {
                table: None,
                builtin: Some("bessel".into()),
                s: Some(*s),
            },
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymbolSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SymbolRepr::deserialize(d)?;
        match (r.table, r.builtin.as_deref(), r.s) {
            (Some(t), None, None) => {
                let mut values = IndexMap::new();
                for (k, [re, im]) in t {
                    let l: i64 = k
                        .parse()
                        .map_err(|_| D::Error::custom(format!("symbol key {k:?} is not an integer label")))?;
                    if !re.is_finite() || !im.is_finite() {
                        return Err(D::Error::custom(format!("symbol value at {k} is not finite")));
                    }
                    values.insert(IrrepLabel(l), C64::new(re, im));
                }
                Ok(SymbolSpec::Table(SpectralSymbol { values }))
            }
            (None, Some("bessel"), Some(s)) if s.is_finite() => Ok(SymbolSpec::Bessel { s }),
            _ => Err(D::Error::custom(
                "symbol must be {\"table\":{...}} or {\"builtin\":\"bessel\",\"s\":<real>}",
            )),
        }
    }
}

impl SymbolSpec {
    pub fn resolve(&self, dual: &TruncatedDual, gamma: Option<&Gamma>) -> Result<SpectralSymbol> {
        match self {
            SymbolSpec::Table(t) => Ok(t.clone()),
            SymbolSpec::Bessel { s } => {
                let gamma = gamma.ok_or_else(|| {
                    Error::Config("the bessel symbol needs a weight (gamma)".into())
                })?;
                SpectralSymbol::bessel(dual, gamma, *s)
            }
        }
    }
}

/// Multiplies each block by `(1 + gamma(sigma)^2)^s`. Any real `s` is
/// accepted; exponent `-s` inverts exponent `s`.
pub fn bessel_potential(c: &FourierCoefficients, gamma: &Gamma, s: f64) -> Result<FourierCoefficients> {
    if !s.is_finite() {
        return Err(Error::Precondition(format!("Bessel exponent {s} is not finite")));
    }
    let gammas = gamma.values_on(&c.dual)?;
    let blocks = c
        .blocks()
        .iter()
        .zip(gammas)
        .map(|(b, g)| b.scale(C64::new(bessel_factor(g, s), 0.0)))
        .collect();
    Ok(c.with_blocks(blocks))
}

/// Multiplies each block by the symbol value at its irrep.
pub fn pseudo_diff(c: &FourierCoefficients, a: &SpectralSymbol) -> Result<FourierCoefficients> {
    let blocks = c
        .iter()
        .map(|(label, _, b)| {
            a.get(label)
                .map(|v| b.scale(v))
                .ok_or_else(|| Error::Config(format!("symbol has no value at irrep {label}")))
        })
        .collect::<Result<Vec<Block>>>()?;
    Ok(c.with_blocks(blocks))
}

/// `(f * g)(x_k) = sum_m w_m f(y_m) g(y_m^-1 x_k)` on a grid closed under the
/// group law.
pub fn convolve_direct(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    convolve_direct_with(f, g, Exec::default())
}

pub fn convolve_direct_with(f: &GridFunction, g: &GridFunction, exec: Exec) -> Result<GridFunction> {
    if f.group != g.group || f.rule != g.rule {
        return Err(Error::Dimension("convolution factors live on different grids".into()));
    }
    if f.space != g.space {
        return Err(Error::Dimension("convolution factors take values in different spaces".into()));
    }
    let space = f.space;
    if !space.algebra {
        return Err(Error::UnsupportedOperation(format!(
            "convolution needs an algebra value space, got {space}"
        )));
    }
    let group = f.group;
    let n = f.rule.len();
    // index of y_m^-1 x_k
    let quotient: Box<dyn Fn(usize, usize) -> usize + Sync + Send> = match f.rule.layout {
        GridLayout::AllElements => Box::new(move |m, k| {
            let y_inv = group.inverse_unchecked(&GroupElement::Index(m));
            match group.multiply_unchecked(&y_inv, &GroupElement::Index(k)) {
                GroupElement::Index(i) => i,
                _ => unreachable!("finite group elements are indices"),
            }
        }),
        GridLayout::UniformCircle { m: len } => Box::new(move |m, k| (k + len - m) % len),
        GridLayout::EulerProduct { .. } => {
            return Err(Error::UnsupportedGrid(format!(
                "the quadrature grid of {group} is not closed under the group law"
            )))
        }
    };
    let samples = exec.map_range(n, |k| {
        let mut acc = space.zero();
        for m in 0..n {
            let term = space.product_unchecked(&f.samples[m], &g.samples[quotient(m, k)]);
            acc.axpy(C64::new(f.rule.weights[m], 0.0), &term);
        }
        acc
    });
    GridFunction::new(group, space, f.rule.clone(), samples)
}

/// Coefficients of `f * g`: per irrep the block matrix product
/// `(fc gc)(i, j) = sum_k fc(i, k) gc(k, j)` with the algebra product of `A`.
pub fn convolve_spectral(fc: &FourierCoefficients, gc: &FourierCoefficients) -> Result<FourierCoefficients> {
    fc.check_compatible(gc)?;
    let space = fc.space;
    if !space.algebra {
        return Err(Error::UnsupportedOperation(format!(
            "convolution needs an algebra value space, got {space}"
        )));
    }
    let blocks = fc
        .blocks()
        .iter()
        .zip(gc.blocks())
        .map(|(a, b)| {
            let d = a.dim();
            let mut out = Block::zeros(d, &space);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        space.mul_add_into(out.get_mut(i, j), a.get(i, k), b.get(k, j));
                    }
                }
            }
            out
        })
        .collect();
    Ok(fc.with_blocks(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::forward;
    use crate::group::GroupDescriptor;
    use crate::spectra::{barron_norm, Weight};
    use crate::value::{AValue, NormKind, ValueSpaceDescriptor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn torus_single(n: i64, v: C64, band: usize) -> FourierCoefficients {
        let mut fc = FourierCoefficients::zeros(ValueSpaceDescriptor::scalar(), GroupDescriptor::Torus.truncated_dual(band));
        fc.set(IrrepLabel(n), 0, 0, AValue::scalar(v)).unwrap();
        fc
    }

    fn random_grid(group: GroupDescriptor, space: ValueSpaceDescriptor, band: usize, seed: u64) -> GridFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rule = group.quadrature(band);
        let samples = rule.nodes.iter().map(|_| space.random_value(&mut rng)).collect();
        GridFunction::new(group, space, rule, samples).unwrap()
    }

    #[test]
    fn bessel_examples() {
        let fc = torus_single(2, c(1.0, -1.0), 3);
        assert_eq!(bessel_potential(&fc, &Gamma::AbsN, 0.0).unwrap(), fc);
        let b = bessel_potential(&fc, &Gamma::AbsN, 1.0).unwrap();
        let v = b.block(IrrepLabel(2)).unwrap().get(0, 0).entries()[0];
        assert!((v - c(5.0, -5.0)).norm() < 1e-15);
        let back = bessel_potential(&b, &Gamma::AbsN, -1.0).unwrap();
        assert!(back.max_abs_diff(&fc) < 1e-15);
    }

    #[test]
    fn bessel_isometry_on_su2() {
        let g = GroupDescriptor::Su2;
        let space = ValueSpaceDescriptor::new(2, NormKind::L1, false).unwrap();
        let f = random_grid(g, space, 2, 5);
        let fc = forward(&f, &g.truncated_dual(2)).unwrap();
        for s in [0.0, 0.5, 1.0, 2.0] {
            let lhs = barron_norm(&bessel_potential(&fc, &Gamma::SqrtLLPlus1, s).unwrap(), &Weight::new(Gamma::SqrtLLPlus1, 0.0).unwrap()).unwrap();
            let rhs = barron_norm(&fc, &Weight::new(Gamma::SqrtLLPlus1, 2.0 * s).unwrap()).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
    }

    #[test]
    fn pseudo_diff_examples() {
        let dual = GroupDescriptor::Torus.truncated_dual(2);
        let fc = torus_single(1, c(0.5, 0.25), 2);
        assert_eq!(pseudo_diff(&fc, &SpectralSymbol::identity(&dual)).unwrap(), fc);
        let bes = SpectralSymbol::bessel(&dual, &Gamma::AbsN, 1.5).unwrap();
        assert_eq!(pseudo_diff(&fc, &bes).unwrap(), bessel_potential(&fc, &Gamma::AbsN, 1.5).unwrap());
        let deriv = SpectralSymbol::from_fn(&dual, |l| c(0.0, std::f64::consts::TAU * l.0 as f64));
        let out = pseudo_diff(&fc, &deriv).unwrap();
        let v = out.block(IrrepLabel(1)).unwrap().get(0, 0).entries()[0];
        assert!((v - c(0.5, 0.25) * c(0.0, std::f64::consts::TAU)).norm() < 1e-15);
        let partial = SpectralSymbol::new([(IrrepLabel(0), c(1.0, 0.0))].into_iter().collect());
        assert!(matches!(pseudo_diff(&fc, &partial), Err(Error::Config(_))));
    }

    #[test]
    fn pseudo_diff_composes() {
        let g = GroupDescriptor::Dihedral { n: 5 };
        let dual = g.truncated_dual(0);
        let f = random_grid(g, ValueSpaceDescriptor::scalar(), 0, 11);
        let fc = forward(&f, &dual).unwrap();
        let a = SpectralSymbol::from_fn(&dual, |l| c(l.0 as f64, 1.0));
        let b = SpectralSymbol::from_fn(&dual, |l| c(0.5, -(l.0 as f64)));
        let lhs = pseudo_diff(&pseudo_diff(&fc, &b).unwrap(), &a).unwrap();
        let rhs = pseudo_diff(&fc, &a.compose(&b).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
    }

    #[test]
    fn z2_convolution_by_hand() {
        let g = GroupDescriptor::Cyclic { n: 2 };
        let s = ValueSpaceDescriptor::scalar();
        let (a0, a1, b0, b1) = (c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(2.0, -1.0));
        let mk = |x0: C64, x1: C64| {
            GridFunction::new(g, s, g.quadrature(0), vec![AValue::scalar(x0), AValue::scalar(x1)]).unwrap()
        };
        let h = convolve_direct(&mk(a0, a1), &mk(b0, b1)).unwrap();
        let want = (a0 * b0 + a1 * b1) / 2.0;
        assert!((h.samples[0].entries()[0] - want).norm() < 1e-15);
    }

    #[test]
    fn convolution_with_constant_is_mean() {
        let g = GroupDescriptor::Dihedral { n: 4 };
        let s = ValueSpaceDescriptor::scalar();
        let f = random_grid(g, s, 0, 2);
        let one = GridFunction::from_fn(g, s, 0, |_| AValue::scalar(c(1.0, 0.0))).unwrap();
        let mean = f.samples.iter().fold(c(0.0, 0.0), |acc, v| acc + v.entries()[0]) / 8.0;
        let h = convolve_direct(&f, &one).unwrap();
        assert!(h.samples.iter().all(|v| (v.entries()[0] - mean).norm() < 1e-15));
    }

    #[test]
    fn convolution_theorem_on_d4_matrix_valued() {
        let g = GroupDescriptor::Dihedral { n: 4 };
        let space = ValueSpaceDescriptor::matrix_algebra(2).unwrap();
        let dual = g.truncated_dual(0);
        for seed in 0..10 {
            let f = random_grid(g, space, 0, 2 * seed);
            let h = random_grid(g, space, 0, 2 * seed + 1);
            let direct = forward(&convolve_direct(&f, &h).unwrap(), &dual).unwrap();
            let spectral = convolve_spectral(&forward(&f, &dual).unwrap(), &forward(&h, &dual).unwrap()).unwrap();
            assert!(direct.max_abs_diff(&spectral) <= 1e-13);
        }
    }

    #[test]
    fn torus_spectral_convolution_examples() {
        let a = torus_single(1, c(2.0, 1.0), 2);
        let b = torus_single(2, c(0.5, 0.0), 2);
        assert_eq!(convolve_spectral(&a, &b).unwrap().nonzero_entries(), 0);
        let b = torus_single(1, c(0.0, 1.0), 2);
        let out = convolve_spectral(&a, &b).unwrap();
        let v = out.block(IrrepLabel(1)).unwrap().get(0, 0).entries()[0];
        assert_eq!(v, c(2.0, 1.0) * c(0.0, 1.0));
    }

    #[test]
    fn convolution_errors() {
        let space = ValueSpaceDescriptor::new(2, NormKind::L2, false).unwrap();
        let f = random_grid(GroupDescriptor::Cyclic { n: 3 }, space, 0, 0);
        assert!(matches!(convolve_direct(&f, &f), Err(Error::UnsupportedOperation(_))));
        let s = ValueSpaceDescriptor::scalar();
        let f = random_grid(GroupDescriptor::Su2, s, 1, 0);
        assert!(matches!(convolve_direct(&f, &f), Err(Error::UnsupportedGrid(_))));
        let fc = FourierCoefficients::zeros(space, GroupDescriptor::Torus.truncated_dual(1));
        assert!(matches!(convolve_spectral(&fc, &fc), Err(Error::UnsupportedOperation(_))));
    }

    #[test]
    fn symbol_json() {
        let s: SymbolSpec = serde_json::from_str(r#"{"table":{"0":[1.0,0.0],"-1":[0.0,2.0]}}"#).unwrap();
        let dual = GroupDescriptor::Torus.truncated_dual(1);
        let sym = s.resolve(&dual, None).unwrap();
        assert_eq!(sym.get(IrrepLabel(-1)), Some(c(0.0, 2.0)));
        let s: SymbolSpec = serde_json::from_str(r#"{"builtin":"bessel","s":1.0}"#).unwrap();
        assert!(s.resolve(&dual, None).is_err());
        let sym = s.resolve(&dual, Some(&Gamma::AbsN)).unwrap();
        assert_eq!(sym.get(IrrepLabel(1)), Some(c(2.0, 0.0)));
        assert!(serde_json::from_str::<SymbolSpec>(r#"{"builtin":"heat"}"#).is_err());
    }
}
