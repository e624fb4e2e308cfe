//! Random band-limited test functions and symbols.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::fourier::FourierCoefficients;
use crate::group::{IrrepLabel, TruncatedDual, C64};
use crate::operators::SpectralSymbol;
use crate::value::{random_in_disc, ValueSpaceDescriptor};

/// Shape of a generated coefficient table. Entries are drawn uniformly from
/// the unit disc of every coordinate unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Every entry of every irrep.
    Dense,
    /// Between 2 and 8 random entries.
    Sparse,
    /// One entry of one irrep.
    SingleMode,
    /// Every entry of one irrep of largest dimension.
    SingleIrrep,
    /// Every entry of one irrep of largest dimension, all with the same
    /// norm.
    EqualMagnitude,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Dense,
        Family::Sparse,
        Family::SingleMode,
        Family::SingleIrrep,
        Family::EqualMagnitude,
    ];
}

fn largest_irrep<R: Rng + ?Sized>(dual: &TruncatedDual, rng: &mut R) -> IrrepLabel {
    let d = dual.max_dim();
    let top: Vec<IrrepLabel> = dual.irreps.iter().filter(|r| r.dim == d).map(|r| r.label).collect();
    *top.choose(rng).expect("nonempty dual")
}

/// A random coefficient table of the given family on `dual`.
pub fn random_coefficients<R: Rng + ?Sized>(
    family: Family,
    space: ValueSpaceDescriptor,
    dual: &TruncatedDual,
    rng: &mut R,
) -> FourierCoefficients {
    let mut c = FourierCoefficients::zeros(space, dual.clone());
    let mut fill = |label: IrrepLabel, i: usize, j: usize, rng: &mut R| {
        c.set(label, i, j, space.random_value(rng)).expect("index inside the dual");
    };
    match family {
        Family::Dense => {
            for r in &dual.irreps {
                for i in 0..r.dim {
                    for j in 0..r.dim {
                        fill(r.label, i, j, rng);
                    }
                }
            }
        }
        Family::Sparse | Family::SingleMode => {
            let slots: Vec<(IrrepLabel, usize, usize)> = dual
                .irreps
                .iter()
                .flat_map(|r| (0..r.dim * r.dim).map(move |k| (r.label, k / r.dim, k % r.dim)))
                .collect();
            let k = match family {
                Family::Sparse => rng.random_range(2..=8).min(slots.len()),
                _ => 1,
            };
            for &(label, i, j) in slots.choose_multiple(rng, k) {
                fill(label, i, j, rng);
            }
        }
        Family::SingleIrrep => {
            let label = largest_irrep(dual, rng);
            let d = dual.dim_of(label).expect("label from dual");
            for i in 0..d {
                for j in 0..d {
                    fill(label, i, j, rng);
                }
            }
        }
        Family::EqualMagnitude => {
            let label = largest_irrep(dual, rng);
            let d = dual.dim_of(label).expect("label from dual");
            let size = rng.random_range(0.5..2.0);
            for i in 0..d {
                for j in 0..d {
                    let v = loop {
                        let v = space.random_value(rng);
                        let n = space.norm_unchecked(&v);
                        if n > 1e-3 {
                            break v.scale(C64::new(size / n, 0.0));
                        }
                    };
                    c.set(label, i, j, v).expect("index inside the dual");
                }
            }
        }
    }
    c
}

/// A symbol with values drawn uniformly from the disc of radius 4.
pub fn random_symbol<R: Rng + ?Sized>(dual: &TruncatedDual, rng: &mut R) -> SpectralSymbol {
    SpectralSymbol::from_fn(dual, |_| random_in_disc(rng) * 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;
    use crate::value::NormKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_shapes() {
        let dual = GroupDescriptor::Su2.truncated_dual(2);
        let space = ValueSpaceDescriptor::new(2, NormKind::L2, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let total: usize = dual.irreps.iter().map(|r| r.dim * r.dim).sum();
        assert_eq!(random_coefficients(Family::Dense, space, &dual, &mut rng).nonzero_entries(), total);
        assert_eq!(random_coefficients(Family::SingleMode, space, &dual, &mut rng).nonzero_entries(), 1);
        let n = random_coefficients(Family::Sparse, space, &dual, &mut rng).nonzero_entries();
        assert!((2..=8).contains(&n));
        let c = random_coefficients(Family::SingleIrrep, space, &dual, &mut rng);
        assert_eq!(c.nonzero_entries(), 25);
        assert!(c.block(IrrepLabel(4)).unwrap().entries().iter().all(|v| !v.is_zero()));
        let c = random_coefficients(Family::EqualMagnitude, space, &dual, &mut rng);
        let norms: Vec<f64> = c.block(IrrepLabel(4)).unwrap().entries().iter().map(|v| space.norm(v).unwrap()).collect();
        assert!(norms.iter().all(|n| (n - norms[0]).abs() < 1e-14));
    }

    #[test]
    fn symbol_is_bounded() {
        let dual = GroupDescriptor::Torus.truncated_dual(4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_symbol(&dual, &mut rng);
        assert!(a.iter().count() == dual.len() && a.iter().all(|(_, v)| v.norm() <= 4.0));
    }
}
