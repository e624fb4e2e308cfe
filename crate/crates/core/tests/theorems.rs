use barron_core::fourier::PointEvaluator;
use barron_core::operators::{bessel_potential, pseudo_diff};
use barron_core::precision::{EXACT, QUADRATURE};
use barron_core::verify::{
    check_convolution_bound, check_interpolation, check_isometry, check_linf_embedding, check_order_embedding,
    check_pseudodiff_bound, check_sobolev_embedding, random_coefficients, random_symbol, CheckSettings, Family,
};
use barron_core::{
    barron_norm, AValue, Exec, FourierCoefficients, Gamma, GroupDescriptor, IrrepLabel, NormKind, SpectralGrid,
    SpectralSymbol, ValueSpaceDescriptor, Weight, C64,
};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_modes(g: GroupDescriptor, band: usize, space: ValueSpaceDescriptor, count: usize, rng: &mut ChaCha8Rng) -> FourierCoefficients {
    let dual = g.truncated_dual(band);
    let slots: Vec<(IrrepLabel, usize, usize)> = dual
        .irreps
        .iter()
        .flat_map(|r| (0..r.dim * r.dim).map(move |k| (r.label, k / r.dim, k % r.dim)))
        .collect();
    let mut c = FourierCoefficients::zeros(space, dual);
    for &(l, i, j) in slots.choose_multiple(rng, count) {
        c.set(l, i, j, space.random_value(rng)).unwrap();
    }
    c
}

#[test]
fn interpolation_strict_on_twenty_mode_torus_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let f = random_modes(GroupDescriptor::Torus, 10, ValueSpaceDescriptor::scalar(), 20, &mut rng);
    let cfg = CheckSettings::new(Gamma::AbsN, QUADRATURE);
    let chk = check_interpolation(&cfg, &f, 0.0, 2.0, 0.5).unwrap();
    assert!(chk.pass && chk.slack > 0.0, "{chk:?}");
}

#[test]
fn interpolation_degenerate_parameters_are_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_coefficients(Family::Dense, ValueSpaceDescriptor::scalar(), &GroupDescriptor::Su2.truncated_dual(2), &mut rng);
    let cfg = CheckSettings::new(Gamma::SqrtLLPlus1, QUADRATURE);
    for (r, t, alpha) in [(1.0, 1.0, 0.4), (0.0, 2.0, 0.0), (0.0, 2.0, 1.0)] {
        let chk = check_interpolation(&cfg, &f, r, t, alpha).unwrap();
        assert!((chk.lhs - chk.rhs).abs() <= 1e-13 * chk.rhs, "{chk:?}");
    }
}

#[test]
fn pseudodiff_random_symbol_on_su2() {
    let g = GroupDescriptor::Su2;
    let dual = g.truncated_dual(1);
    let space = ValueSpaceDescriptor::new(2, NormKind::L2, false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = CheckSettings::new(Gamma::SqrtLLPlus1, QUADRATURE);
    for _ in 0..50 {
        let f = random_coefficients(Family::Dense, space, &dual, &mut rng);
        let a = random_symbol(&dual, &mut rng);
        for (s, t) in [(0.0, 0.0), (1.0, 0.0), (0.5, 2.0), (2.0, 1.0)] {
            assert!(check_pseudodiff_bound(&cfg, &f, &a, s, t).unwrap().pass);
        }
    }
}

#[test]
fn bessel_symbol_shifts_the_order() {
    let g = GroupDescriptor::Torus;
    let dual = g.truncated_dual(4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_coefficients(Family::Dense, ValueSpaceDescriptor::scalar(), &dual, &mut rng);
    let u = 0.75;
    let a = SpectralSymbol::bessel(&dual, &Gamma::AbsN, u).unwrap();
    assert_eq!(pseudo_diff(&f, &a).unwrap(), bessel_potential(&f, &Gamma::AbsN, u).unwrap());
    let cfg = CheckSettings::new(Gamma::AbsN, QUADRATURE);
    // (1 + g^2)^((s - t)/2 + u) = 1 when t = s + 2u: the bound is an equality.
    let chk = check_pseudodiff_bound(&cfg, &f, &a, 0.5, 0.5 + 2.0 * u).unwrap();
    assert!((chk.constant - 1.0).abs() < 1e-15);
    assert!((chk.lhs - chk.rhs).abs() <= 1e-13 * chk.rhs);
}

#[test]
fn convolution_bound_on_d4_matrix_valued() {
    let g = GroupDescriptor::Dihedral { n: 4 };
    let dual = g.truncated_dual(0);
    let grid = SpectralGrid::new(g, 0);
    let space = ValueSpaceDescriptor::matrix_algebra(2).unwrap();
    let cfg = CheckSettings::new(Gamma::Constant(1.0), EXACT);
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for family in Family::ALL {
        for _ in 0..20 {
            let f = random_coefficients(family, space, &dual, &mut rng);
            let h = random_coefficients(family, space, &dual, &mut rng);
            for s in [0.0, 1.0, 2.0] {
                let chk = check_convolution_bound(&cfg, &grid, &f, &h, s).unwrap();
                assert!(chk.pass && chk.constant == 2.0, "{chk:?}");
            }
        }
    }
}

#[test]
fn order_embedding_and_isometry_on_every_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let space = ValueSpaceDescriptor::new(2, NormKind::Linf, false).unwrap();
    for (g, gamma) in [
        (GroupDescriptor::Cyclic { n: 8 }, Gamma::AbsN),
        (GroupDescriptor::Dihedral { n: 4 }, Gamma::Constant(0.5)),
        (GroupDescriptor::Torus, Gamma::AbsN),
        (GroupDescriptor::Su2, Gamma::SqrtLLPlus1),
    ] {
        let dual = g.truncated_dual(3);
        let cfg = CheckSettings::new(gamma, QUADRATURE);
        for family in Family::ALL {
            let f = random_coefficients(family, space, &dual, &mut rng);
            assert!(check_order_embedding(&cfg, &f, 0.5, 1.5).unwrap().pass);
            for s in [0.0, 0.5, 1.0, 2.0] {
                assert!(check_isometry(&cfg, &f, s).unwrap().pass);
            }
        }
    }
}

#[test]
fn sobolev_single_torus_mode_is_strict() {
    let mut f = FourierCoefficients::zeros(ValueSpaceDescriptor::scalar(), GroupDescriptor::Torus.truncated_dual(2));
    f.set(IrrepLabel(1), 0, 0, AValue::scalar(C64::new(1.0, 0.0))).unwrap();
    let cfg = CheckSettings::new(Gamma::AbsN, QUADRATURE);
    let [kappa, star] = check_sobolev_embedding(&cfg, &f, 0.0, 1.0).unwrap();
    assert!(kappa.pass && kappa.slack > 0.0);
    assert_eq!(kappa.rhs, star.rhs);
}

#[test]
fn linf_embedding_for_ten_mode_su2_functions() {
    let g = GroupDescriptor::Su2;
    let space = ValueSpaceDescriptor::new(2, NormKind::L1, false).unwrap();
    let points = PointEvaluator::dense(g.truncated_dual(3), 10, Exec::default()).unwrap();
    assert!(points.points().len() >= 10 * g.quadrature(3).len());
    let cfg = CheckSettings::new(Gamma::SqrtLLPlus1, QUADRATURE);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let f = random_modes(g, 3, space, 10, &mut rng);
        for s in [0.0, 1.0] {
            let chk = check_linf_embedding(&cfg, &points, &f, s).unwrap();
            assert!(chk.pass && chk.lhs > 0.0, "{chk:?}");
        }
    }
}

#[test]
fn linf_embedding_for_constants() {
    let g = GroupDescriptor::Dihedral { n: 3 };
    let dual = g.truncated_dual(0);
    let space = ValueSpaceDescriptor::new(3, NormKind::L2, false).unwrap();
    let v = AValue::vector(vec![C64::new(1.0, 2.0), C64::new(0.0, -1.0), C64::new(0.5, 0.0)]);
    let mut f = FourierCoefficients::zeros(space, dual.clone());
    f.set(IrrepLabel(0), 0, 0, v.clone()).unwrap();
    let points = PointEvaluator::dense(dual, 1, Exec::Serial).unwrap();
    let gamma0 = 0.7;
    let cfg = CheckSettings::new(Gamma::Constant(gamma0), EXACT);
    let norm = space.norm(&v).unwrap();
    for s in [0.0, 1.0, 3.0] {
        let chk = check_linf_embedding(&cfg, &points, &f, s).unwrap();
        assert!((chk.lhs - norm).abs() < 1e-15);
        assert!((chk.rhs - (1.0 + gamma0 * gamma0).powf(s / 2.0) * norm).abs() < 1e-14);
        assert!(chk.pass);
    }
}

#[test]
fn barron_order_zero_ignores_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = random_coefficients(Family::Dense, ValueSpaceDescriptor::scalar(), &GroupDescriptor::Cyclic { n: 6 }.truncated_dual(0), &mut rng);
    let a = barron_norm(&f, &Weight::new(Gamma::AbsN, 0.0).unwrap()).unwrap();
    let b = barron_norm(&f, &Weight::new(Gamma::Constant(rng.random_range(0.0..5.0)), 0.0).unwrap()).unwrap();
    assert_eq!(a, b);
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn required_inequalities_hold(seed in any::<u64>(), fam in family(), s in 0.0..3.0f64, gap in 0.01..3.0f64, alpha in 0.0..=1.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = s + gap;
        for (g, gamma) in [(GroupDescriptor::Dihedral { n: 5 }, Gamma::Constant(1.3)), (GroupDescriptor::Su2, Gamma::SqrtLLPlus1)] {
            let dual = g.truncated_dual(2);
            let space = ValueSpaceDescriptor::matrix_algebra(2).unwrap();
            let cfg = CheckSettings::new(gamma, QUADRATURE);
            let f = random_coefficients(fam, space, &dual, &mut rng);
            let h = random_coefficients(fam, space, &dual, &mut rng);
            let a = random_symbol(&dual, &mut rng);
            prop_assert!(check_interpolation(&cfg, &f, s, t, alpha).unwrap().pass);
            prop_assert!(check_order_embedding(&cfg, &f, s, t).unwrap().pass);
            prop_assert!(check_pseudodiff_bound(&cfg, &f, &a, t, s).unwrap().pass);
            prop_assert!(check_sobolev_embedding(&cfg, &f, s, t).unwrap()[1].pass);
            prop_assert!(check_isometry(&cfg, &f, s).unwrap().pass);
            let grid = SpectralGrid::new(g, 2);
            prop_assert!(check_convolution_bound(&cfg, &grid, &f, &h, s).unwrap().pass);
        }
    }
}
