//! Compact groups with truncated unitary duals and Haar-exact quadrature.
//!
//! Four families are provided: the cyclic groups `Z_N`, the dihedral groups
//! `D_n` (order `2n`), the circle `T = R/Z`, and `SU(2)`. Every irrep is
//! evaluated as an explicit unitary matrix; matrix coefficients are the
//! entries `u_ij(x) = sigma(x)[i][j]` in a fixed orthonormal basis.

mod cyclic;
mod dihedral;
mod gauss;
mod su2;
mod torus;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gauss::gauss_legendre;
pub use su2::su2_from_euler;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Tolerance on `|alpha|^2 + |beta|^2 = 1` for SU(2) elements.
pub const SU2_UNIT_TOL: f64 = 1e-12;

/// A compact group.
///
/// Serialized as `{"kind":"su2"}`, `{"kind":"cyclic","N":8}`,
/// `{"kind":"dihedral","n":4}` or `{"kind":"torus"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawGroup")]
pub enum GroupDescriptor {
    Cyclic {
        #[serde(rename = "N")]
        n: usize,
    },
    /// Symmetries of the regular `n`-gon, `|D_n| = 2n`.
    Dihedral { n: usize },
    Torus,
    Su2,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawGroup {
    Cyclic {
        #[serde(rename = "N")]
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Torus,
    Su2,
}

impl TryFrom<RawGroup> for GroupDescriptor {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        let g = match raw {
            RawGroup::Cyclic { n } => GroupDescriptor::Cyclic { n },
            RawGroup::Dihedral { n } => GroupDescriptor::Dihedral { n },
            RawGroup::Torus => GroupDescriptor::Torus,
            RawGroup::Su2 => GroupDescriptor::Su2,
        };
        g.validate()?;
        Ok(g)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic { n } => write!(f, "Z{n}"),
            GroupDescriptor::Dihedral { n } => write!(f, "D{n}"),
            GroupDescriptor::Torus => write!(f, "T"),
            GroupDescriptor::Su2 => write!(f, "SU2"),
        }
    }
}

/// A group element.
///
/// Finite groups use an index into their element list, the torus a point
/// of `[0, 1)`, and SU(2) the pair `(alpha, beta)` of the matrix
/// `[[alpha, beta], [-conj(beta), conj(alpha)]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupElement {
    Index(usize),
    Point(f64),
    Su2 { alpha: C64, beta: C64 },
}

/// Label of an irreducible representation.
///
/// Cyclic: `k` in `0..N`. Dihedral: index into the irrep table. Torus: the
/// frequency `n`. SU(2): `twoL = 2l`, so half-integer spins stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IrrepLabel(pub i64);

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub dim: usize,
}

/// A finite, canonically ordered subset of the unitary dual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedDual {
    pub group: GroupDescriptor,
    pub band: usize,
    pub irreps: Vec<Irrep>,
}

impl TruncatedDual {
    pub fn labels(&self) -> impl Iterator<Item = IrrepLabel> + '_ {
        self.irreps.iter().map(|r| r.label)
    }

    pub fn position(&self, label: IrrepLabel) -> Option<usize> {
        self.irreps.iter().position(|r| r.label == label)
    }

    pub fn dim_of(&self, label: IrrepLabel) -> Option<usize> {
        self.position(label).map(|p| self.irreps[p].dim)
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// `sum d_sigma^2`, which equals `|G|` for a complete finite dual.
    pub fn sum_dim_squared(&self) -> usize {
        self.irreps.iter().map(|r| r.dim * r.dim).sum()
    }

    pub fn max_dim(&self) -> usize {
        self.irreps.iter().map(|r| r.dim).max().unwrap_or(0)
    }
}

/// How quadrature nodes are laid out; enables index arithmetic on grids that
/// are closed under the group law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridLayout {
    /// Node `k` is element `k` of a finite group.
    AllElements,
    /// Node `k` is `k / m` on the circle.
    UniformCircle { m: usize },
    /// Euler-angle product grid on SU(2); not closed under multiplication.
    EulerProduct {
        azimuth: usize,
        polar: usize,
    },
}

/// Quadrature for the normalized Haar measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub group: GroupDescriptor,
    /// Products of two matrix coefficients with labels inside this band are
    /// integrated exactly.
    pub band: usize,
    pub layout: GridLayout,
    pub nodes: Vec<GroupElement>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_k w_k h(x_k)` accumulated in node order.
    pub fn integrate<F: Fn(&GroupElement) -> C64>(&self, h: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(C64::new(0.0, 0.0), |acc, (x, w)| acc + h(x) * *w)
    }
}

impl GroupDescriptor {
    pub fn cyclic(n: usize) -> Result<Self> {
        let g = GroupDescriptor::Cyclic { n };
        g.validate()?;
        Ok(g)
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        let g = GroupDescriptor::Dihedral { n };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupDescriptor::Cyclic { n } if n < 1 => {
                Err(Error::InvalidGroup(format!("cyclic group needs N >= 1, got {n}")))
            }
            GroupDescriptor::Dihedral { n } if n < 3 => {
                Err(Error::InvalidGroup(format!("dihedral group needs n >= 3, got {n}")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. })
    }

    pub fn is_abelian(&self) -> bool {
        !matches!(self, GroupDescriptor::Dihedral { .. } | GroupDescriptor::Su2)
    }

    /// Number of elements for finite groups.
    pub fn order(&self) -> Option<usize> {
        match *self {
            GroupDescriptor::Cyclic { n } => Some(n),
            GroupDescriptor::Dihedral { n } => Some(2 * n),
            _ => None,
        }
    }

    /// All elements of a finite group, in index order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.order().map(|n| (0..n).map(GroupElement::Index).collect())
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. } => {
                GroupElement::Index(0)
            }
            GroupDescriptor::Torus => GroupElement::Point(0.0),
            GroupDescriptor::Su2 => GroupElement::Su2 {
                alpha: C64::new(1.0, 0.0),
                beta: C64::new(0.0, 0.0),
            },
        }
    }

    /// Checks that `x` is an element of this group.
    pub fn check_element(&self, x: &GroupElement) -> Result<()> {
        let ok = match (self, x) {
            (GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. }, GroupElement::Index(i)) => {
                *i < self.order().unwrap_or(0)
            }
            (GroupDescriptor::Torus, GroupElement::Point(p)) => p.is_finite() && (0.0..1.0).contains(p),
            (GroupDescriptor::Su2, GroupElement::Su2 { alpha, beta }) => {
                let n = alpha.norm_sqr() + beta.norm_sqr();
                n.is_finite() && (n - 1.0).abs() <= SU2_UNIT_TOL
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x:?} is not an element of {self}")))
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.multiply_unchecked(x, y))
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        Ok(self.inverse_unchecked(x))
    }

    pub(crate) fn multiply_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (self, x, y) {
            (GroupDescriptor::Cyclic { n }, GroupElement::Index(a), GroupElement::Index(b)) => {
                GroupElement::Index(cyclic::multiply(*n, *a, *b))
            }
            (GroupDescriptor::Dihedral { n }, GroupElement::Index(a), GroupElement::Index(b)) => {
                GroupElement::Index(dihedral::multiply(*n, *a, *b))
            }
            (GroupDescriptor::Torus, GroupElement::Point(a), GroupElement::Point(b)) => {
                GroupElement::Point(torus::wrap(a + b))
            }
            (
                GroupDescriptor::Su2,
                GroupElement::Su2 { alpha: a1, beta: b1 },
                GroupElement::Su2 { alpha: a2, beta: b2 },
            ) => {
                let (alpha, beta) = su2::multiply((*a1, *b1), (*a2, *b2));
                GroupElement::Su2 { alpha, beta }
            }
            _ => unreachable!("elements were validated against the group"),
        }
    }

    pub(crate) fn inverse_unchecked(&self, x: &GroupElement) -> GroupElement {
        match (self, x) {
            (GroupDescriptor::Cyclic { n }, GroupElement::Index(a)) => {
                GroupElement::Index(cyclic::inverse(*n, *a))
            }
            (GroupDescriptor::Dihedral { n }, GroupElement::Index(a)) => {
                GroupElement::Index(dihedral::inverse(*n, *a))
            }
            (GroupDescriptor::Torus, GroupElement::Point(a)) => GroupElement::Point(torus::wrap(-a)),
            (GroupDescriptor::Su2, GroupElement::Su2 { alpha, beta }) => GroupElement::Su2 {
                alpha: alpha.conj(),
                beta: -beta,
            },
            _ => unreachable!("elements were validated against the group"),
        }
    }

    /// Dimension of the irrep with this label, or an unknown-irrep error.
    pub fn irrep_dim(&self, label: IrrepLabel) -> Result<usize> {
        let unknown = || Error::UnknownIrrep {
            group: self.to_string(),
            label: label.0,
        };
        match *self {
            GroupDescriptor::Cyclic { n } => {
                if (0..n as i64).contains(&label.0) {
                    Ok(1)
                } else {
                    Err(unknown())
                }
            }
            GroupDescriptor::Dihedral { n } => dihedral::irrep_dim(n, label.0).ok_or_else(unknown),
            GroupDescriptor::Torus => Ok(1),
            GroupDescriptor::Su2 => {
                if label.0 >= 0 {
                    Ok(label.0 as usize + 1)
                } else {
                    Err(unknown())
                }
            }
        }
    }

    /// Smallest band whose truncated dual contains `label`.
    pub fn label_band(&self, label: IrrepLabel) -> Result<usize> {
        self.irrep_dim(label)?;
        Ok(match self {
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. } => 0,
            GroupDescriptor::Torus => label.0.unsigned_abs() as usize,
            GroupDescriptor::Su2 => (label.0 as usize).div_ceil(2),
        })
    }

    /// The unitary matrix `sigma(x)` in the fixed orthonormal basis.
    pub fn irrep_matrix(&self, label: IrrepLabel, x: &GroupElement) -> Result<CMatrix> {
        self.irrep_dim(label)?;
        self.check_element(x)?;
        Ok(self.irrep_matrix_unchecked(label, x))
    }

    pub(crate) fn irrep_matrix_unchecked(&self, label: IrrepLabel, x: &GroupElement) -> CMatrix {
        match (self, x) {
            (GroupDescriptor::Cyclic { n }, GroupElement::Index(a)) => {
                CMatrix::from_element(1, 1, cyclic::character(*n, label.0, *a))
            }
            (GroupDescriptor::Dihedral { n }, GroupElement::Index(a)) => {
                dihedral::irrep_matrix(*n, label.0, *a)
            }
            (GroupDescriptor::Torus, GroupElement::Point(p)) => {
                CMatrix::from_element(1, 1, torus::character(label.0, *p))
            }
            (GroupDescriptor::Su2, GroupElement::Su2 { alpha, beta }) => {
                su2::irrep_matrix(label.0 as usize, *alpha, *beta)
            }
            _ => unreachable!("elements were validated against the group"),
        }
    }

    /// Canonically ordered dual up to `band`.
    ///
    /// Torus: `0, -1, 1, -2, 2, ...` up to `|n| <= band`. SU(2): `twoL =
    /// 0, 1, ..., 2 band`. Finite groups: the full irrep table regardless of
    /// `band`.
    pub fn truncated_dual(&self, band: usize) -> TruncatedDual {
        let irreps = match *self {
            GroupDescriptor::Cyclic { n } => (0..n as i64)
                .map(|k| Irrep { label: IrrepLabel(k), dim: 1 })
                .collect(),
            GroupDescriptor::Dihedral { n } => (0..dihedral::irrep_count(n) as i64)
                .map(|k| Irrep {
                    label: IrrepLabel(k),
                    dim: dihedral::irrep_dim(n, k).expect("index within table"),
                })
                .collect(),
            GroupDescriptor::Torus => {
                let mut v = vec![Irrep { label: IrrepLabel(0), dim: 1 }];
                for k in 1..=band as i64 {
                    v.push(Irrep { label: IrrepLabel(-k), dim: 1 });
                    v.push(Irrep { label: IrrepLabel(k), dim: 1 });
                }
                v
            }
            GroupDescriptor::Su2 => (0..=2 * band as i64)
                .map(|t| Irrep {
                    label: IrrepLabel(t),
                    dim: t as usize + 1,
                })
                .collect(),
        };
        TruncatedDual {
            group: *self,
            band,
            irreps,
        }
    }

    /// A quadrature rule integrating every product `u^sigma_ij conj(u^tau_kl)`
    /// with `sigma`, `tau` inside `band` exactly.
    ///
    /// Finite groups: uniform average over all elements. Torus: `4 band + 1`
    /// uniform nodes (exact for frequencies `|k| <= 4 band`). SU(2): Euler
    /// angles `x = Rz(a) Ry(b) Rz(c)` with `a`, `c` uniform on `[0, 4 pi)`
    /// (`4 band + 1` nodes each) and Gauss–Legendre in `cos b`.
    pub fn quadrature(&self, band: usize) -> QuadratureRule {
        match *self {
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. } => {
                let n = self.order().expect("finite group");
                QuadratureRule {
                    group: *self,
                    band,
                    layout: GridLayout::AllElements,
                    nodes: (0..n).map(GroupElement::Index).collect(),
                    weights: vec![1.0 / n as f64; n],
                }
            }
            GroupDescriptor::Torus => {
                let m = 4 * band + 1;
                QuadratureRule {
                    group: *self,
                    band,
                    layout: GridLayout::UniformCircle { m },
                    nodes: torus::uniform_nodes(m),
                    weights: vec![1.0 / m as f64; m],
                }
            }
            GroupDescriptor::Su2 => {
                let (azimuth, polar) = su2::rule_sizes(band);
                let (nodes, weights) = su2::euler_rule(azimuth, polar);
                QuadratureRule {
                    group: *self,
                    band,
                    layout: GridLayout::EulerProduct { azimuth, polar },
                    nodes,
                    weights,
                }
            }
        }
    }

    /// Points for sampling a band-limited function densely: every element of
    /// a finite group, otherwise a grid with at least `factor` times the
    /// node count of `quadrature(band)`.
    pub fn dense_points(&self, band: usize, factor: usize) -> Vec<GroupElement> {
        let base = self.quadrature(band).len();
        let target = base * factor.max(1);
        match *self {
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. } => {
                self.elements().expect("finite group")
            }
            GroupDescriptor::Torus => torus::uniform_nodes(target),
            GroupDescriptor::Su2 => {
                let mut b = band;
                loop {
                    let (az, pol) = su2::rule_sizes(b);
                    if az * az * pol >= target {
                        return su2::euler_rule(az, pol).0;
                    }
                    b += 1;
                }
            }
        }
    }

    /// A Haar-random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match *self {
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::Dihedral { .. } => {
                GroupElement::Index(rng.random_range(0..self.order().expect("finite group")))
            }
            GroupDescriptor::Torus => GroupElement::Point(rng.random::<f64>()),
            GroupDescriptor::Su2 => {
                let (alpha, beta) = su2::random_unit(rng);
                GroupElement::Su2 { alpha, beta }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let g: GroupDescriptor = serde_json::from_str(r#"{"kind":"cyclic","N":8}"#).unwrap();
        assert_eq!(g, GroupDescriptor::Cyclic { n: 8 });
        let g: GroupDescriptor = serde_json::from_str(r#"{"kind":"dihedral","n":4}"#).unwrap();
        assert_eq!(g, GroupDescriptor::Dihedral { n: 4 });
        let g: GroupDescriptor = serde_json::from_str(r#"{"kind":"su2"}"#).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"kind":"su2"}"#);
        assert_eq!(
            serde_json::to_string(&GroupDescriptor::Cyclic { n: 8 }).unwrap(),
            r#"{"kind":"cyclic","N":8}"#
        );
        assert!(serde_json::from_str::<GroupDescriptor>(r#"{"kind":"dihedral","n":2}"#).is_err());
        assert!(serde_json::from_str::<GroupDescriptor>(r#"{"kind":"cyclic","N":0}"#).is_err());
        assert!(serde_json::from_str::<GroupDescriptor>(r#"{"kind":"so3"}"#).is_err());
    }

    #[test]
    fn torus_law() {
        let t = GroupDescriptor::Torus;
        let z = t.multiply(&GroupElement::Point(0.25), &GroupElement::Point(0.9)).unwrap();
        match z {
            GroupElement::Point(p) => assert!((p - 0.15).abs() < 1e-15),
            _ => panic!(),
        }
        assert!(t.check_element(&GroupElement::Point(1.0)).is_err());
        assert!(t.check_element(&GroupElement::Index(0)).is_err());
    }

    #[test]
    fn su2_identity_is_neutral() {
        let g = GroupDescriptor::Su2;
        let y = su2_from_euler(0.3, 1.1, -0.4);
        assert_eq!(g.multiply(&g.identity(), &y).unwrap(), y);
    }

    #[test]
    fn su2_rejects_non_unit() {
        let g = GroupDescriptor::Su2;
        let bad = GroupElement::Su2 {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.1, 0.0),
        };
        assert!(matches!(g.multiply(&bad, &g.identity()), Err(Error::InvalidElement(_))));
    }

    #[test]
    fn unknown_irreps() {
        assert!(GroupDescriptor::Cyclic { n: 4 }.irrep_dim(IrrepLabel(4)).is_err());
        assert!(GroupDescriptor::Dihedral { n: 4 }.irrep_dim(IrrepLabel(5)).is_err());
        assert!(GroupDescriptor::Su2.irrep_dim(IrrepLabel(-1)).is_err());
        let e = GroupDescriptor::Su2.irrep_matrix(IrrepLabel(-2), &GroupDescriptor::Su2.identity());
        assert!(matches!(e, Err(Error::UnknownIrrep { .. })));
    }

    #[test]
    fn torus_character_value() {
        let m = GroupDescriptor::Torus
            .irrep_matrix(IrrepLabel(3), &GroupElement::Point(0.25))
            .unwrap();
        assert!((m[(0, 0)] - C64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn su2_half_spin_trace() {
        for &theta in &[0.0, 0.7, 2.0, 5.5] {
            let x = GroupElement::Su2 {
                alpha: C64::from_polar(1.0, theta / 2.0),
                beta: C64::new(0.0, 0.0),
            };
            let m = GroupDescriptor::Su2.irrep_matrix(IrrepLabel(1), &x).unwrap();
            assert!((m.trace() - C64::new(2.0 * (theta / 2.0).cos(), 0.0)).norm() < 1e-14);
        }
        let id = GroupDescriptor::Su2.irrep_matrix(IrrepLabel(1), &GroupDescriptor::Su2.identity()).unwrap();
        assert!((id - CMatrix::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn dual_orders() {
        let d = GroupDescriptor::Torus.truncated_dual(1);
        let labels: Vec<i64> = d.labels().map(|l| l.0).collect();
        assert_eq!(labels, vec![0, -1, 1]);
        let d = GroupDescriptor::Su2.truncated_dual(1);
        let labels: Vec<i64> = d.labels().map(|l| l.0).collect();
        assert_eq!(labels, vec![0, 1, 2]);
        let d = GroupDescriptor::Dihedral { n: 4 }.truncated_dual(0);
        let dims: Vec<usize> = d.irreps.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(d.sum_dim_squared(), 8);
    }

    #[test]
    fn z2_rule() {
        let q = GroupDescriptor::Cyclic { n: 2 }.quadrature(0);
        assert_eq!(q.nodes, vec![GroupElement::Index(0), GroupElement::Index(1)]);
        assert_eq!(q.weights, vec![0.5, 0.5]);
    }

    #[test]
    fn torus_rule_geometric_sum() {
        for band in 0..5 {
            let q = GroupDescriptor::Torus.quadrature(band);
            assert!(q.len() > 4 * band);
            for k in -(4 * band as i64)..=(4 * band as i64) {
                let v = q.integrate(|x| match x {
                    GroupElement::Point(p) => torus::character(k, *p),
                    _ => unreachable!(),
                });
                let want = if k == 0 { 1.0 } else { 0.0 };
                assert!((v - C64::new(want, 0.0)).norm() < 1e-13, "band {band} k {k}");
            }
        }
    }

    #[test]
    fn dense_points_are_denser() {
        for g in [GroupDescriptor::Torus, GroupDescriptor::Su2] {
            let base = g.quadrature(2).len();
            assert!(g.dense_points(2, 10).len() >= 10 * base);
        }
        assert_eq!(GroupDescriptor::Dihedral { n: 4 }.dense_points(0, 10).len(), 8);
    }
}
