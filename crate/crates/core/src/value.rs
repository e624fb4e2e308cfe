//! Finite-dimensional value spaces `A`: normed vector spaces and matrix
//! algebras.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    L1,
    L2,
    Linf,
    /// Largest singular value; values are `dim x dim` matrices.
    Operator,
}

/// Describes `A`. Serialized as `{"dim":2,"norm":"l2","algebra":false}`.
///
/// `algebra` enables the product; it is only allowed on matrix spaces
/// (`norm = operator`, product = matrix product) and on the scalar space
/// `dim = 1` (product = complex product). Both are submultiplicative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct ValueSpaceDescriptor {
    pub dim: usize,
    pub norm: NormKind,
    pub algebra: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    dim: usize,
    norm: NormKind,
    #[serde(default)]
    algebra: bool,
}

impl TryFrom<RawSpace> for ValueSpaceDescriptor {
    type Error = Error;

    fn try_from(r: RawSpace) -> Result<Self> {
        ValueSpaceDescriptor::new(r.dim, r.norm, r.algebra)
    }
}

impl std::fmt::Display for ValueSpaceDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let norm = match self.norm {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
            NormKind::Operator => "op",
        };
        write!(f, "{norm}:{}{}", self.dim, if self.algebra { ":alg" } else { "" })
    }
}

impl ValueSpaceDescriptor {
    pub fn new(dim: usize, norm: NormKind, algebra: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("value space dimension must be >= 1".into()));
        }
        if algebra && !(norm == NormKind::Operator || dim == 1) {
            return Err(Error::Config(format!(
                "algebra structure needs norm=operator or dim=1, got {norm:?} with dim {dim}"
            )));
        }
        Ok(Self { dim, norm, algebra })
    }

    /// The complex numbers as a Banach algebra.
    pub fn scalar() -> Self {
        Self {
            dim: 1,
            norm: NormKind::L2,
            algebra: true,
        }
    }

    /// `n x n` complex matrices under the operator norm.
    pub fn matrix_algebra(n: usize) -> Result<Self> {
        Self::new(n, NormKind::Operator, true)
    }

    pub fn is_matrix(&self) -> bool {
        self.norm == NormKind::Operator
    }

    /// Number of complex coordinates of one value.
    pub fn value_len(&self) -> usize {
        if self.is_matrix() {
            self.dim * self.dim
        } else {
            self.dim
        }
    }

    pub fn zero(&self) -> AValue {
        AValue {
            shape: self.shape(),
            data: vec![C64::new(0.0, 0.0); self.value_len()],
        }
    }

    /// Multiplicative unit of an algebra space.
    pub fn one(&self) -> Result<AValue> {
        self.require_algebra()?;
        let mut v = self.zero();
        if self.is_matrix() {
            for i in 0..self.dim {
                v.data[i * self.dim + i] = C64::new(1.0, 0.0);
            }
        } else {
            v.data[0] = C64::new(1.0, 0.0);
        }
        Ok(v)
    }

    fn shape(&self) -> Shape {
        if self.is_matrix() {
            Shape::Matrix(self.dim)
        } else {
            Shape::Vector
        }
    }

    pub fn from_vec(&self, data: Vec<C64>) -> Result<AValue> {
        let v = AValue {
            shape: self.shape(),
            data,
        };
        self.check(&v)?;
        Ok(v)
    }

    /// Shape and finiteness check.
    pub fn check(&self, v: &AValue) -> Result<()> {
        if v.shape != self.shape() || v.data.len() != self.value_len() {
            return Err(Error::Dimension(format!(
                "value with {} entries ({:?}) does not conform to space {self}",
                v.data.len(),
                v.shape
            )));
        }
        if !v.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Dimension("value has non-finite entries".into()));
        }
        Ok(())
    }

    pub fn norm(&self, v: &AValue) -> Result<f64> {
        self.check(v)?;
        Ok(self.norm_unchecked(v))
    }

    pub(crate) fn norm_unchecked(&self, v: &AValue) -> f64 {
        norm_of(self.norm, self.dim, &v.data)
    }

    fn require_algebra(&self) -> Result<()> {
        if self.algebra {
            Ok(())
        } else {
            Err(Error::UnsupportedOperation(format!(
                "value space {self} is not an algebra"
            )))
        }
    }

    /// Algebra product `u v`.
    pub fn product(&self, u: &AValue, v: &AValue) -> Result<AValue> {
        self.require_algebra()?;
        self.check(u)?;
        self.check(v)?;
        Ok(self.product_unchecked(u, v))
    }

    pub(crate) fn product_unchecked(&self, u: &AValue, v: &AValue) -> AValue {
        let mut out = self.zero();
        self.mul_add_into(&mut out, u, v);
        out
    }

    /// `acc += u v`.
    pub(crate) fn mul_add_into(&self, acc: &mut AValue, u: &AValue, v: &AValue) {
        let n = self.dim;
        if self.is_matrix() {
            for i in 0..n {
                for k in 0..n {
                    let a = u.data[i * n + k];
                    for j in 0..n {
                        acc.data[i * n + j] += a * v.data[k * n + j];
                    }
                }
            }
        } else {
            acc.data[0] += u.data[0] * v.data[0];
        }
    }

    /// Entries drawn independently and uniformly from the complex unit disc.
    pub fn random_value<R: Rng + ?Sized>(&self, rng: &mut R) -> AValue {
        AValue {
            shape: self.shape(),
            data: (0..self.value_len()).map(|_| random_in_disc(rng)).collect(),
        }
    }
}

pub(crate) fn random_in_disc<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let r = rng.random::<f64>().sqrt();
    let t = rng.random::<f64>() * std::f64::consts::TAU;
    C64::from_polar(r, t)
}

fn norm_of(kind: NormKind, dim: usize, data: &[C64]) -> f64 {
    match kind {
        NormKind::L1 => data.iter().map(|z| z.norm()).sum(),
        NormKind::L2 => data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        NormKind::Linf => data.iter().map(|z| z.norm()).fold(0.0, f64::max),
        NormKind::Operator => {
            if dim == 1 {
                data[0].norm()
            } else {
                DMatrix::from_row_slice(dim, dim, data)
                    .singular_values()
                    .iter()
                    .copied()
                    .fold(0.0, f64::max)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Vector,
    Matrix(usize),
}

/// One element of `A`: a complex vector, or a square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AValue {
    shape: Shape,
    data: Vec<C64>,
}

impl AValue {
    pub fn vector(data: Vec<C64>) -> Self {
        AValue {
            shape: Shape::Vector,
            data,
        }
    }

    /// Square matrix from row-major entries.
    pub fn matrix(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries do not form a {n}x{n} matrix",
                data.len()
            )));
        }
        Ok(AValue {
            shape: Shape::Matrix(n),
            data,
        })
    }

    pub fn scalar(z: C64) -> Self {
        AValue::vector(vec![z])
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self.shape, Shape::Matrix(_))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Shapes must agree; callers validate against the space first.
    pub fn add(&self, other: &AValue) -> AValue {
        let mut out = self.clone();
        out.axpy(C64::new(1.0, 0.0), other);
        out
    }

    pub fn sub(&self, other: &AValue) -> AValue {
        let mut out = self.clone();
        out.axpy(C64::new(-1.0, 0.0), other);
        out
    }

    pub fn scale(&self, c: C64) -> AValue {
        AValue {
            shape: self.shape,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: C64, other: &AValue) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    /// Largest coordinate difference.
    pub fn max_abs_diff(&self, other: &AValue) -> f64 {
        if self.data.len() != other.data.len() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AValueRepr {
    Matrix(Vec<Vec<[f64; 2]>>),
    Vector(Vec<[f64; 2]>),
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

impl Serialize for AValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self.shape {
            Shape::Vector => AValueRepr::Vector(self.data.iter().map(pair).collect()),
            Shape::Matrix(n) => AValueRepr::Matrix(
                self.data
                    .chunks(n.max(1))
                    .map(|row| row.iter().map(pair).collect())
                    .collect(),
            ),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match AValueRepr::deserialize(d)? {
            AValueRepr::Vector(v) => Ok(AValue::vector(
                v.into_iter().map(|[re, im]| C64::new(re, im)).collect(),
            )),
            AValueRepr::Matrix(rows) => {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(D::Error::custom("matrix value must be square"));
                }
                let data = rows
                    .into_iter()
                    .flatten()
                    .map(|[re, im]| C64::new(re, im))
                    .collect();
                Ok(AValue {
                    shape: Shape::Matrix(n),
                    data,
                })
            }
        }
    }
}
