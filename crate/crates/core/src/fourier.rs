//! Vector-valued Fourier analysis and synthesis.
//!
//! A coefficient table stores, for every irrep `sigma` of a truncated dual, a
//! `d x d` block of values in `A`. Entry `(i, j)` is the coefficient paired
//! with the matrix coefficient `u^sigma_ij` in the inversion sum
//!
//! ```text
//! f(x) = sum_sigma d_sigma sum_{i,j} block_sigma(i, j) u^sigma_ij(x).
//! ```
//!
//! Which analysis kernel produces such blocks depends on an index convention
//! that is settled once per process by [`Convention::validated`].

use std::sync::OnceLock;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{
    CMatrix, GroupDescriptor, GroupElement, IrrepLabel, QuadratureRule, TruncatedDual, C64,
};
use crate::value::{AValue, ValueSpaceDescriptor};
use crate::SCHEMA_VERSION;

/// Index convention pairing the analysis integral with the inversion sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Entry `(i, j)` is `int <sigma(x)* xi_j, xi_i> f(x) dx = int conj(u_ji) f`,
    /// synthesized against `u_ij`.
    Literal,
    /// Analysis as in `Literal`, synthesized against `u_ji`.
    LiteralTransposedSynthesis,
    /// Entry `(i, j)` is `int conj(u_ij) f`, synthesized against `u_ij`.
    ConjugateEntry,
}

impl Convention {
    pub const CANDIDATES: [Convention; 3] = [
        Convention::Literal,
        Convention::LiteralTransposedSynthesis,
        Convention::ConjugateEntry,
    ];

    /// The first candidate passing [`Convention::self_test`], computed once.
    pub fn validated() -> Convention {
        static CHOSEN: OnceLock<Convention> = OnceLock::new();
        *CHOSEN.get_or_init(|| {
            Convention::CANDIDATES
                .into_iter()
                .find(|c| c.self_test().is_ok())
                .expect("no index convention passes the round-trip self-test")
        })
    }

    fn analysis_kernel(self, m: &CMatrix, i: usize, j: usize) -> C64 {
        match self {
            Convention::Literal | Convention::LiteralTransposedSynthesis => m[(j, i)].conj(),
            Convention::ConjugateEntry => m[(i, j)].conj(),
        }
    }

    fn synthesis_kernel(self, m: &CMatrix, i: usize, j: usize) -> C64 {
        match self {
            Convention::Literal | Convention::ConjugateEntry => m[(i, j)],
            Convention::LiteralTransposedSynthesis => m[(j, i)],
        }
    }

    /// Checks this convention on the two-dimensional irrep of `D_3`:
    /// analysis followed by synthesis must reproduce an asymmetric matrix
    /// coefficient, and the coefficient block of a group convolution must be
    /// the ordered product of the factors' blocks.
    pub fn self_test(self) -> Result<()> {
        const TOL: f64 = 1e-13;
        let group = GroupDescriptor::Dihedral { n: 3 };
        let space = ValueSpaceDescriptor::scalar();
        let grid = SpectralGrid::new(group, 0);
        let tau = grid.dual.len() - 1;
        let label = grid.dual.irreps[tau].label;
        let fail = |what: &str| Err(Error::Precision(format!("{self:?} fails {what}")));

        let coefficient = |i: usize, j: usize, scale: f64| -> Vec<AValue> {
            grid.rule
                .nodes
                .iter()
                .map(|x| AValue::scalar(group.irrep_matrix_unchecked(label, x)[(i, j)] * scale))
                .collect()
        };
        let f = GridFunction::new(group, space, grid.rule.clone(), coefficient(0, 1, 1.0))?;
        let fc = grid.forward_with(self, &f, Exec::Serial)?;
        for (x, want) in grid.rule.nodes.iter().zip(&f.samples) {
            if inverse(&fc, x)?.max_abs_diff(want) > TOL {
                return fail("round trip");
            }
        }

        let mut g_samples = coefficient(1, 0, 1.0);
        for (s, t) in g_samples.iter_mut().zip(coefficient(0, 0, 0.5)) {
            *s = s.add(&t);
        }
        let mut f_samples = f.samples.clone();
        for (s, t) in f_samples.iter_mut().zip(coefficient(1, 1, -2.0)) {
            *s = s.add(&t);
        }
        let f = GridFunction::new(group, space, grid.rule.clone(), f_samples)?;
        let g = GridFunction::new(group, space, grid.rule.clone(), g_samples)?;
        let h = crate::operators::convolve_direct(&f, &g)?;
        let (fc, gc, hc) = (
            grid.forward_with(self, &f, Exec::Serial)?,
            grid.forward_with(self, &g, Exec::Serial)?,
            grid.forward_with(self, &h, Exec::Serial)?,
        );
        let (fb, gb, hb) = (&fc.blocks[tau], &gc.blocks[tau], &hc.blocks[tau]);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = space.zero();
                for k in 0..2 {
                    space.mul_add_into(&mut acc, fb.get(i, k), gb.get(k, j));
                }
                if acc.max_abs_diff(hb.get(i, j)) > TOL {
                    return fail("convolution block product");
                }
            }
        }
        Ok(())
    }
}

/// A `d x d` block of values, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    dim: usize,
    entries: Vec<AValue>,
}

impl Block {
    pub fn zeros(dim: usize, space: &ValueSpaceDescriptor) -> Self {
        Block {
            dim,
            entries: vec![space.zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &AValue {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut AValue {
        &mut self.entries[i * self.dim + j]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[AValue] {
        &self.entries
    }

    pub fn scale(&self, c: C64) -> Block {
        Block {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Block {
        let d = self.dim;
        Block {
            dim: d,
            entries: (0..d * d).map(|k| self.get(k % d, k / d).clone()).collect(),
        }
    }
}

/// Fourier coefficients of a function on a truncated dual.
///
/// Blocks are stored for every irrep of the dual, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    pub space: ValueSpaceDescriptor,
    pub dual: TruncatedDual,
    pub convention: Convention,
    blocks: Vec<Block>,
}

impl FourierCoefficients {
    pub fn zeros(space: ValueSpaceDescriptor, dual: TruncatedDual) -> Self {
        let blocks = dual.irreps.iter().map(|r| Block::zeros(r.dim, &space)).collect();
        FourierCoefficients {
            space,
            dual,
            convention: Convention::validated(),
            blocks,
        }
    }

    fn from_raw(space: ValueSpaceDescriptor, dual: TruncatedDual, convention: Convention, blocks: Vec<Block>) -> Self {
        FourierCoefficients {
            space,
            dual,
            convention,
            blocks,
        }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.dual.group
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `(label, dim, block)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (IrrepLabel, usize, &Block)> + '_ {
        self.dual
            .irreps
            .iter()
            .zip(&self.blocks)
            .map(|(r, b)| (r.label, r.dim, b))
    }

    pub fn block(&self, label: IrrepLabel) -> Option<&Block> {
        self.dual.position(label).map(|p| &self.blocks[p])
    }

    /// Sets entry `(i, j)` (zero-based) of the block at `label`.
    pub fn set(&mut self, label: IrrepLabel, i: usize, j: usize, value: AValue) -> Result<()> {
        self.space.check(&value)?;
        let p = self.dual.position(label).ok_or(Error::UnknownIrrep {
            group: self.group().to_string(),
            label: label.0,
        })?;
        let d = self.dual.irreps[p].dim;
        if i >= d || j >= d {
            return Err(Error::Dimension(format!(
                "index ({i}, {j}) outside the {d}x{d} block of irrep {label}"
            )));
        }
        *self.blocks[p].get_mut(i, j) = value;
        Ok(())
    }

    /// Applies `f` to every block, keeping space, dual and convention.
    pub fn map_blocks<F: Fn(IrrepLabel, &Block) -> Block>(&self, f: F) -> Self {
        let blocks = self
            .iter()
            .map(|(label, _, b)| f(label, b))
            .collect();
        FourierCoefficients {
            space: self.space,
            dual: self.dual.clone(),
            convention: self.convention,
            blocks,
        }
    }

    pub(crate) fn with_blocks(&self, blocks: Vec<Block>) -> Self {
        FourierCoefficients {
            space: self.space,
            dual: self.dual.clone(),
            convention: self.convention,
            blocks,
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map_blocks(|_, b| b.scale(c))
    }

    /// `self + c other`; both tables must share space and dual.
    pub fn add_scaled(&self, c: C64, other: &FourierCoefficients) -> Result<Self> {
        self.check_compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let mut out = a.clone();
                for (x, y) in out.entries.iter_mut().zip(&b.entries) {
                    x.axpy(c, y);
                }
                out
            })
            .collect();
        Ok(self.with_blocks(blocks))
    }

    /// Every block transposed.
    pub fn transposed(&self) -> Self {
        self.map_blocks(|_, b| b.transpose())
    }

    pub(crate) fn check_compatible(&self, other: &FourierCoefficients) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Dimension(format!(
                "value spaces differ: {} vs {}",
                self.space, other.space
            )));
        }
        if self.dual != other.dual {
            return Err(Error::Dimension("coefficient tables live on different duals".into()));
        }
        if self.convention != other.convention {
            return Err(Error::Config("coefficient tables use different conventions".into()));
        }
        Ok(())
    }

    /// Largest coordinate difference over all entries.
    pub fn max_abs_diff(&self, other: &FourierCoefficients) -> f64 {
        if self.dual != other.dual {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.entries.iter().zip(&b.entries))
            .map(|(x, y)| x.max_abs_diff(y))
            .fold(0.0, f64::max)
    }

    /// Number of entries that are not exactly zero.
    pub fn nonzero_entries(&self) -> usize {
        self.blocks
            .iter()
            .flat_map(|b| &b.entries)
            .filter(|v| !v.is_zero())
            .count()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientsRepr {
    schema_version: u32,
    group: GroupDescriptor,
    band: usize,
    space: ValueSpaceDescriptor,
    convention: Convention,
    data: IndexMap<String, Vec<Vec<AValue>>>,
}

impl Serialize for FourierCoefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let data = self
            .iter()
            .map(|(label, d, b)| {
                let rows = (0..d).map(|i| (0..d).map(|j| b.get(i, j).clone()).collect()).collect();
                (label.to_string(), rows)
            })
            .collect();
        CoefficientsRepr {
            schema_version: SCHEMA_VERSION,
            group: self.group(),
            band: self.dual.band,
            space: self.space,
            convention: self.convention,
            data,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourierCoefficients {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CoefficientsRepr::deserialize(d)?;
        if repr.convention != Convention::validated() {
            return Err(D::Error::custom(format!(
                "coefficients use convention {:?}, this build validated {:?}",
                repr.convention,
                Convention::validated()
            )));
        }
        let dual = repr.group.truncated_dual(repr.band);
        let mut out = FourierCoefficients::zeros(repr.space, dual);
        for (key, rows) in repr.data {
            let label = IrrepLabel(
                key.parse()
                    .map_err(|_| D::Error::custom(format!("irrep key {key:?} is not an integer")))?,
            );
            let p = out
                .dual
                .position(label)
                .ok_or_else(|| D::Error::custom(format!("irrep {label} outside the dual")))?;
            let dim = out.dual.irreps[p].dim;
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(D::Error::custom(format!("block of irrep {label} must be {dim}x{dim}")));
            }
            for (i, row) in rows.into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    out.set(label, i, j, v).map_err(D::Error::custom)?;
                }
            }
        }
        Ok(out)
    }
}

/// Samples of a function at the nodes of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub group: GroupDescriptor,
    pub space: ValueSpaceDescriptor,
    pub rule: QuadratureRule,
    pub samples: Vec<AValue>,
}

impl GridFunction {
    pub fn new(
        group: GroupDescriptor,
        space: ValueSpaceDescriptor,
        rule: QuadratureRule,
        samples: Vec<AValue>,
    ) -> Result<Self> {
        if rule.group != group {
            return Err(Error::Config(format!(
                "quadrature rule for {} used with group {group}",
                rule.group
            )));
        }
        if samples.len() != rule.len() {
            return Err(Error::Dimension(format!(
                "{} samples for {} quadrature nodes",
                samples.len(),
                rule.len()
            )));
        }
        for s in &samples {
            space.check(s)?;
        }
        Ok(GridFunction {
            group,
            space,
            rule,
            samples,
        })
    }

    /// Samples `h` at the nodes of `quadrature(band)`.
    pub fn from_fn<F: FnMut(&GroupElement) -> AValue>(
        group: GroupDescriptor,
        space: ValueSpaceDescriptor,
        band: usize,
        h: F,
    ) -> Result<Self> {
        let rule = group.quadrature(band);
        let samples = rule.nodes.iter().map(h).collect();
        GridFunction::new(group, space, rule, samples)
    }

    /// `a self + b other` on the same grid.
    pub fn combine(&self, a: C64, other: &GridFunction, b: C64) -> Result<GridFunction> {
        if self.rule != other.rule || self.space != other.space {
            return Err(Error::Dimension("grid functions live on different grids".into()));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| {
                let mut v = x.scale(a);
                v.axpy(b, y);
                v
            })
            .collect();
        Ok(GridFunction {
            samples,
            ..self.clone()
        })
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        if self.samples.len() != other.samples.len() {
            return f64::INFINITY;
        }
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    schema_version: u32,
    group: GroupDescriptor,
    space: ValueSpaceDescriptor,
    band: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<GroupElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    samples: Vec<AValue>,
}

impl Serialize for GridFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GridRepr {
            schema_version: SCHEMA_VERSION,
            group: self.group,
            space: self.space,
            band: self.rule.band,
            nodes: Some(self.rule.nodes.clone()),
            weights: Some(self.rule.weights.clone()),
            samples: self.samples.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridFunction {
    /// Nodes and weights are implied by `(group, band)`; listed ones are
    /// informational and ignored.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = GridRepr::deserialize(d)?;
        GridFunction::new(r.group, r.space, r.group.quadrature(r.band), r.samples)
            .map_err(D::Error::custom)
    }
}

/// One spectral mode: the value of block entry `(i, j)` at irrep `sigma`.
///
/// Indices are zero-based in memory and one-based in JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub sigma: IrrepLabel,
    pub i: usize,
    pub j: usize,
    pub value: AValue,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeRepr {
    sigma: IrrepLabel,
    i: usize,
    j: usize,
    value: AValue,
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModeRepr {
            sigma: self.sigma,
            i: self.i + 1,
            j: self.j + 1,
            value: self.value.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ModeRepr::deserialize(d)?;
        if r.i == 0 || r.j == 0 {
            return Err(D::Error::custom("mode indices i, j are 1-based"));
        }
        Ok(Mode {
            sigma: r.sigma,
            i: r.i - 1,
            j: r.j - 1,
            value: r.value,
        })
    }
}

/// A function given by finitely many spectral modes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandlimitedFunction {
    pub group: GroupDescriptor,
    pub space: ValueSpaceDescriptor,
    pub modes: Vec<Mode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BandlimitedRepr {
    #[serde(default)]
    #[allow(dead_code)]
    schema_version: Option<u32>,
    group: GroupDescriptor,
    space: ValueSpaceDescriptor,
    modes: Vec<Mode>,
}

impl<'de> Deserialize<'de> for BandlimitedFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = BandlimitedRepr::deserialize(d)?;
        BandlimitedFunction::new(r.group, r.space, r.modes).map_err(D::Error::custom)
    }
}

impl BandlimitedFunction {
    pub fn new(group: GroupDescriptor, space: ValueSpaceDescriptor, modes: Vec<Mode>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for m in &modes {
            let d = group.irrep_dim(m.sigma)?;
            if m.i >= d || m.j >= d {
                return Err(Error::Dimension(format!(
                    "mode ({}, {}) outside the {d}x{d} block of irrep {}",
                    m.i + 1,
                    m.j + 1,
                    m.sigma
                )));
            }
            space.check(&m.value)?;
            if !seen.insert((m.sigma, m.i, m.j)) {
                return Err(Error::Config(format!(
                    "duplicate mode ({}, {}, {})",
                    m.sigma,
                    m.i + 1,
                    m.j + 1
                )));
            }
        }
        Ok(BandlimitedFunction { group, space, modes })
    }

    pub fn zero(group: GroupDescriptor, space: ValueSpaceDescriptor) -> Self {
        BandlimitedFunction {
            group,
            space,
            modes: Vec::new(),
        }
    }

    /// The nonzero entries of `c` as modes, in dual and row-major order.
    pub fn from_coefficients(c: &FourierCoefficients) -> Self {
        let modes = c
            .iter()
            .flat_map(|(sigma, d, block)| {
                block.entries().iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| Mode {
                    sigma,
                    i: k / d,
                    j: k % d,
                    value: v.clone(),
                })
            })
            .collect();
        BandlimitedFunction {
            group: c.group(),
            space: c.space,
            modes,
        }
    }

    /// Smallest band containing every mode.
    pub fn band(&self) -> usize {
        self.modes
            .iter()
            .map(|m| self.group.label_band(m.sigma).expect("validated label"))
            .max()
            .unwrap_or(0)
    }

    /// The exact coefficient table on `dual`; fails if a mode lies outside it.
    pub fn coefficients(&self, dual: &TruncatedDual) -> Result<FourierCoefficients> {
        if dual.group != self.group {
            return Err(Error::Config(format!(
                "dual of {} used with a function on {}",
                dual.group, self.group
            )));
        }
        let mut c = FourierCoefficients::zeros(self.space, dual.clone());
        for m in &self.modes {
            if dual.position(m.sigma).is_none() {
                return Err(Error::Precision(format!(
                    "mode at irrep {} lies outside the dual of band {}",
                    m.sigma, dual.band
                )));
            }
            c.set(m.sigma, m.i, m.j, m.value.clone())?;
        }
        Ok(c)
    }

    /// Point evaluation of the inversion sum.
    pub fn evaluate(&self, x: &GroupElement) -> Result<AValue> {
        self.group.check_element(x)?;
        let conv = Convention::validated();
        let mut out = self.space.zero();
        let mut cache: Vec<(IrrepLabel, CMatrix)> = Vec::new();
        for m in &self.modes {
            let mat = match cache.iter().find(|(l, _)| *l == m.sigma) {
                Some((_, mat)) => mat,
                None => {
                    cache.push((m.sigma, self.group.irrep_matrix_unchecked(m.sigma, x)));
                    &cache.last().expect("just pushed").1
                }
            };
            let d = mat.nrows() as f64;
            out.axpy(conv.synthesis_kernel(mat, m.i, m.j) * d, &m.value);
        }
        Ok(out)
    }
}

/// A quadrature rule, a truncated dual, and every irrep matrix at every
/// node, for repeated transforms on one grid.
#[derive(Debug, Clone)]
pub struct SpectralGrid {
    pub rule: QuadratureRule,
    pub dual: TruncatedDual,
    /// `matrices[node][irrep]`.
    matrices: Vec<Vec<CMatrix>>,
}

impl SpectralGrid {
    /// Grid with `quadrature(band)` and `truncated_dual(band)`.
    pub fn new(group: GroupDescriptor, band: usize) -> Self {
        Self::from_parts(group.quadrature(band), group.truncated_dual(band))
            .expect("matching rule and dual")
    }

    pub fn from_parts(rule: QuadratureRule, dual: TruncatedDual) -> Result<Self> {
        Self::from_parts_with(rule, dual, Exec::default())
    }

    pub fn from_parts_with(rule: QuadratureRule, dual: TruncatedDual, exec: Exec) -> Result<Self> {
        check_rule_covers(&rule, &dual)?;
        let group = dual.group;
        let matrices = exec.map_slice(&rule.nodes, |x| {
            dual.irreps
                .iter()
                .map(|r| group.irrep_matrix_unchecked(r.label, x))
                .collect()
        });
        Ok(SpectralGrid { rule, dual, matrices })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.dual.group
    }

    pub fn forward(&self, f: &GridFunction) -> Result<FourierCoefficients> {
        self.forward_with(Convention::validated(), f, Exec::default())
    }

    pub fn forward_exec(&self, f: &GridFunction, exec: Exec) -> Result<FourierCoefficients> {
        self.forward_with(Convention::validated(), f, exec)
    }

    pub(crate) fn forward_with(
        &self,
        conv: Convention,
        f: &GridFunction,
        exec: Exec,
    ) -> Result<FourierCoefficients> {
        if f.rule != self.rule {
            return Err(Error::Config("grid function sampled on a different rule".into()));
        }
        let space = f.space;
        let blocks = exec.map_range(self.dual.len(), |p| {
            let d = self.dual.irreps[p].dim;
            let mut block = Block::zeros(d, &space);
            for (k, (sample, w)) in f.samples.iter().zip(&self.rule.weights).enumerate() {
                let m = &self.matrices[k][p];
                for i in 0..d {
                    for j in 0..d {
                        block.get_mut(i, j).axpy(conv.analysis_kernel(m, i, j) * *w, sample);
                    }
                }
            }
            block
        });
        Ok(FourierCoefficients::from_raw(space, self.dual.clone(), conv, blocks))
    }

    /// Inverse transform at every node.
    pub fn synthesize_coefficients(&self, c: &FourierCoefficients, exec: Exec) -> Result<GridFunction> {
        if c.dual != self.dual {
            return Err(Error::Config("coefficients live on a different dual".into()));
        }
        let samples = exec.map_range(self.rule.len(), |k| {
            sum_inverse(c, |p| &self.matrices[k][p])
        });
        GridFunction::new(self.group(), c.space, self.rule.clone(), samples)
    }

    pub fn synthesize(&self, f: &BandlimitedFunction, exec: Exec) -> Result<GridFunction> {
        if f.band() > self.rule.band && !f.group.is_finite() {
            return Err(Error::Precision(format!(
                "function band {} exceeds quadrature band {}",
                f.band(),
                self.rule.band
            )));
        }
        let c = f.coefficients(&self.dual)?;
        self.synthesize_coefficients(&c, exec)
    }
}

fn check_rule_covers(rule: &QuadratureRule, dual: &TruncatedDual) -> Result<()> {
    if rule.group != dual.group {
        return Err(Error::Config(format!(
            "quadrature on {} paired with dual of {}",
            rule.group, dual.group
        )));
    }
    if !rule.group.is_finite() && rule.band < dual.band {
        return Err(Error::Precision(format!(
            "quadrature band {} is below the dual band {}",
            rule.band, dual.band
        )));
    }
    Ok(())
}

fn sum_inverse<'a, M: Fn(usize) -> &'a CMatrix>(c: &FourierCoefficients, matrix: M) -> AValue {
    let conv = c.convention;
    let mut out = c.space.zero();
    for (p, (_, d, block)) in c.iter().enumerate() {
        if block.entries.iter().all(AValue::is_zero) {
            continue;
        }
        let m = matrix(p);
        let df = d as f64;
        for i in 0..d {
            for j in 0..d {
                out.axpy(conv.synthesis_kernel(m, i, j) * df, block.get(i, j));
            }
        }
    }
    out
}

/// Forward transform of grid samples onto `dual`.
pub fn forward(f: &GridFunction, dual: &TruncatedDual) -> Result<FourierCoefficients> {
    SpectralGrid::from_parts(f.rule.clone(), dual.clone())?.forward(f)
}

/// The inversion sum at `x`.
pub fn inverse(c: &FourierCoefficients, x: &GroupElement) -> Result<AValue> {
    let group = c.group();
    group.check_element(x)?;
    let mats: Vec<CMatrix> = c
        .dual
        .irreps
        .iter()
        .map(|r| group.irrep_matrix_unchecked(r.label, x))
        .collect();
    Ok(sum_inverse(c, |p| &mats[p]))
}

/// Inverse transform at many points.
pub fn evaluate_many(c: &FourierCoefficients, points: &[GroupElement], exec: Exec) -> Result<Vec<AValue>> {
    for x in points {
        c.group().check_element(x)?;
    }
    Ok(exec.map_slice(points, |x| inverse(c, x).expect("validated point")))
}

/// Irrep matrices cached at a fixed point set, for evaluating many
/// coefficient tables on the same points.
#[derive(Debug, Clone)]
pub struct PointEvaluator {
    dual: TruncatedDual,
    points: Vec<GroupElement>,
    matrices: Vec<Vec<CMatrix>>,
}

impl PointEvaluator {
    pub fn new(dual: TruncatedDual, points: Vec<GroupElement>, exec: Exec) -> Result<Self> {
        for x in &points {
            dual.group.check_element(x)?;
        }
        let matrices = exec.map_slice(&points, |x| {
            dual.irreps
                .iter()
                .map(|r| dual.group.irrep_matrix_unchecked(r.label, x))
                .collect()
        });
        Ok(PointEvaluator { dual, points, matrices })
    }

    /// Every element of a finite group, otherwise at least `factor` times the
    /// quadrature node count for the dual band.
    pub fn dense(dual: TruncatedDual, factor: usize, exec: Exec) -> Result<Self> {
        let points = dual.group.dense_points(dual.band, factor);
        Self::new(dual, points, exec)
    }

    pub fn points(&self) -> &[GroupElement] {
        &self.points
    }

    pub fn evaluate(&self, c: &FourierCoefficients, exec: Exec) -> Result<Vec<AValue>> {
        if c.dual != self.dual {
            return Err(Error::Config("coefficients live on a different dual".into()));
        }
        Ok(exec.map_range(self.points.len(), |k| sum_inverse(c, |p| &self.matrices[k][p])))
    }

    /// Largest `||f(x)||_A` over the point set; a lower bound of the
    /// essential sup.
    pub fn sup_norm(&self, c: &FourierCoefficients, exec: Exec) -> Result<f64> {
        let values = self.evaluate(c, exec)?;
        Ok(values
            .iter()
            .map(|v| c.space.norm_unchecked(v))
            .fold(0.0, f64::max))
    }
}

/// Samples a band-limited function at the nodes of `rule`.
pub fn synthesize(f: &BandlimitedFunction, rule: &QuadratureRule) -> Result<GridFunction> {
    if rule.group != f.group {
        return Err(Error::Config(format!(
            "rule for {} used with a function on {}",
            rule.group, f.group
        )));
    }
    let band = f.band();
    if !f.group.is_finite() && band > rule.band {
        return Err(Error::Precision(format!(
            "function band {band} exceeds quadrature band {}",
            rule.band
        )));
    }
    let samples = Exec::default().map_slice(&rule.nodes, |x| f.evaluate(x).expect("rule node"));
    GridFunction::new(f.group, f.space, rule.clone(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::NormKind;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn validated_convention_is_conjugate_entry() {
        assert!(Convention::Literal.self_test().is_err());
        assert!(Convention::LiteralTransposedSynthesis.self_test().is_err());
        assert!(Convention::ConjugateEntry.self_test().is_ok());
        assert_eq!(Convention::validated(), Convention::ConjugateEntry);
    }

    #[test]
    fn z2_forward() {
        let g = GroupDescriptor::Cyclic { n: 2 };
        let s = ValueSpaceDescriptor::scalar();
        let f = GridFunction::from_fn(g, s, 0, |x| match x {
            GroupElement::Index(0) => AValue::scalar(c(1.0, 0.0)),
            _ => AValue::scalar(c(0.0, 0.0)),
        })
        .unwrap();
        let fc = forward(&f, &g.truncated_dual(0)).unwrap();
        for (_, _, b) in fc.iter() {
            assert!((b.get(0, 0).entries()[0] - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn torus_character_transform() {
        let g = GroupDescriptor::Torus;
        let s = ValueSpaceDescriptor::new(2, NormKind::L2, false).unwrap();
        let v = AValue::vector(vec![c(1.0, -2.0), c(0.5, 0.0)]);
        let f = GridFunction::from_fn(g, s, 2, |x| match x {
            GroupElement::Point(p) => v.scale(C64::from_polar(1.0, std::f64::consts::TAU * p)),
            _ => unreachable!(),
        })
        .unwrap();
        let fc = forward(&f, &g.truncated_dual(2)).unwrap();
        for (label, _, b) in fc.iter() {
            let want = if label.0 == 1 { v.clone() } else { s.zero() };
            assert!(b.get(0, 0).max_abs_diff(&want) < 1e-14, "label {label}");
        }
        let x = GroupElement::Point(0.3);
        let back = inverse(&fc, &x).unwrap();
        assert!(back.max_abs_diff(&v.scale(C64::from_polar(1.0, std::f64::consts::TAU * 0.3))) < 1e-14);
    }

    #[test]
    fn synthesize_edge_cases() {
        let g = GroupDescriptor::Torus;
        let s = ValueSpaceDescriptor::scalar();
        let rule = g.quadrature(2);
        let zero = synthesize(&BandlimitedFunction::zero(g, s), &rule).unwrap();
        assert!(zero.samples.iter().all(AValue::is_zero));
        let cst = AValue::scalar(c(0.25, 1.0));
        let f = BandlimitedFunction::new(
            g,
            s,
            vec![Mode { sigma: IrrepLabel(0), i: 0, j: 0, value: cst.clone() }],
        )
        .unwrap();
        assert!(synthesize(&f, &rule).unwrap().samples.iter().all(|v| v.max_abs_diff(&cst) < 1e-15));
        let f = BandlimitedFunction::new(
            g,
            s,
            vec![Mode { sigma: IrrepLabel(2), i: 0, j: 0, value: AValue::scalar(c(1.0, 0.0)) }],
        )
        .unwrap();
        let grid = synthesize(&f, &rule).unwrap();
        assert_eq!(grid.samples.len(), 9);
        for (x, v) in rule.nodes.iter().zip(&grid.samples) {
            let GroupElement::Point(p) = x else { unreachable!() };
            let want = C64::from_polar(1.0, 4.0 * std::f64::consts::PI * p);
            assert!((v.entries()[0] - want).norm() < 1e-14);
        }
        assert!(matches!(synthesize(&f, &g.quadrature(1)), Err(Error::Precision(_))));
    }

    #[test]
    fn bandlimited_validation() {
        let g = GroupDescriptor::Dihedral { n: 4 };
        let s = ValueSpaceDescriptor::scalar();
        let one = AValue::scalar(c(1.0, 0.0));
        let bad_index = vec![Mode { sigma: IrrepLabel(0), i: 1, j: 0, value: one.clone() }];
        assert!(BandlimitedFunction::new(g, s, bad_index).is_err());
        let dup = vec![
            Mode { sigma: IrrepLabel(4), i: 1, j: 0, value: one.clone() },
            Mode { sigma: IrrepLabel(4), i: 1, j: 0, value: one.clone() },
        ];
        assert!(BandlimitedFunction::new(g, s, dup).is_err());
        let json = r#"{"group":{"kind":"dihedral","n":4},"space":{"dim":1,"norm":"l2","algebra":true},
            "modes":[{"sigma":4,"i":2,"j":1,"value":[[1.0,0.0]]}]}"#;
        let f: BandlimitedFunction = serde_json::from_str(json).unwrap();
        assert_eq!((f.modes[0].i, f.modes[0].j), (1, 0));
        let back = serde_json::to_value(&f).unwrap();
        assert_eq!(back["modes"][0]["i"], 2);
    }

    #[test]
    fn coefficients_json_round_trip() {
        let g = GroupDescriptor::Dihedral { n: 4 };
        let s = ValueSpaceDescriptor::matrix_algebra(2).unwrap();
        let mut fc = FourierCoefficients::zeros(s, g.truncated_dual(0));
        let v = AValue::matrix(2, vec![c(1.0, 0.5), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 2.0)]).unwrap();
        fc.set(IrrepLabel(4), 0, 1, v).unwrap();
        let text = serde_json::to_string(&fc).unwrap();
        let back: FourierCoefficients = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fc);
        assert!(text.contains("\"convention\":\"conjugate_entry\""));
    }

    #[test]
    fn rule_below_dual_band_is_precision_error() {
        let g = GroupDescriptor::Su2;
        let f = GridFunction::from_fn(g, ValueSpaceDescriptor::scalar(), 1, |_| AValue::scalar(c(1.0, 0.0))).unwrap();
        assert!(matches!(forward(&f, &g.truncated_dual(2)), Err(Error::Precision(_))));
    }
}
