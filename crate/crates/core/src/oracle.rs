//! Independent numerical checks: finite-difference discretization of the
//! hyperbolic radial operator, symmetric tridiagonal eigenvalues by Sturm
//! bisection, Gauss–Legendre scalar products, node counting.
//!
//! Any of the radial operators can also be pulled back to the hyperbolic
//! coordinate and brought to Liouville normal form `-s∂² + Q(r)` (see
//! [`NormalForm`]), which shares its spectrum. Two discretizations are
//! available: a uniform three-point scheme, and a scheme that factors out
//! the Frobenius power `r^ν` at the origin and is accurate for non-integer
//! `ν` as well.

use std::cell::RefCell;

use rayon::prelude::*;

use crate::error::{require_positive, Error, Result};
use crate::function::{derivative4, RadialFunction};
use crate::model::{chart_jet_from_hyperbolic, chart_map, CoordinateChart, PerlickIParams, WeightFunction};
use crate::quantize::{Angular, HamiltonianVariant};

/// Where the left Dirichlet wall sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeftWall {
    /// At the origin: nodes `rᵢ = i·h`, `h = r_max/(N+1)`. Requires
    /// `h ≥ r_min`, so every node stays clear of the singularity.
    #[default]
    Origin,
    /// At `r_min`: nodes `rᵢ = r_min + i·h`, `h = (r_max - r_min)/(N+1)`.
    Rmin,
}

/// Interior nodes of a uniform grid with Dirichlet walls at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub wall: LeftWall,
}

impl RadialGrid {
    /// Grid with the left wall at `r_min`.
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        Self::with_wall(r_min, r_max, n_points, LeftWall::Rmin)
    }

    /// Grid with the left wall at the origin and first node at `h ≥ r_min`.
    pub fn origin_anchored(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        Self::with_wall(r_min, r_max, n_points, LeftWall::Origin)
    }

    pub fn with_wall(r_min: f64, r_max: f64, n_points: usize, wall: LeftWall) -> Result<Self> {
        require_positive("r_min", r_min)?;
        if !(r_max.is_finite() && r_max > r_min) {
            return Err(Error::InvalidParameter {
                name: "r_max",
                value: r_max,
                reason: "must be finite and larger than r_min",
            });
        }
        if n_points < 3 {
            return Err(Error::InvalidParameter {
                name: "n_points",
                value: n_points as f64,
                reason: "at least 3 interior points are needed",
            });
        }
        let grid = Self {
            r_min,
            r_max,
            n_points,
            wall,
        };
        if wall == LeftWall::Origin && grid.h() < r_min {
            return Err(Error::InvalidParameter {
                name: "n_points",
                value: n_points as f64,
                reason: "first node would fall below r_min",
            });
        }
        Ok(grid)
    }

    /// Spacing `h`.
    pub fn h(&self) -> f64 {
        match self.wall {
            LeftWall::Origin => self.r_max / (self.n_points + 1) as f64,
            LeftWall::Rmin => (self.r_max - self.r_min) / (self.n_points + 1) as f64,
        }
    }

    /// The `i`-th interior node, `i = 1..=n_points`.
    pub fn node(&self, i: usize) -> f64 {
        let start = match self.wall {
            LeftWall::Origin => 0.0,
            LeftWall::Rmin => self.r_min,
        };
        start + i as f64 * self.h()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.n_points).map(|i| self.node(i)).collect()
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidParameter {
                name: "off_diagonal",
                value: off_diagonal.len() as f64,
                reason: "must have one entry fewer than the diagonal",
            });
        }
        if diagonal.iter().chain(&off_diagonal).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tridiagonal entries"));
        }
        Ok(Self {
            diagonal,
            off_diagonal,
        })
    }

    /// `-∂²` on `n` interior points with spacing `h`.
    pub fn laplacian(n: usize, h: f64) -> Self {
        Self {
            diagonal: vec![2.0 / (h * h); n],
            off_diagonal: vec![-1.0 / (h * h); n.saturating_sub(1)],
        }
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Adds `c` to every diagonal entry.
    pub fn shifted(mut self, c: f64) -> Self {
        for d in &mut self.diagonal {
            *d += c;
        }
        self
    }

    /// Number of eigenvalues strictly below `t`, from the signs of the
    /// pivots of the `LDLᵀ` factorization of `T - t`.
    pub fn count_below(&self, t: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diagonal.len() {
            let b2 = if i == 0 {
                0.0
            } else {
                self.off_diagonal[i - 1] * self.off_diagonal[i - 1]
            };
            d = self.diagonal[i] - t - if i == 0 { 0.0 } else { b2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (self.diagonal[i].abs() + t.abs() + 1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diagonal.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// `T v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * v[i];
                if i > 0 {
                    s += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off_diagonal[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Matrix of `-∂² + V` on the grid.
pub fn discretize_potential(grid: &RadialGrid, v: impl Fn(f64) -> f64) -> Result<TridiagonalOperator> {
    discretize_scaled(grid, 1.0, v)
}

fn discretize_scaled(grid: &RadialGrid, s: f64, v: impl Fn(f64) -> f64) -> Result<TridiagonalOperator> {
    let h = grid.h();
    let n = grid.n_points;
    let diagonal = (1..=n).map(|i| 2.0 * s / (h * h) + v(grid.node(i))).collect();
    TridiagonalOperator::new(diagonal, vec![-s / (h * h); n - 1])
}

/// Minimum number of interior points accepted by [`discretize`].
pub const MIN_VERIFICATION_POINTS: usize = 10;

/// Three-point discretization of
/// `Ĥ_q = -∂² + k² q(q-1)/sinh²(kr) - 2μk coth(kr)` with Dirichlet walls.
pub fn discretize(q: f64, p: &PerlickIParams, grid: &RadialGrid) -> Result<TridiagonalOperator> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q,
            reason: "must be finite and non-negative",
        });
    }
    if grid.n_points < MIN_VERIFICATION_POINTS {
        return Err(Error::InvalidParameter {
            name: "n_points",
            value: grid.n_points as f64,
            reason: "grid too coarse for verification",
        });
    }
    let (k, mu) = (p.k, p.mu);
    let qq = q * (q - 1.0);
    discretize_potential(grid, |r| {
        if k == 0.0 {
            qq / (r * r) - 2.0 * mu / r
        } else {
            let sh = (k * r).sinh();
            k * k * qq / (sh * sh) - 2.0 * mu * k / (k * r).tanh()
        }
    })
}

/// Relative bisection tolerance of [`sturm_eigenvalues`].
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// The `count` lowest eigenvalues, ascending. Indices are bisected in
/// parallel; the result is identical to [`sturm_eigenvalues_sequential`].
pub fn sturm_eigenvalues(t: &TridiagonalOperator, count: usize) -> Result<Vec<f64>> {
    check_count(t, count)?;
    let bracket = t.gershgorin();
    Ok((0..count)
        .into_par_iter()
        .map(|j| bisect_index(t, j, bracket))
        .collect())
}

pub fn sturm_eigenvalues_sequential(t: &TridiagonalOperator, count: usize) -> Result<Vec<f64>> {
    check_count(t, count)?;
    let bracket = t.gershgorin();
    Ok((0..count).map(|j| bisect_index(t, j, bracket)).collect())
}

fn check_count(t: &TridiagonalOperator, count: usize) -> Result<()> {
    if count > t.dim() {
        return Err(Error::InvalidParameter {
            name: "count",
            value: count as f64,
            reason: "exceeds the matrix dimension",
        });
    }
    Ok(())
}

fn bisect_index(t: &TridiagonalOperator, j: usize, (mut lo, mut hi): (f64, f64)) -> f64 {
    // widen slightly so the end points strictly bracket
    let pad = 1e-12 * (lo.abs().max(hi.abs()) + 1.0);
    lo -= pad;
    hi += pad;
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_TOLERANCE * mid.abs().max(1.0) || mid <= lo || mid >= hi {
            return mid;
        }
        if t.count_below(mid) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

// ---------------------------------------------------------------------------
// quadrature

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(m: usize) -> Self {
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(m, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        Self { nodes, weights }
    }
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let j = j as f64;
        let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `[a, b]`.
    Finite(f64, f64),
    /// `[start, ∞)` through `x = start + scale·t/(1-t)`.
    HalfLine { start: f64, scale: f64 },
    /// The chart image of `0 < r < r_max`, integrated in the hyperbolic
    /// coordinate with `x = X(r)`. Avoids the endpoint singularities of the
    /// conformal weights. Keep `r_max` where `X(r)` is still resolved in
    /// floating point (see [`conformal_resolution_limit`]).
    PullBack { chart: CoordinateChart, r_max: f64 },
}

/// Largest hyperbolic radius whose conformal image stays a relative `1e-9`
/// clear of the chart edge `1/k`.
pub fn conformal_resolution_limit(k: f64) -> f64 {
    2.0 * (1.0 - 1e-9f64).atanh() / k
}

/// Composite Gauss–Legendre rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub panels: usize,
    pub order: usize,
    pub domain: Domain,
}

impl Quadrature {
    pub fn new(domain: Domain) -> Self {
        Self {
            panels: 64,
            order: 16,
            domain,
        }
    }

    /// Nodes and weights in the integration variable of the domain (the
    /// chart coordinate for `Finite`/`HalfLine`, the hyperbolic `r` for
    /// `PullBack`), with the Jacobian of any substitution folded in.
    fn base_rule(&self) -> Result<Vec<(f64, f64)>> {
        if self.panels == 0 || self.order == 0 {
            return Err(Error::InvalidParameter {
                name: "panels",
                value: self.panels as f64,
                reason: "panels and order must be positive",
            });
        }
        let gl = GaussLegendre::new(self.order);
        let (a, b, half_line) = match self.domain {
            Domain::Finite(a, b) => (a, b, None),
            Domain::HalfLine { start, scale } => (0.0, 1.0, Some((start, scale))),
            Domain::PullBack { r_max, .. } => (0.0, r_max, None),
        };
        let width = (b - a) / self.panels as f64;
        let mut out = Vec::with_capacity(self.panels * self.order);
        for pi in 0..self.panels {
            let left = a + pi as f64 * width;
            for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                let t = left + 0.5 * width * (x + 1.0);
                let wt = 0.5 * width * w;
                match half_line {
                    None => out.push((t, wt)),
                    Some((start, scale)) => {
                        let u = 1.0 - t;
                        out.push((start + scale * t / u, wt * scale / (u * u)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(x, weight)` pairs in the chart coordinate, including the measure
    /// `w(x)` supplied by `weight`.
    pub fn rule(&self, weight: impl Fn(f64) -> Result<f64>, p: &PerlickIParams) -> Result<Vec<(f64, f64)>> {
        let base = self.base_rule()?;
        base.into_iter()
            .map(|(t, wt)| {
                let (x, jac) = match self.domain {
                    Domain::PullBack { chart, .. } => {
                        let j = chart_jet_from_hyperbolic(chart, t, p)?;
                        (j.value, j.d1)
                    }
                    _ => (t, 1.0),
                };
                Ok((x, wt * jac * weight(x)?))
            })
            .collect()
    }

    /// `∫ f(x) w(x) dx`.
    pub fn integrate(
        &self,
        f: impl Fn(f64) -> f64,
        weight: impl Fn(f64) -> Result<f64>,
        p: &PerlickIParams,
    ) -> Result<f64> {
        let rule = self.rule(weight, p)?;
        let mut sum = 0.0;
        for (x, w) in rule {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite("integrand"));
            }
            sum += w * v;
        }
        Ok(sum)
    }
}

/// `Gᵢⱼ = ⟨ψᵢ|ψⱼ⟩_w`. The matrix is exactly symmetric.
pub fn gram_matrix(
    states: &[&dyn RadialFunction],
    weight: WeightFunction,
    p: &PerlickIParams,
    quad: &Quadrature,
) -> Result<Vec<Vec<f64>>> {
    gram_matrix_with(states, |x| weight.eval(x, p), p, quad)
}

/// [`gram_matrix`] with an arbitrary weight.
pub fn gram_matrix_with(
    states: &[&dyn RadialFunction],
    weight: impl Fn(f64) -> Result<f64>,
    p: &PerlickIParams,
    quad: &Quadrature,
) -> Result<Vec<Vec<f64>>> {
    let rule = quad.rule(weight, p)?;
    let values: Vec<Vec<f64>> = states
        .iter()
        .map(|s| rule.iter().map(|(x, _)| s.value(*x)).collect())
        .collect();
    if values.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("state at a quadrature node"));
    }
    let n = states.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v: f64 = rule
                .iter()
                .enumerate()
                .map(|(m, (_, w))| w * values[i][m] * values[j][m])
                .sum();
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// `Gᵢⱼ / sqrt(Gᵢᵢ Gⱼⱼ)`.
pub fn normalize_gram(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    (0..n)
        .map(|i| (0..n).map(|j| g[i][j] / (g[i][i] * g[j][j]).sqrt()).collect())
        .collect()
}

/// Number of strict sign changes of `ψ` across consecutive grid nodes
/// (exact zeros are skipped).
pub fn node_count(psi: &impl RadialFunction, grid: &RadialGrid) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for r in grid.nodes() {
        let v = psi.value(r);
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

// ---------------------------------------------------------------------------
// normal forms

/// A radial operator pulled back to the hyperbolic coordinate and written as
/// `-s∂² + Q(r)` by removing the first-derivative term. The spectrum is
/// that of the original operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm {
    pub variant: HamiltonianVariant,
    pub angular: Angular,
    pub params: PerlickIParams,
    scale: f64,
}

impl NormalForm {
    pub fn new(variant: HamiltonianVariant, angular: Angular, params: PerlickIParams) -> Result<Self> {
        if params.k == 0.0 && variant != HamiltonianVariant::Hyperbolic1d {
            return Err(Error::Unsupported("the pull-back needs k > 0".into()));
        }
        let mut nf = Self {
            variant,
            angular,
            params,
            scale: 1.0,
        };
        let r0 = 0.7 / params.k.max(1e-3);
        let (s, _) = nf.pulled(r0)?;
        nf.scale = s;
        // the kinetic coefficient must be constant in r
        for r in [0.05 * r0, 3.0 * r0] {
            let (s1, _) = nf.pulled(r)?;
            if (s1 - s).abs() > 1e-9 * s.abs() {
                return Err(Error::Unsupported(format!(
                    "{} does not pull back to constant kinetic coefficient",
                    variant.name()
                )));
            }
        }
        Ok(nf)
    }

    /// Kinetic coefficient `s` (1 for the hyperbolic operator, ½ for the
    /// others).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `(s, b, c)` with the operator `-s∂² + b∂ + c` in `r`.
    fn pulled_full(&self, r: f64) -> Result<(f64, f64, f64)> {
        let v = self.variant;
        let geo = v.geometry(&self.params);
        let x = chart_jet_from_hyperbolic(v.chart(), r, &geo)?;
        let [a2, a1, a0] = v.coefficients(x.value, self.angular, &self.params)?;
        let x1 = x.d1;
        let s = -a2 / (x1 * x1);
        let b = a1 / x1 - a2 * x.d2 / (x1 * x1 * x1);
        Ok((s, b, a0))
    }

    fn pulled(&self, r: f64) -> Result<(f64, f64)> {
        let (s, b, _) = self.pulled_full(r)?;
        Ok((s, b))
    }

    /// `Q(r) = c + b²/(4s) - b'/2`.
    pub fn potential(&self, r: f64) -> Result<f64> {
        let (s, b, c) = self.pulled_full(r)?;
        if b == 0.0 && self.variant == HamiltonianVariant::Hyperbolic1d {
            return Ok(c);
        }
        let h = 1e-3 * r;
        let err = RefCell::new(None);
        let db = derivative4(
            |t| match self.pulled(t) {
                Ok((_, b)) => b,
                Err(e) => {
                    *err.borrow_mut() = Some(e);
                    f64::NAN
                }
            },
            r,
            h,
        );
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(c + b * b / (4.0 * s) - 0.5 * db)
    }

    /// `lim r²Q(r)` at the origin, estimated as `2f(ε) - f(2ε)` with
    /// `f(ε) = ε²Q(ε)`, which removes the linear (Coulomb) term.
    pub fn origin_coefficient(&self) -> Result<f64> {
        let eps = 1e-4 / self.params.k.max(1e-3);
        let f = |e: f64| -> Result<f64> { Ok(e * e * self.potential(e)?) };
        Ok(2.0 * f(eps)? - f(2.0 * eps)?)
    }

    /// Frobenius exponent `ν = ½ + sqrt(¼ + C/s)` of the regular solution.
    pub fn frobenius_exponent(&self) -> Result<f64> {
        let c = self.origin_coefficient()?;
        let disc = 0.25 + c / self.scale;
        if disc < 0.0 {
            return Err(Error::Unsupported("potential too attractive at the origin".into()));
        }
        Ok(0.5 + disc.sqrt())
    }
}

/// Discretization used for a [`NormalForm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    /// Three-point scheme on the grid.
    Uniform(RadialGrid),
    /// Factor `ψ = r^ν φ`, substitute `r = t²`, and discretize the resulting
    /// Sturm–Liouville problem on a cell-centred grid in `t` with `n`
    /// points; Dirichlet at `r_max`.
    Regularized { r_max: f64, n: usize },
}

/// Matrix of a normal form under a scheme.
pub fn discretize_normal_form(nf: &NormalForm, scheme: Scheme) -> Result<TridiagonalOperator> {
    let s = nf.scale();
    match scheme {
        Scheme::Uniform(grid) => {
            let err = RefCell::new(None);
            let t = discretize_scaled(&grid, s, |r| match nf.potential(r) {
                Ok(v) => v,
                Err(e) => {
                    *err.borrow_mut() = Some(e);
                    0.0
                }
            });
            match err.into_inner() {
                Some(e) => Err(e),
                None => t,
            }
        }
        Scheme::Regularized { r_max, n } => {
            require_positive("r_max", r_max)?;
            if n < MIN_VERIFICATION_POINTS {
                return Err(Error::InvalidParameter {
                    name: "n",
                    value: n as f64,
                    reason: "grid too coarse for verification",
                });
            }
            let c = nf.origin_coefficient()?;
            let nu = nf.frobenius_exponent()?;
            let h = r_max.sqrt() / (n as f64 + 0.5);
            let t = |i: f64| (i - 0.5) * h;
            let w = |t: f64| 2.0 * t.powf(4.0 * nu + 1.0);
            let pp = |t: f64| 0.5 * t.powf(4.0 * nu - 1.0);
            let mut diag = Vec::with_capacity(n);
            let mut off = Vec::with_capacity(n - 1);
            for i in 1..=n {
                let ti = t(i as f64);
                let r = ti * ti;
                let u = nf.potential(r)? - c / (r * r);
                let wi = w(ti);
                let p_up = pp(ti + 0.5 * h);
                let p_dn = if i == 1 { 0.0 } else { pp(ti - 0.5 * h) };
                diag.push(s * (p_up + p_dn) / (h * h * wi) + u);
                if i < n {
                    let wn = w(t(i as f64 + 1.0));
                    off.push(-s * p_up / (h * h * (wi * wn).sqrt()));
                }
            }
            TridiagonalOperator::new(diag, off)
        }
    }
}

/// Lowest `count` eigenvalues of a variant's operator, computed through its
/// normal form.
pub fn variant_spectrum(nf: &NormalForm, scheme: Scheme, count: usize) -> Result<Vec<f64>> {
    sturm_eigenvalues(&discretize_normal_form(nf, scheme)?, count)
}

/// Hyperbolic coordinate of a chart point (convenience for tabulation).
pub fn to_hyperbolic(chart: CoordinateChart, x: f64, p: &PerlickIParams) -> Result<f64> {
    chart_map(chart, CoordinateChart::Hyperbolic, x, p)
}
