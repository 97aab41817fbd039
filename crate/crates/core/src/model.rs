//! Parameters, coordinate charts, weights, metric, potential and curvature of
//! the Family I (Kepler type) systems.
//!
//! Three radial coordinates appear throughout the crate:
//!
//! * the *hyperbolic* coordinate `r`, in which the radial problem becomes the
//!   one-dimensional hyperbolic Kepler operator;
//! * the *flat-radius* coordinate `r'`, the areal radius of the metric
//!   `dr'^2 / (β² (1 + k² r'^2)) + r'^2 dΩ²`, related by `r' = sinh(k r) / k`;
//! * the *conformal* coordinate `x`, in which the metric is a conformal factor
//!   times the flat metric, `r' = 2 / (x^{-β} - k² x^{β})`.
//!
//! `k = 0` is admitted everywhere as the flat limit; every map then reduces to
//! its limiting form.

use crate::error::{require_finite, require_positive, Error, Result};
use crate::function::Jet;

/// Relative distance to a finite chart boundary below which evaluation is
/// refused.
pub const BOUNDARY_GUARD: f64 = 1e-10;

/// Physical and geometric parameters of a Family I system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerlickIParams {
    /// Deformation exponent β.
    pub beta: f64,
    /// Curvature scale k (the k² > 0 branch; `0` is the flat limit).
    pub k: f64,
    /// Coupling μ.
    pub mu: f64,
    /// Additive constant G of the potential.
    pub g_shift: f64,
}

impl PerlickIParams {
    pub fn new(beta: f64, k: f64, mu: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        require_positive("mu", mu)?;
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k,
                reason: "must be finite and non-negative",
            });
        }
        Ok(Self {
            beta,
            k,
            mu,
            g_shift: 0.0,
        })
    }

    /// The undeformed case β = 1, the Kepler problem on a space of constant
    /// negative curvature.
    pub fn kepler(k: f64, mu: f64) -> Result<Self> {
        Self::new(1.0, k, mu)
    }

    pub fn with_g_shift(mut self, g: f64) -> Result<Self> {
        self.g_shift = require_finite("g_shift", g)?;
        Ok(self)
    }

    /// a = 1/β.
    pub fn a(&self) -> f64 {
        1.0 / self.beta
    }

    /// μ/k, the bound on (q + n)² for normalizable levels. Infinite when k = 0.
    pub fn bound_limit(&self) -> f64 {
        if self.k == 0.0 {
            f64::INFINITY
        } else {
            self.mu / self.k
        }
    }

}

/// Which of the two conformal domains a conformal coordinate lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ConformalBranch {
    /// `[0, k^{-1/β})`, the branch used for every spectral computation.
    #[default]
    Inner,
    /// `(k^{-1/β}, ∞)`; round trips are supported, spectra are not.
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoordinateChart {
    Hyperbolic,
    FlatRadius,
    Conformal(ConformalBranch),
}

impl CoordinateChart {
    pub const CONFORMAL: Self = Self::Conformal(ConformalBranch::Inner);

    pub fn name(&self) -> &'static str {
        match self {
            Self::Hyperbolic => "hyperbolic",
            Self::FlatRadius => "flat-radius",
            Self::Conformal(ConformalBranch::Inner) => "conformal",
            Self::Conformal(ConformalBranch::Outer) => "conformal (outer branch)",
        }
    }

    pub fn domain(&self, p: &PerlickIParams) -> Interval {
        match self {
            Self::Hyperbolic | Self::FlatRadius => Interval {
                lower: 0.0,
                upper: f64::INFINITY,
                lower_closed: false,
                upper_closed: false,
            },
            Self::Conformal(ConformalBranch::Inner) => Interval {
                lower: 0.0,
                upper: conformal_edge(p),
                lower_closed: true,
                upper_closed: false,
            },
            Self::Conformal(ConformalBranch::Outer) => Interval {
                lower: conformal_edge(p),
                upper: f64::INFINITY,
                lower_closed: false,
                upper_closed: false,
            },
        }
    }

    /// Checks that `x` is in the chart domain and away from finite boundaries.
    pub fn check(&self, x: f64, p: &PerlickIParams) -> Result<f64> {
        let dom = self.domain(p);
        if dom.contains_guarded(x) {
            Ok(x)
        } else {
            Err(Error::OutsideDomain {
                chart: self.name(),
                value: x,
                domain: dom.describe(),
            })
        }
    }
}

/// An interval with open/closed endpoint flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lower_closed {
            x >= self.lower
        } else {
            x > self.lower
        };
        let below = if self.upper_closed {
            x <= self.upper
        } else {
            x < self.upper
        };
        x.is_finite() && above && below
    }

    /// Like [`Interval::contains`], but also rejects points within
    /// [`BOUNDARY_GUARD`] (relative) of a finite non-zero boundary.
    pub fn contains_guarded(&self, x: f64) -> bool {
        if !self.contains(x) {
            return false;
        }
        let near = |b: f64| b.is_finite() && b != 0.0 && (x - b).abs() <= BOUNDARY_GUARD * b.abs().max(1.0);
        !(near(self.lower) || near(self.upper))
    }

    fn describe(&self) -> &'static str {
        match (self.lower == 0.0, self.upper.is_finite(), self.lower_closed) {
            (true, false, false) => "(0, inf)",
            (true, true, true) => "[0, k^(-1/beta))",
            (false, false, _) => "(k^(-1/beta), inf)",
            _ => "bounded interval",
        }
    }
}

/// Edge of the conformal chart, `k^{-1/β}` (infinite in the flat limit).
pub fn conformal_edge(p: &PerlickIParams) -> f64 {
    if p.k == 0.0 {
        f64::INFINITY
    } else {
        p.k.powf(-1.0 / p.beta)
    }
}

/// `f(r) = β² (1 + k² r²)`, the inverse radial metric coefficient in the
/// flat-radius chart.
pub fn metric_coefficient(r: f64, p: &PerlickIParams) -> Result<f64> {
    CoordinateChart::FlatRadius.check(r, p)?;
    Ok(p.beta * p.beta * (1.0 + p.k * p.k * r * r))
}

/// `V(r) = -μ sqrt(1/r² + k²) + G` in the flat-radius chart.
pub fn family1_potential(r: f64, p: &PerlickIParams) -> Result<f64> {
    CoordinateChart::FlatRadius.check(r, p)?;
    Ok(-p.mu * (1.0 + p.k * p.k * r * r).sqrt() / r + p.g_shift)
}

/// Scalar curvature as a function of the conformal coordinate `x`:
///
/// `R(x) = -½ ((β² - 1)(k⁴ x^{2β} + x^{-2β}) + 2 k² (1 + 5β²))`.
///
/// For β = 1 this is the constant `-6k²`. The expression is finite for every
/// `x > 0`, including the edge of the conformal chart where it takes the
/// value of the flat-radius curvature at infinity.
pub fn perlick_curvature(x: f64, p: &PerlickIParams) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::OutsideDomain {
            chart: "conformal",
            value: x,
            domain: "(0, inf)",
        });
    }
    let b2 = p.beta * p.beta;
    let k2 = p.k * p.k;
    let x2b = x.powf(2.0 * p.beta);
    Ok(-0.5 * ((b2 - 1.0) * (k2 * k2 * x2b + 1.0 / x2b) + 2.0 * k2 * (1.0 + 5.0 * b2)))
}

/// The same scalar curvature in the flat-radius chart:
/// `R(r') = 2 (1 - β²) / r'^2 - 6 β² k²`.
pub fn perlick_curvature_flat_radius(r: f64, p: &PerlickIParams) -> Result<f64> {
    CoordinateChart::FlatRadius.check(r, p)?;
    let b2 = p.beta * p.beta;
    Ok(2.0 * (1.0 - b2) / (r * r) - 6.0 * b2 * p.k * p.k)
}

// ---------------------------------------------------------------------------
// chart maps

fn sinh_over_k(r: f64, k: f64) -> f64 {
    if k == 0.0 {
        r
    } else {
        (k * r).sinh() / k
    }
}

fn asinh_over_k(rp: f64, k: f64) -> f64 {
    if k == 0.0 {
        rp
    } else {
        (k * rp).asinh() / k
    }
}

/// Flat radius → β = 1 conformal coordinate.
fn unit_conformal_from_flat(rp: f64, k: f64, branch: ConformalBranch) -> f64 {
    let root = (1.0 + k * k * rp * rp).sqrt();
    match branch {
        ConformalBranch::Inner => rp / (1.0 + root),
        ConformalBranch::Outer => (1.0 + root) / (k * k * rp),
    }
}

fn flat_from_unit_conformal(y: f64, k: f64, branch: ConformalBranch) -> f64 {
    let d = 1.0 - k * k * y * y;
    match branch {
        ConformalBranch::Inner => 2.0 * y / d,
        ConformalBranch::Outer => -2.0 * y / d,
    }
}

/// Maps a coordinate value between charts. Round trips are exact to rounding
/// error; every map is a strictly monotone bijection between chart domains.
pub fn chart_map(
    from: CoordinateChart,
    to: CoordinateChart,
    x: f64,
    p: &PerlickIParams,
) -> Result<f64> {
    from.check(x, p)?;
    if from == to {
        return Ok(x);
    }
    if let CoordinateChart::Conformal(ConformalBranch::Outer) = to {
        if p.k == 0.0 {
            return Err(Error::Unsupported(
                "the outer conformal branch does not exist in the flat limit".into(),
            ));
        }
    }
    let flat = match from {
        CoordinateChart::Hyperbolic => sinh_over_k(x, p.k),
        CoordinateChart::FlatRadius => x,
        CoordinateChart::Conformal(branch) => {
            if x == 0.0 {
                0.0
            } else {
                flat_from_unit_conformal(x.powf(p.beta), p.k, branch)
            }
        }
    };
    let out = match to {
        CoordinateChart::Hyperbolic => asinh_over_k(flat, p.k),
        CoordinateChart::FlatRadius => flat,
        CoordinateChart::Conformal(branch) => {
            if from == CoordinateChart::Hyperbolic && branch == ConformalBranch::Inner {
                // tanh(kr/2)/k avoids the overflow of sinh for large r
                let y = if p.k == 0.0 { x / 2.0 } else { (0.5 * p.k * x).tanh() / p.k };
                y.powf(1.0 / p.beta)
            } else {
                unit_conformal_from_flat(flat, p.k, branch).powf(1.0 / p.beta)
            }
        }
    };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite("chart_map"))
    }
}

/// The chart coordinate as a function of the hyperbolic coordinate `r`,
/// with its first two derivatives with respect to `r` (inner conformal
/// branch only).
pub fn chart_jet_from_hyperbolic(
    chart: CoordinateChart,
    r: f64,
    p: &PerlickIParams,
) -> Result<Jet> {
    CoordinateChart::Hyperbolic.check(r, p)?;
    let k = p.k;
    match chart {
        CoordinateChart::Hyperbolic => Ok(Jet::new(r, 1.0, 0.0)),
        CoordinateChart::FlatRadius => Ok(if k == 0.0 {
            Jet::new(r, 1.0, 0.0)
        } else {
            Jet::new((k * r).sinh() / k, (k * r).cosh(), k * (k * r).sinh())
        }),
        CoordinateChart::Conformal(ConformalBranch::Inner) => {
            let y = if k == 0.0 {
                Jet::new(r / 2.0, 0.5, 0.0)
            } else {
                let t = (0.5 * k * r).tanh();
                let sech2 = 1.0 - t * t;
                Jet::new(t / k, 0.5 * sech2, -0.5 * k * sech2 * t)
            };
            if p.beta == 1.0 {
                Ok(y)
            } else {
                Ok(y.powf(1.0 / p.beta))
            }
        }
        CoordinateChart::Conformal(ConformalBranch::Outer) => Err(Error::Unsupported(
            "the outer conformal branch is not reachable from the hyperbolic chart".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// weights

/// Scalar-product weights `w(x) dx` for the different representations of the
/// radial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightFunction {
    /// `dr` on the hyperbolic chart.
    Unit,
    /// `r'^2 / sqrt(1 + k² r'^2)` on the flat-radius chart (Laplace–Beltrami
    /// states).
    LaplaceBeltramiFlat,
    /// `8 / (x (x^{-β} - k² x^β)³)` on the conformal chart, which is
    /// `8 x² / (1 - k² x²)³` for β = 1 (Laplace–Beltrami states).
    LaplaceBeltramiConformal,
    /// `8 β² / (x^{-β} - k² x^β)²` on the conformal chart, which is
    /// `8 x² / (1 - k² x²)²` for β = 1 (Schrödinger-quantized states).
    SchrodingerConformal,
}

impl WeightFunction {
    pub fn chart(&self) -> CoordinateChart {
        match self {
            Self::Unit => CoordinateChart::Hyperbolic,
            Self::LaplaceBeltramiFlat => CoordinateChart::FlatRadius,
            Self::LaplaceBeltramiConformal | Self::SchrodingerConformal => {
                CoordinateChart::CONFORMAL
            }
        }
    }

    pub fn eval(&self, x: f64, p: &PerlickIParams) -> Result<f64> {
        let chart = self.chart();
        if chart == CoordinateChart::CONFORMAL {
            // the weights vanish at the origin; only the open interior is useful
            if x <= 0.0 {
                return Err(Error::OutsideDomain {
                    chart: chart.name(),
                    value: x,
                    domain: "(0, k^(-1/beta))",
                });
            }
        }
        chart.check(x, p)?;
        let k2 = p.k * p.k;
        Ok(match self {
            Self::Unit => 1.0,
            Self::LaplaceBeltramiFlat => x * x / (1.0 + k2 * x * x).sqrt(),
            Self::LaplaceBeltramiConformal => {
                if p.beta == 1.0 {
                    8.0 * x * x / (1.0 - k2 * x * x).powi(3)
                } else {
                    let d = x.powf(-p.beta) - k2 * x.powf(p.beta);
                    8.0 / (x * d * d * d)
                }
            }
            Self::SchrodingerConformal => {
                if p.beta == 1.0 {
                    8.0 * x * x / (1.0 - k2 * x * x).powi(2)
                } else {
                    let d = x.powf(-p.beta) - k2 * x.powf(p.beta);
                    8.0 * p.beta * p.beta / (d * d)
                }
            }
        })
    }
}

// ---------------------------------------------------------------------------
// conformal curvature

/// A positive scalar field `f` on three-space, read as the conformal factor of
/// the metric `f (dx₁² + dx₂² + dx₃²)`.
pub trait ConformalFactor {
    fn value(&self, x: [f64; 3]) -> f64;

    /// Gradient and the diagonal of the Hessian, when known analytically.
    fn partials(&self, _x: [f64; 3]) -> Option<([f64; 3], [f64; 3])> {
        None
    }

    /// Domain check beyond positivity; the default accepts every point.
    fn check(&self, _x: [f64; 3]) -> Result<()> {
        Ok(())
    }
}

impl<F: Fn([f64; 3]) -> f64> ConformalFactor for F {
    fn value(&self, x: [f64; 3]) -> f64 {
        self(x)
    }
}

/// How the partial derivatives of a conformal factor are obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Partials {
    /// Use [`ConformalFactor::partials`]; falls back to central differences
    /// with the given step when the factor has none.
    Analytic { fallback_step: f64 },
    /// Second-order central differences with step `h`.
    CentralDifference(f64),
}

/// Scalar curvature of `f (dx₁² + dx₂² + dx₃²)`:
/// `R = Σᵢ (3 f_{xᵢ}² - 4 f f_{xᵢxᵢ}) / (2 f³)`.
pub fn conformal_curvature(f: &impl ConformalFactor, x: [f64; 3], partials: Partials) -> Result<f64> {
    f.check(x)?;
    let f0 = f.value(x);
    if !(f0.is_finite() && f0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "conformal factor",
            value: f0,
            reason: "must be positive at the evaluation point",
        });
    }
    let (grad, hess) = match partials {
        Partials::Analytic { fallback_step } => match f.partials(x) {
            Some(p) => p,
            None => central_partials(f, x, fallback_step)?,
        },
        Partials::CentralDifference(h) => central_partials(f, x, h)?,
    };
    let sum: f64 = (0..3)
        .map(|i| 3.0 * grad[i] * grad[i] - 4.0 * f0 * hess[i])
        .sum();
    let r = sum / (2.0 * f0 * f0 * f0);
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonFinite("conformal_curvature"))
    }
}

fn central_partials(
    f: &impl ConformalFactor,
    x: [f64; 3],
    h: f64,
) -> Result<([f64; 3], [f64; 3])> {
    require_positive("step", h)?;
    let f0 = f.value(x);
    let mut grad = [0.0; 3];
    let mut hess = [0.0; 3];
    for i in 0..3 {
        let mut xp = x;
        let mut xm = x;
        xp[i] += h;
        xm[i] -= h;
        f.check(xp)?;
        f.check(xm)?;
        let (fp, fm) = (f.value(xp), f.value(xm));
        if !(fp > 0.0 && fm > 0.0 && fp.is_finite() && fm.is_finite()) {
            return Err(Error::NonFinite("conformal factor stencil"));
        }
        grad[i] = (fp - fm) / (2.0 * h);
        hess[i] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    Ok((grad, hess))
}

/// The Family I conformal factor `4 / (ρ² (ρ^{-β} - k² ρ^β)²)` as a radial
/// field on three-space (`4 / (1 - k² ρ²)²` for β = 1).
#[derive(Debug, Clone, Copy)]
pub struct PerlickConformalFactor {
    pub params: PerlickIParams,
}

impl PerlickConformalFactor {
    pub fn new(params: PerlickIParams) -> Self {
        Self { params }
    }

    /// `(f, f', f'')` as functions of ρ = |x|.
    pub fn radial_jet(&self, rho: f64) -> Jet {
        let b = self.params.beta;
        let k2 = self.params.k * self.params.k;
        // g = ρ^{1-β} - k² ρ^{1+β}, f = 4 / g²
        let g = rho.powf(1.0 - b) - k2 * rho.powf(1.0 + b);
        let g1 = (1.0 - b) * rho.powf(-b) - k2 * (1.0 + b) * rho.powf(b);
        let g2 = -b * (1.0 - b) * rho.powf(-b - 1.0) - k2 * b * (1.0 + b) * rho.powf(b - 1.0);
        let g3 = g * g * g;
        Jet::new(
            4.0 / (g * g),
            -8.0 * g1 / g3,
            -8.0 * g2 / g3 + 24.0 * g1 * g1 / (g3 * g),
        )
    }
}

impl ConformalFactor for PerlickConformalFactor {
    fn value(&self, x: [f64; 3]) -> f64 {
        let rho = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        self.radial_jet(rho).value
    }

    fn partials(&self, x: [f64; 3]) -> Option<([f64; 3], [f64; 3])> {
        let rho = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if rho == 0.0 {
            return None;
        }
        let j = self.radial_jet(rho);
        let mut grad = [0.0; 3];
        let mut hess = [0.0; 3];
        for i in 0..3 {
            let c = x[i] / rho;
            grad[i] = j.d1 * c;
            hess[i] = j.d2 * c * c + j.d1 * (1.0 - c * c) / rho;
        }
        Some((grad, hess))
    }

    fn check(&self, x: [f64; 3]) -> Result<()> {
        let rho = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        CoordinateChart::CONFORMAL.check(rho, &self.params).map(|_| ())
    }
}
