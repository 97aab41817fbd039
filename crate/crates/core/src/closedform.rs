//! Closed-form eigenfunctions in the conformal chart, and the similarity
//! transformations connecting the radial pictures.
//!
//! In the conformal coordinate `r̃ ∈ (0, 1/k)` the Schrödinger-quantized
//! operator
//!
//! `Ĥ = -⅛(1 - k²r̃²)² (∂² + (2/r̃)∂ - q(q-1)/r̃²) - μ(1/(2r̃) + k²r̃/2)`
//!
//! has the bound states
//!
//! `ψ(r̃) = e^{-2μ artanh(kr̃)/(ks)} r̃^{s-1} (1 - k²r̃²)^{-(s-½)} P_n^{(α,β)}(X)`
//!
//! with `s = n + q`, `X = (1 + k²r̃²)/(2kr̃)`, `α = μ/(ks) - s`,
//! `β = -μ/(ks) - s`, and energies `-μ²/(2s²) - k²s²/2 + k²/8`. For the
//! three-dimensional problem `q = l + 1`.

use crate::error::{require_positive, Error, Result};
use crate::function::{Jet, RadialFunction};
use crate::model::{chart_jet_from_hyperbolic, chart_map, CoordinateChart, PerlickIParams, WeightFunction};

/// Degree and parameters of a Jacobi polynomial `P_n^{(α,β)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(n: u32, alpha: f64, beta: f64) -> Self {
        Self { n, alpha, beta }
    }

    /// Parameters of the polynomial factor of the level with `s = n + q`.
    pub fn for_shape(n: u32, s: f64, mu: f64, k: f64) -> Self {
        let m = mu / (k * s);
        Self::new(n, m - s, -m - s)
    }

    /// `α + β ∈ {-1, -2, …}`, where the textbook three-term recurrence may
    /// divide by zero. Evaluation still works (see [`jacobi_eval`]).
    pub fn recurrence_degenerate(&self) -> bool {
        let sum = self.alpha + self.beta;
        sum <= -1.0 && sum == sum.round()
    }
}

/// Generalized binomial coefficient `C(z, m)`.
fn binomial(z: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (z - i as f64) / (i + 1) as f64)
}

/// `P_n^{(α,β)}(x)` for any real `x`.
///
/// Uses the explicit sum
/// `Σₛ C(n+α, n-s) C(n+β, s) ((x-1)/2)^s ((x+1)/2)^{n-s}` unless its terms
/// cancel by more than three digits (they never cancel for `|x| ≥ 1`), and
/// the forward three-term recurrence otherwise. The recurrence loses digits when `m + α + β` is
/// small for some `m ≤ n`, and cannot be used at all when it vanishes; the
/// sum covers both cases.
pub fn jacobi_eval(jp: JacobiParams, x: f64) -> f64 {
    let JacobiParams { n, alpha: a, beta: b } = jp;
    if n == 0 {
        return 1.0;
    }
    let (sum, magnitude) = jacobi_sum_with_magnitude(jp, x);
    if magnitude <= 1e3 * sum.abs() {
        return sum;
    }
    let p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    if n == 1 {
        return p1;
    }
    let mut prev = 1.0;
    let mut cur = p1;
    for m in 2..=n {
        let m = m as f64;
        let c = 2.0 * m + a + b;
        let lead = 2.0 * m * (m + a + b) * (c - 2.0);
        if lead == 0.0 {
            return jacobi_sum(jp, x);
        }
        let next = ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * cur
            - 2.0 * (m + a - 1.0) * (m + b - 1.0) * c * prev)
            / lead;
        prev = cur;
        cur = next;
    }
    cur
}

fn jacobi_sum(jp: JacobiParams, x: f64) -> f64 {
    jacobi_sum_with_magnitude(jp, x).0
}

/// The explicit sum together with the sum of the absolute values of its
/// terms.
fn jacobi_sum_with_magnitude(jp: JacobiParams, x: f64) -> (f64, f64) {
    let n = jp.n;
    let lo = 0.5 * (x - 1.0);
    let hi = 0.5 * (x + 1.0);
    (0..=n)
        .map(|s| {
            binomial(n as f64 + jp.alpha, n - s)
                * binomial(n as f64 + jp.beta, s)
                * lo.powi(s as i32)
                * hi.powi((n - s) as i32)
        })
        .fold((0.0, 0.0), |(acc, mag), t| (acc + t, mag + t.abs()))
}

/// `P_n^{(α,β)}` with its first two derivatives, using
/// `d/dx P_n^{(α,β)} = ½(n + α + β + 1) P_{n-1}^{(α+1,β+1)}`.
pub fn jacobi_jet(jp: JacobiParams, x: f64) -> Jet {
    let JacobiParams { n, alpha: a, beta: b } = jp;
    let value = jacobi_eval(jp, x);
    let d1 = if n >= 1 {
        0.5 * (n as f64 + a + b + 1.0) * jacobi_eval(JacobiParams::new(n - 1, a + 1.0, b + 1.0), x)
    } else {
        0.0
    };
    let d2 = if n >= 2 {
        0.25 * (n as f64 + a + b + 1.0)
            * (n as f64 + a + b + 2.0)
            * jacobi_eval(JacobiParams::new(n - 2, a + 2.0, b + 2.0), x)
    } else {
        0.0
    };
    Jet::new(value, d1, d2)
}

/// `-μ²/(2s²) - k²s²/2 + k²/8` with `s = n + l + 1`; requires `s² < μ/k`.
/// `k = 0` gives the hydrogen levels.
pub fn closedform_energy(n: u32, l: u32, mu: f64, k: f64) -> Result<f64> {
    shape_energy((n + l + 1) as f64, mu, k)
}

/// The energy for a general shape `s = n + q`.
pub fn shape_energy(s: f64, mu: f64, k: f64) -> Result<f64> {
    require_positive("mu", mu)?;
    require_positive("s", s)?;
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "k",
            value: k,
            reason: "must be finite and non-negative",
        });
    }
    if s * s * k >= mu {
        return Err(Error::Unbound {
            shape_squared: s * s,
            limit: mu / k,
        });
    }
    Ok(-mu * mu / (2.0 * s * s) - k * k * s * s / 2.0 + k * k / 8.0)
}

/// A closed-form bound state of the conformal Schrödinger operator with
/// centrifugal parameter `q` (so `q = l + 1` in three dimensions).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormState {
    pub n: u32,
    pub q: f64,
    pub mu: f64,
    pub k: f64,
    jacobi: JacobiParams,
}

impl ClosedFormState {
    /// The state `(n, l)` of the three-dimensional problem.
    pub fn new(n: u32, l: u32, mu: f64, k: f64) -> Result<Self> {
        Self::with_shape(n, (l + 1) as f64, mu, k)
    }

    /// A state of the radial operator with general `q > 0`.
    pub fn with_shape(n: u32, q: f64, mu: f64, k: f64) -> Result<Self> {
        require_positive("q", q)?;
        require_positive("mu", mu)?;
        require_positive("k", k)?;
        let s = n as f64 + q;
        if s * s * k >= mu {
            return Err(Error::Unbound {
                shape_squared: s * s,
                limit: mu / k,
            });
        }
        Ok(Self {
            n,
            q,
            mu,
            k,
            jacobi: JacobiParams::for_shape(n, s, mu, k),
        })
    }

    pub fn shape(&self) -> f64 {
        self.n as f64 + self.q
    }

    pub fn jacobi(&self) -> JacobiParams {
        self.jacobi
    }

    /// Eigenvalue of the conformal Schrödinger operator (without `G`).
    pub fn energy(&self) -> f64 {
        let s = self.shape();
        let k = self.k;
        -self.mu * self.mu / (2.0 * s * s) - k * k * s * s / 2.0 + k * k / 8.0
    }

    fn check(&self, x: f64) -> Result<()> {
        if x > 0.0 && x * self.k < 1.0 {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                chart: "conformal",
                value: x,
                domain: "(0, 1/k)",
            })
        }
    }

    /// Value at `r̃`, rejecting points outside `(0, 1/k)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(self.value(x))
    }

    /// The logarithm of the non-polynomial factor and its two derivatives.
    fn log_prefactor(&self, x: f64) -> Jet {
        let s = self.shape();
        let k2 = self.k * self.k;
        let d = 1.0 - k2 * x * x;
        let a = s - 1.0;
        let b = s - 0.5;
        let c = 2.0 * self.mu / (self.k * s);
        Jet::new(
            -c * (self.k * x).atanh() + a * x.ln() - b * d.ln(),
            -c * self.k / d + a / x + 2.0 * b * k2 * x / d,
            -2.0 * c * self.k * k2 * x / (d * d) - a / (x * x) + 2.0 * b * k2 * (1.0 + k2 * x * x) / (d * d),
        )
    }
}

impl RadialFunction for ClosedFormState {
    fn value(&self, x: f64) -> f64 {
        let l = self.log_prefactor(x);
        let arg = (1.0 + self.k * self.k * x * x) / (2.0 * self.k * x);
        l.value.exp() * jacobi_eval(self.jacobi, arg)
    }

    fn jet(&self, x: f64) -> Jet {
        let l = self.log_prefactor(x);
        let e = l.value.exp();
        let k = self.k;
        let arg = Jet::new(
            (1.0 + k * k * x * x) / (2.0 * k * x),
            0.5 * k - 1.0 / (2.0 * k * x * x),
            1.0 / (k * x * x * x),
        );
        let p = jacobi_jet(self.jacobi, arg.value).compose(arg);
        let exp = Jet::new(e, e * l.d1, e * (l.d2 + l.d1 * l.d1));
        exp.product(p)
    }
}

/// `ψ_{n,l}(r̃)` of the three-dimensional problem.
pub fn closedform_eigenfunction(n: u32, l: u32, x: f64, mu: f64, k: f64) -> Result<f64> {
    ClosedFormState::new(n, l, mu, k)?.eval(x)
}

// ---------------------------------------------------------------------------
// similarity transport

/// A representation of the radial states: a chart together with the
/// normalization of the wavefunction in that chart.
///
/// Relative to a state `ψ(r)` of the hyperbolic operator:
///
/// | picture | state | weight |
/// |---|---|---|
/// | `Hyperbolic` | `ψ(r)` | `dr` |
/// | `LaplaceBeltramiFlat` | `ψ / r'` | `r'^2 / sqrt(1 + k² r'^2)` |
/// | `LaplaceBeltramiConformal` | `ψ / r'` | `8 r̃² / (1 - k² r̃²)³` |
/// | `SchrodingerConformal` | `ψ / (r' sqrt(1 - k² r̃²))` | `8 r̃² / (1 - k² r̃²)²` |
/// | `GeneralBeta` | `β^{-½} y^{(1-a)/2} ψ_S(y)`, `y = x^β` | `8β² / (x^{-β} - k² x^β)²` |
///
/// The first four pictures live in the undeformed geometry (β = 1) whatever
/// the `beta` of the parameters; `GeneralBeta` uses the conformal chart of
/// the deformed metric, and `ψ_S` is the state in the `SchrodingerConformal`
/// picture. All maps preserve scalar products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Picture {
    Hyperbolic,
    LaplaceBeltramiFlat,
    LaplaceBeltramiConformal,
    SchrodingerConformal,
    GeneralBeta,
}

impl Picture {
    pub const ALL: [Picture; 5] = [
        Picture::Hyperbolic,
        Picture::LaplaceBeltramiFlat,
        Picture::LaplaceBeltramiConformal,
        Picture::SchrodingerConformal,
        Picture::GeneralBeta,
    ];

    pub fn chart(&self) -> CoordinateChart {
        match self {
            Self::Hyperbolic => CoordinateChart::Hyperbolic,
            Self::LaplaceBeltramiFlat => CoordinateChart::FlatRadius,
            _ => CoordinateChart::CONFORMAL,
        }
    }

    pub fn weight(&self) -> WeightFunction {
        match self {
            Self::Hyperbolic => WeightFunction::Unit,
            Self::LaplaceBeltramiFlat => WeightFunction::LaplaceBeltramiFlat,
            Self::LaplaceBeltramiConformal => WeightFunction::LaplaceBeltramiConformal,
            Self::SchrodingerConformal | Self::GeneralBeta => WeightFunction::SchrodingerConformal,
        }
    }

    /// Parameters whose geometry this picture uses.
    pub fn geometry(&self, p: &PerlickIParams) -> PerlickIParams {
        match self {
            Self::GeneralBeta => *p,
            _ => PerlickIParams { beta: 1.0, ..*p },
        }
    }

    /// Evaluates the picture's weight at `x`.
    pub fn eval_weight(&self, x: f64, p: &PerlickIParams) -> Result<f64> {
        self.weight().eval(x, &self.geometry(p))
    }

    /// The factor `g(x)` with `ψ_picture(x) = g(x) ψ_hyperbolic(r(x))`, and its
    /// derivatives in `x`.
    pub fn factor_jet(&self, x: f64, p: &PerlickIParams) -> Jet {
        let k2 = p.k * p.k;
        let inv_rp_conformal = |y: f64| {
            // 1/r'(y) = (1 - k²y²) / (2y)
            Jet::new(
                (1.0 - k2 * y * y) / (2.0 * y),
                -0.5 / (y * y) - 0.5 * k2,
                1.0 / (y * y * y),
            )
        };
        let sqrt_d = |y: f64| Jet::new(1.0 - k2 * y * y, -2.0 * k2 * y, -2.0 * k2).powf(0.5);
        match self {
            Self::Hyperbolic => Jet::constant(1.0),
            Self::LaplaceBeltramiFlat => Jet::new(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)),
            Self::LaplaceBeltramiConformal => inv_rp_conformal(x),
            Self::SchrodingerConformal => inv_rp_conformal(x).product(sqrt_d(x).powf(-1.0)),
            Self::GeneralBeta => {
                let beta = p.beta;
                let a = 1.0 / beta;
                let y = Jet::new(x.powf(beta), beta * x.powf(beta - 1.0), beta * (beta - 1.0) * x.powf(beta - 2.0));
                let s = inv_rp_conformal(y.value)
                    .product(sqrt_d(y.value).powf(-1.0))
                    .compose(y);
                let pre = y.powf(0.5 * (1.0 - a));
                let norm = beta.powf(-0.5);
                let g = pre.product(s);
                Jet::new(norm * g.value, norm * g.d1, norm * g.d2)
            }
        }
    }
}

/// The hyperbolic coordinate as a function of a picture coordinate, with
/// derivatives.
fn hyperbolic_jet(picture: Picture, x: f64, p: &PerlickIParams) -> Result<Jet> {
    let geo = picture.geometry(p);
    let chart = picture.chart();
    let r = chart_map(chart, CoordinateChart::Hyperbolic, x, &geo)?;
    if r == 0.0 {
        return Err(Error::OutsideDomain {
            chart: chart.name(),
            value: x,
            domain: "open interior",
        });
    }
    // invert X(r): R' = 1/X', R'' = -X''/X'³
    let fwd = chart_jet_from_hyperbolic(chart, r, &geo)?;
    let d1 = 1.0 / fwd.d1;
    Ok(Jet::new(r, d1, -fwd.d2 * d1 * d1 * d1))
}

/// A state carried from one picture to another; see [`similarity_transport`].
#[derive(Debug, Clone)]
pub struct Transported<F> {
    inner: F,
    from: Picture,
    to: Picture,
    params: PerlickIParams,
}

impl<F: RadialFunction> Transported<F> {
    pub fn target(&self) -> Picture {
        self.to
    }

    pub fn source(&self) -> Picture {
        self.from
    }

    /// Value at `x`, rejecting points outside the target chart.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.try_jet(x).map(|j| j.value)
    }

    pub fn try_jet(&self, x: f64) -> Result<Jet> {
        if self.from == self.to {
            self.to.chart().check(x, &self.to.geometry(&self.params))?;
            return Ok(self.inner.jet(x));
        }
        let p = &self.params;
        // ψ_to(x) = g_to(x) · (ψ_from / g_from)(x_from(r(x)))
        let r = hyperbolic_jet(self.to, x, p)?;
        let x_from = chart_jet_from_hyperbolic(self.from.chart(), r.value, &self.from.geometry(p))?.compose(r);
        let psi = self.inner.jet(x_from.value);
        let g_from = self.from.factor_jet(x_from.value, p);
        let reduced = psi.product(g_from.powf(-1.0)).compose(x_from);
        let out = self.to.factor_jet(x, p).product(reduced);
        if out.is_finite() {
            Ok(out)
        } else {
            Err(Error::NonFinite("similarity_transport"))
        }
    }
}

impl<F: RadialFunction> RadialFunction for Transported<F> {
    fn value(&self, x: f64) -> f64 {
        self.eval(x).unwrap_or(f64::NAN)
    }

    fn jet(&self, x: f64) -> Jet {
        self.try_jet(x)
            .unwrap_or(Jet::new(f64::NAN, f64::NAN, f64::NAN))
    }
}

/// Carries a state `ψ` given in picture `from` to picture `to`. The result
/// is an eigenfunction of the target picture's operator whenever `ψ` is one
/// of the source operator, and scalar products are preserved.
///
/// The outer conformal branch and the flat limit `k = 0` are not supported.
pub fn similarity_transport<F: RadialFunction>(
    psi: F,
    from: Picture,
    to: Picture,
    p: &PerlickIParams,
) -> Result<Transported<F>> {
    if p.k == 0.0 && from != to {
        return Err(Error::Unsupported(
            "similarity transport needs k > 0".into(),
        ));
    }
    Ok(Transported {
        inner: psi,
        from,
        to,
        params: *p,
    })
}
