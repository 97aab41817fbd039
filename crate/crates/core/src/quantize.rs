//! Quantization schemes and the concrete radial operators.
//!
//! Every radial operator here is written as `H = a₂(x)∂² + a₁(x)∂ + a₀(x)`
//! in its own chart. The operators differ in chart, kinetic normalization
//! (`-∂²` against `-½∂²`-type) and additive constants, so each variant
//! carries its conventions explicitly; see [`HamiltonianVariant::record`].

use num_rational::BigRational;
use num_traits::One;

use crate::closedform::Picture;
use crate::error::{Error, Result};
use crate::function::RadialFunction;
use crate::model::{conformal_curvature, CoordinateChart, ConformalFactor, Partials, PerlickIParams, WeightFunction};
use crate::poly::ratio;

/// Exponents `(a, b)` of the ordering `-f^a ∂ f^{1-a-b} ∂ f^b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingScheme {
    pub a_ord: f64,
    pub b_ord: f64,
}

impl OrderingScheme {
    /// `(½, 0)`: `-√f ∂ √f ∂`, the one-dimensional Laplace–Beltrami form.
    pub const LAPLACE_BELTRAMI: Self = Self { a_ord: 0.5, b_ord: 0.0 };
    /// `(1, 0)`: `-f ∂²`, the Schrödinger (position-dependent mass) form.
    pub const SCHRODINGER: Self = Self { a_ord: 1.0, b_ord: 0.0 };

    pub fn new(a_ord: f64, b_ord: f64) -> Self {
        Self { a_ord, b_ord }
    }
}

/// `(-f^a ∂ f^{1-a-b} ∂ f^b ψ)(r)`, from the jets of `f` and `ψ`.
pub fn vonroos_kinetic(
    scheme: OrderingScheme,
    f: &impl RadialFunction,
    psi: &impl RadialFunction,
    r: f64,
) -> Result<f64> {
    let fj = f.jet(r);
    if !(fj.value > 0.0 && fj.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "f",
            value: fj.value,
            reason: "must be positive at the evaluation point",
        });
    }
    let OrderingScheme { a_ord: a, b_ord: b } = scheme;
    let g = fj.powf(b).product(psi.jet(r));
    let m = fj.powf(1.0 - a - b);
    // h = m g', h' = m' g' + m g''
    let h1 = m.d1 * g.d1 + m.value * g.d2;
    Ok(-fj.value.powf(a) * h1)
}

/// Angular input of a radial operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angular {
    /// Orbital quantum number `l` of the three-dimensional problem.
    L(u32),
    /// Direct shape parameter `q` (centrifugal numerator `q(q-1)`).
    Q(f64),
}

/// The radial operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamiltonianVariant {
    /// `-∂² + k² q(q-1)/sinh²(kr) - 2μk coth(kr)` on the hyperbolic chart.
    Hyperbolic1d,
    /// `-½(1+k²r'²)∂² - ½(2/r' + 3k²r')∂ + q(q-1)/(2r'²) - μ sqrt(1/r'² + k²) - k²/2 + G`.
    LbFlatRadius,
    /// As [`HamiltonianVariant::LbFlatRadius`] with `q(q-1) = l(l+1)`.
    Lb3d,
    /// The Laplace–Beltrami operator in the conformal chart,
    /// `-⅛(1-k²r̃²)²(∂² + (2k²r̃/(1-k²r̃²) + 2/r̃)∂ - q(q-1)/r̃²) - μ(1/(2r̃) + k²r̃/2) - k²/2 + G`.
    LbConformal,
    /// `-⅛(1-k²r̃²)²(∂² + (2/r̃)∂ - q(q-1)/r̃²) - μ(1/(2r̃) + k²r̃/2) + G`.
    VmConformal,
    /// `-(x²(x^{-β} - k²x^β)²/(8β²))(∂² + (2/x)∂ - l(l+1)/x²) - (μ/2)(x^{-β} + k²x^β) + G`.
    VmGeneralBeta,
    /// The reduction of [`HamiltonianVariant::VmGeneralBeta`] to `y = x^β`:
    /// `-⅛(1-k²y²)²(∂² + (2/y)∂ - (a²l(l+1) - (1-a²)/4)/y²) - (μ/2)(1/y + k²y) + G`.
    HPrime,
}

/// Convention record of a variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantRecord {
    pub name: &'static str,
    pub chart: &'static str,
    pub coordinate: &'static str,
    /// Multiplier of `ε_s` in the eigenvalues.
    pub energy_scale: f64,
    /// Eigenvalue shift as a multiple of `k²`.
    pub constant_shift_k2: f64,
    /// Constant term of the operator as a multiple of `k²`.
    pub operator_constant_k2: f64,
    /// Whether `G` is added to the potential.
    pub includes_g: bool,
    /// What `s` is in terms of the quantum numbers.
    pub shape: &'static str,
    pub eigenvalue: &'static str,
    pub weight: &'static str,
}

impl HamiltonianVariant {
    pub const ALL: [HamiltonianVariant; 7] = [
        Self::Hyperbolic1d,
        Self::LbFlatRadius,
        Self::Lb3d,
        Self::LbConformal,
        Self::VmConformal,
        Self::VmGeneralBeta,
        Self::HPrime,
    ];

    pub fn name(&self) -> &'static str {
        self.record().name
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn record(&self) -> VariantRecord {
        let base = VariantRecord {
            name: "",
            chart: "",
            coordinate: "",
            energy_scale: 0.5,
            constant_shift_k2: 0.0,
            operator_constant_k2: 0.0,
            includes_g: true,
            shape: "s = n + l + 1 (or n + q)",
            eigenvalue: "",
            weight: "",
        };
        match self {
            Self::Hyperbolic1d => VariantRecord {
                name: "hyperbolic_1d",
                chart: "hyperbolic",
                coordinate: "r",
                energy_scale: 1.0,
                includes_g: false,
                shape: "s = q + n",
                eigenvalue: "-mu^2/s^2 - k^2 s^2",
                weight: "1",
                ..base
            },
            Self::LbFlatRadius => VariantRecord {
                name: "lb_flatradius",
                chart: "flat-radius",
                coordinate: "r'",
                operator_constant_k2: -0.5,
                shape: "s = q + n",
                eigenvalue: "-mu^2/(2 s^2) - k^2 s^2/2 + G",
                weight: "r'^2/sqrt(1 + k^2 r'^2)",
                ..base
            },
            Self::Lb3d => VariantRecord {
                name: "lb_3d",
                chart: "flat-radius",
                coordinate: "r'",
                operator_constant_k2: -0.5,
                eigenvalue: "-mu^2/(2 s^2) - k^2 s^2/2 + G",
                weight: "r'^2/sqrt(1 + k^2 r'^2)",
                ..base
            },
            Self::LbConformal => VariantRecord {
                name: "lb_conformal",
                chart: "conformal",
                coordinate: "r~",
                operator_constant_k2: -0.5,
                eigenvalue: "-mu^2/(2 s^2) - k^2 s^2/2 + G",
                weight: "8 r~^2/(1 - k^2 r~^2)^3",
                ..base
            },
            Self::VmConformal => VariantRecord {
                name: "vm_conformal",
                chart: "conformal",
                coordinate: "r~",
                constant_shift_k2: 0.125,
                eigenvalue: "-mu^2/(2 s^2) - k^2 s^2/2 + k^2/8 + G",
                weight: "8 r~^2/(1 - k^2 r~^2)^2",
                ..base
            },
            Self::VmGeneralBeta => VariantRecord {
                name: "vm_general_beta",
                chart: "conformal (deformed)",
                coordinate: "x",
                constant_shift_k2: 0.125,
                shape: "s = w = n + a l + (a + 1)/2, a = 1/beta",
                eigenvalue: "-mu^2/(2 w^2) - k^2 w^2/2 + k^2/8 + G",
                weight: "8 beta^2/(x^-beta - k^2 x^beta)^2",
                ..base
            },
            Self::HPrime => VariantRecord {
                name: "h_prime",
                chart: "conformal",
                coordinate: "y = x^beta",
                constant_shift_k2: 0.125,
                shape: "s = w = n + a l + (a + 1)/2, a = 1/beta",
                eigenvalue: "-mu^2/(2 w^2) - k^2 w^2/2 + k^2/8 + G",
                weight: "8 y^2/(1 - k^2 y^2)^2",
                ..base
            },
        }
    }

    /// The picture (chart and state normalization) the variant acts in.
    pub fn picture(&self) -> Picture {
        match self {
            Self::Hyperbolic1d => Picture::Hyperbolic,
            Self::LbFlatRadius | Self::Lb3d => Picture::LaplaceBeltramiFlat,
            Self::LbConformal => Picture::LaplaceBeltramiConformal,
            Self::VmConformal | Self::HPrime => Picture::SchrodingerConformal,
            Self::VmGeneralBeta => Picture::GeneralBeta,
        }
    }

    pub fn chart(&self) -> CoordinateChart {
        self.picture().chart()
    }

    pub fn weight(&self) -> WeightFunction {
        self.picture().weight()
    }

    /// Parameters whose geometry the variant's chart uses.
    pub fn geometry(&self, p: &PerlickIParams) -> PerlickIParams {
        self.picture().geometry(p)
    }

    fn check_beta(&self, p: &PerlickIParams) -> Result<()> {
        match self {
            Self::LbFlatRadius | Self::Lb3d | Self::LbConformal | Self::VmConformal if p.beta != 1.0 => {
                Err(Error::Unsupported(format!("{} is defined for beta = 1", self.name())))
            }
            _ => Ok(()),
        }
    }

    /// The centrifugal numerator (`q(q-1)`-like coefficient).
    pub fn centrifugal(&self, ang: Angular, p: &PerlickIParams) -> f64 {
        match ang {
            Angular::Q(q) => q * (q - 1.0),
            Angular::L(l) => {
                let ll = (l * (l + 1)) as f64;
                match self {
                    Self::HPrime => {
                        let a = p.a();
                        a * a * ll - (1.0 - a * a) / 4.0
                    }
                    _ => ll,
                }
            }
        }
    }

    /// `s` for the `n`-th level.
    pub fn shape(&self, n: u32, ang: Angular, p: &PerlickIParams) -> f64 {
        let n = n as f64;
        match (self, ang) {
            (_, Angular::Q(q)) => n + q,
            (Self::VmGeneralBeta | Self::HPrime, Angular::L(l)) => {
                let a = p.a();
                n + a * l as f64 + 0.5 * (a + 1.0)
            }
            (_, Angular::L(l)) => n + l as f64 + 1.0,
        }
    }

    /// The exact eigenvalue of the `n`-th bound level; errors when
    /// `s² ≥ μ/k`.
    pub fn eigenvalue(&self, n: u32, ang: Angular, p: &PerlickIParams) -> Result<f64> {
        let s = self.shape(n, ang, p);
        if s * s * p.k >= p.mu {
            return Err(Error::Unbound {
                shape_squared: s * s,
                limit: p.bound_limit(),
            });
        }
        let rec = self.record();
        let eps = -p.mu * p.mu / (s * s) - p.k * p.k * s * s;
        let g = if rec.includes_g { p.g_shift } else { 0.0 };
        Ok(rec.energy_scale * eps + rec.constant_shift_k2 * p.k * p.k + g)
    }

    /// Coefficients `(a₂, a₁, a₀)` of the operator at `x`.
    pub fn coefficients(&self, x: f64, ang: Angular, p: &PerlickIParams) -> Result<[f64; 3]> {
        self.check_beta(p)?;
        let geo = self.geometry(p);
        self.chart().check(x, &geo)?;
        if x <= 0.0 {
            return Err(Error::OutsideDomain {
                chart: self.chart().name(),
                value: x,
                domain: "open interior",
            });
        }
        let (k, mu) = (p.k, p.mu);
        let k2 = k * k;
        let cq = self.centrifugal(ang, p);
        let rec = self.record();
        let constant = rec.operator_constant_k2 * k2 + if rec.includes_g { p.g_shift } else { 0.0 };
        let out = match self {
            Self::Hyperbolic1d => {
                let sh = (k * x).sinh();
                let v = if k == 0.0 {
                    cq / (x * x) - 2.0 * mu / x
                } else {
                    k2 * cq / (sh * sh) - 2.0 * mu * k / (k * x).tanh()
                };
                [-1.0, 0.0, v]
            }
            Self::LbFlatRadius | Self::Lb3d => {
                let a2 = -0.5 * (1.0 + k2 * x * x);
                let a1 = -0.5 * (2.0 / x + 3.0 * k2 * x);
                let v = cq / (2.0 * x * x) - mu * (1.0 + k2 * x * x).sqrt() / x;
                [a2, a1, v + constant]
            }
            Self::LbConformal | Self::VmConformal => {
                let d = 1.0 - k2 * x * x;
                let pre = -0.125 * d * d;
                let drift = if *self == Self::LbConformal {
                    2.0 * k2 * x / d + 2.0 / x
                } else {
                    2.0 / x
                };
                let v = -pre * cq / (x * x) - mu * (0.5 / x + 0.5 * k2 * x);
                [pre, pre * drift, v + constant]
            }
            Self::VmGeneralBeta => {
                let b = p.beta;
                let xb = x.powf(b);
                let d = 1.0 / xb - k2 * xb;
                let pp = x * x * d * d / (8.0 * b * b);
                let v = pp * cq / (x * x) - 0.5 * mu * (1.0 / xb + k2 * xb);
                [-pp, -2.0 * pp / x, v + constant]
            }
            Self::HPrime => {
                let d = 1.0 - k2 * x * x;
                let pre = -0.125 * d * d;
                let v = -pre * cq / (x * x) - 0.5 * mu * (1.0 / x + k2 * x);
                [pre, pre * 2.0 / x, v + constant]
            }
        };
        Ok(out)
    }

    /// Potential part `a₀` of the operator.
    pub fn potential(&self, x: f64, ang: Angular, p: &PerlickIParams) -> Result<f64> {
        Ok(self.coefficients(x, ang, p)?[2])
    }

    /// Evaluates the operator's weight at `x`.
    pub fn eval_weight(&self, x: f64, p: &PerlickIParams) -> Result<f64> {
        self.picture().eval_weight(x, p)
    }
}

/// `(Hψ)(x)` from the jet of `ψ` (analytic when `ψ` provides it, otherwise
/// fourth-order central differences).
pub fn apply_variant(
    v: HamiltonianVariant,
    psi: &impl RadialFunction,
    x: f64,
    p: &PerlickIParams,
    ang: Angular,
) -> Result<f64> {
    let [a2, a1, a0] = v.coefficients(x, ang, p)?;
    let j = psi.jet(x);
    let out = a2 * j.d2 + a1 * j.d1 + a0 * j.value;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite("apply_variant"))
    }
}

/// `q = a·l + (a+1)/2`, the shape parameter of level `l` after reducing the
/// deformed operator.
pub fn general_beta_reduce(l: u32, a: &BigRational) -> BigRational {
    let l = BigRational::from_integer(l.into());
    a * &l + (a + BigRational::one()) / ratio(2, 1)
}

/// Checks `q(q-1) = a²l(l+1) - (1-a²)/4` exactly.
pub fn centrifugal_identity(l: u32, a: &BigRational) -> bool {
    let q = general_beta_reduce(l, a);
    let lhs = &q * (&q - BigRational::one());
    let ll = BigRational::from_integer((l * (l + 1)).into());
    let a2 = a * a;
    let rhs = &a2 * ll - (BigRational::one() - &a2) / ratio(4, 1);
    lhs == rhs
}

/// `|f^{-1/4} T_vm (f^{1/4} ψ) - T_LB ψ - (R/16) ψ|` at `x`, with
/// `T_vm = -(1/2f)∇²`, `T_LB = -(1/2f)(∇² + ½ (∇f·∇)/f)` and `R` the scalar
/// curvature of `f δᵢⱼ`. All derivatives are second-order central
/// differences with step `h`, so the residual is `O(h²)`.
pub fn similarity_residual(
    f: &impl ConformalFactor,
    psi: impl Fn([f64; 3]) -> f64,
    x: [f64; 3],
    h: f64,
) -> Result<f64> {
    f.check(x)?;
    let f0 = f.value(x);
    if !(f0 > 0.0 && f0.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "conformal factor",
            value: f0,
            reason: "must be positive at the evaluation point",
        });
    }
    let curvature = conformal_curvature(f, x, Partials::CentralDifference(h))?;
    let u = |y: [f64; 3]| f.value(y).powf(0.25) * psi(y);
    let psi0 = psi(x);
    let u0 = u(x);
    let mut lap_u = 0.0;
    let mut lap_psi = 0.0;
    let mut grad_dot = 0.0;
    for i in 0..3 {
        let mut xp = x;
        let mut xm = x;
        xp[i] += h;
        xm[i] -= h;
        lap_u += (u(xp) - 2.0 * u0 + u(xm)) / (h * h);
        let (pp, pm) = (psi(xp), psi(xm));
        lap_psi += (pp - 2.0 * psi0 + pm) / (h * h);
        let df = (f.value(xp) - f.value(xm)) / (2.0 * h);
        grad_dot += df * (pp - pm) / (2.0 * h);
    }
    let t_vm = -lap_u / (2.0 * f0) / f0.powf(0.25);
    let t_lb = -(lap_psi + 0.5 * grad_dot / f0) / (2.0 * f0);
    let r = (t_vm - t_lb - curvature / 16.0 * psi0).abs();
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonFinite("similarity_residual"))
    }
}
