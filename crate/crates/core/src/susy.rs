//! Shape-invariant factorization of the one-dimensional hyperbolic Kepler
//! operator
//!
//! `Ĥ_q = -∂² + k² q(q-1) / sinh²(kr) - 2μk coth(kr)`
//!
//! and exact construction of its bound states by ladder operators.
//!
//! Every state built here lies in the closed family
//! `ψ(r) = e^{-cr} sinh^s(kr) Q(coth kr)` with `Q` a polynomial. Derivatives,
//! ladder operators and `Ĥ_q` all act on `Q` alone, so with rational inputs
//! the eigenvalue equations can be checked exactly.


use crate::error::{require_positive, Error, Result};
use crate::function::{central_jet, default_step, Jet, RadialFunction};
use crate::poly::{Polynomial, Scalar};

fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln() - std::f64::consts::LN_2
}

fn ln_cosh(x: f64) -> f64 {
    x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// The prepotential `W_q(r) = -(μ/q) r + q ln sinh(kr)`.
pub fn prepotential(q: f64, r: f64, mu: f64, k: f64) -> Result<f64> {
    check_susy(q, r, mu, k)?;
    Ok(-(mu / q) * r + q * ln_sinh(k * r))
}

/// `W_q'(r) = -μ/q + qk coth(kr)`.
pub fn prepotential_derivative(q: f64, r: f64, mu: f64, k: f64) -> Result<f64> {
    check_susy(q, r, mu, k)?;
    Ok(-mu / q + q * k * coth(k * r))
}

fn check_susy(q: f64, r: f64, mu: f64, k: f64) -> Result<()> {
    require_positive("q", q)?;
    require_positive("r", r)?;
    require_positive("mu", mu)?;
    require_positive("k", k)?;
    Ok(())
}

/// `ε_s = -μ²/s² - k² s²`.
pub fn factorization_energy(s: f64, mu: f64, k: f64) -> f64 {
    -mu * mu / (s * s) - k * k * s * s
}

/// Exact counterpart of [`factorization_energy`].
pub fn factorization_energy_exact<T: Scalar>(s: &T, mu: &T, k: &T) -> T {
    let s2 = s.clone() * s.clone();
    -(mu.clone() * mu.clone() / s2.clone()) - k.clone() * k.clone() * s2
}

/// `(q + n)² < μ/k`, decided as `(q + n)² k < μ`.
pub fn is_bound<T: Scalar>(q: &T, n: u32, mu: &T, k: &T) -> bool {
    let s = q.clone() + T::from_i64(n as i64);
    s.clone() * s * k.clone() < mu.clone()
}

/// Largest `n` with `(q + n)² < μ/k`, or `None` when even `q² ≥ μ/k`.
/// The marginal case `(q + n)² = μ/k` is not bound.
pub fn bound_state_count<T: Scalar>(q: &T, mu: &T, k: &T) -> Option<u32> {
    if !is_bound(q, 0, mu, k) {
        return None;
    }
    if k.is_zero() {
        return None; // no upper limit; callers treat the flat limit separately
    }
    let mut n = 0;
    while is_bound(q, n + 1, mu, k) {
        n += 1;
    }
    Some(n)
}

/// A bound level of `Ĥ_q`: shape parameter `q` and excitation number `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyLevel {
    pub q: f64,
    pub n: u32,
}

impl SusyLevel {
    pub fn new(q: f64, n: u32, mu: f64, k: f64) -> Result<Self> {
        require_positive("q", q)?;
        require_positive("mu", mu)?;
        require_positive("k", k)?;
        let s = q + n as f64;
        if !is_bound(&q, n, &mu, &k) {
            return Err(Error::Unbound {
                shape_squared: s * s,
                limit: mu / k,
            });
        }
        Ok(Self { q, n })
    }

    /// `s = q + n`.
    pub fn shape(&self) -> f64 {
        self.q + self.n as f64
    }

    pub fn energy(&self, mu: f64, k: f64) -> f64 {
        factorization_energy(self.shape(), mu, k)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct FloatForms {
    c: f64,
    s: f64,
    k: f64,
    q: Polynomial<f64>,
    qd: Polynomial<f64>,
    qdd: Polynomial<f64>,
}

/// `ψ(r) = e^{-cr} sinh^s(kr) Q(coth kr)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderWavefunction<T: Scalar = f64> {
    c: T,
    s: T,
    poly: Polynomial<T>,
    mu: T,
    k: T,
    float: FloatForms,
}

/// `Q ↦ (s k u - c) Q + k (1 - u²) Q'`, the action of `d/dr` on the family.
fn derivative_poly<T: Scalar>(c: &T, s: &T, k: &T, q: &Polynomial<T>) -> Polynomial<T> {
    let lin = Polynomial::linear(-c.clone(), s.clone() * k.clone());
    let quad = Polynomial::new(vec![k.clone(), T::zero(), -k.clone()]);
    &(&lin * q) + &(&quad * &q.derivative())
}

impl<T: Scalar> LadderWavefunction<T> {
    /// Builds a member of the family from its parts. Nothing is checked
    /// beyond `k > 0`; see [`ground_state`] for the normalizable entry point.
    pub fn from_parts(c: T, s: T, poly: Polynomial<T>, mu: T, k: T) -> Result<Self> {
        require_positive("k", k.to_f64())?;
        let qd = derivative_poly(&c, &s, &k, &poly);
        let qdd = derivative_poly(&c, &s, &k, &qd);
        let float = FloatForms {
            c: c.to_f64(),
            s: s.to_f64(),
            k: k.to_f64(),
            q: poly.to_f64(),
            qd: qd.to_f64(),
            qdd: qdd.to_f64(),
        };
        Ok(Self {
            c,
            s,
            poly,
            mu,
            k,
            float,
        })
    }

    pub fn decay_rate(&self) -> &T {
        &self.c
    }

    pub fn sinh_power(&self) -> &T {
        &self.s
    }

    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    pub fn mu(&self) -> &T {
        &self.mu
    }

    pub fn k(&self) -> &T {
        &self.k
    }

    /// Degree of `Q`; `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    /// `c - s k`, the asymptotic decay rate of `ψ`.
    pub fn decay_margin(&self) -> T {
        self.c.clone() - self.s.clone() * self.k.clone()
    }

    /// Square integrable on `(0, ∞)` with the plain measure `dr`.
    pub fn is_normalizable(&self) -> bool {
        self.decay_margin().is_positive() && self.s.is_positive()
    }

    fn with_poly(&self, poly: Polynomial<T>) -> Self {
        Self::from_parts(
            self.c.clone(),
            self.s.clone(),
            poly,
            self.mu.clone(),
            self.k.clone(),
        )
        .expect("k was validated at construction")
    }

    /// `ψ'`, again a member of the family.
    pub fn derivative(&self) -> Self {
        self.with_poly(derivative_poly(&self.c, &self.s, &self.k, &self.poly))
    }

    /// `Ĥ_q ψ`, computed on the polynomial factor:
    /// `-Q_dd + (k² q(q-1)(u² - 1) - 2μk u) Q`.
    pub fn apply_hamiltonian(&self, q: &T) -> Self {
        let qdd = derivative_poly(&self.c, &self.s, &self.k, &derivative_poly(&self.c, &self.s, &self.k, &self.poly));
        let k2qq = self.k.clone() * self.k.clone() * q.clone() * (q.clone() - T::one());
        let two = T::from_i64(2);
        let v = Polynomial::new(vec![-k2qq.clone(), -(two * self.mu.clone() * self.k.clone()), k2qq]);
        self.with_poly(&(&v * &self.poly) - &qdd)
    }

    /// `Ĥ_q ψ == e ψ` in the coefficient field (exact for rationals).
    pub fn is_eigenfunction(&self, q: &T, e: &T) -> bool {
        self.apply_hamiltonian(q).poly == self.poly.scale(e)
    }

    /// Positions `r` of the sign changes of `Q(coth kr)`, i.e. the nodes of
    /// `ψ` on `(0, ∞)`, located by bisection on a fine grid in `t = tanh(kr)`.
    pub fn nodes(&self) -> Vec<f64> {
        let k = self.float.k;
        let p = &self.float.q;
        if !p.degree().is_some_and(|d| d > 0) {
            return Vec::new();
        }
        // sign of Q(1/t) t^d on t ∈ (0, 1)
        let g = |t: f64| p.eval_reversed(t);
        let m = 4096;
        let mut out = Vec::new();
        let mut t0 = 1e-12;
        let mut g0 = g(t0);
        for i in 1..=m {
            let t1 = (i as f64 / m as f64).min(1.0 - 1e-15);
            let g1 = g(t1);
            if g0 == 0.0 || g0.signum() != g1.signum() && g1 != 0.0 {
                let (mut a, mut b) = (t0, t1);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if g(a).signum() == g(mid).signum() {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                out.push(0.5 * (a + b));
            }
            t0 = t1;
            g0 = g1;
        }
        out.into_iter().map(|t| t.atanh() / k).collect()
    }
}

impl<T: Scalar> RadialFunction for LadderWavefunction<T> {
    fn value(&self, r: f64) -> f64 {
        eval_form(&self.float, &self.float.q, r)
    }

    fn jet(&self, r: f64) -> Jet {
        let f = &self.float;
        Jet::new(
            eval_form(f, &f.q, r),
            eval_form(f, &f.qd, r),
            eval_form(f, &f.qdd, r),
        )
    }
}

/// `e^{-cr} sinh^s(kr) P(coth kr)` evaluated as
/// `e^{-cr} sinh^{s-d} cosh^d Σⱼ pⱼ tanh^{d-j}` in log space, `d = deg P`.
fn eval_form(f: &FloatForms, p: &Polynomial<f64>, r: f64) -> f64 {
    let d = match p.degree() {
        Some(d) => d as f64,
        None => return 0.0,
    };
    let x = f.k * r;
    let t = x.tanh();
    let sum = p.eval_reversed(t);
    if sum == 0.0 {
        return 0.0;
    }
    let log = -f.c * r + (f.s - d) * ln_sinh(x) + d * ln_cosh(x) + sum.abs().ln();
    sum.signum() * log.exp()
}

/// `e^{W_s} = e^{-(μ/s) r} sinh^s(kr)`, the ground state of `Ĥ_s`.
///
/// Requires `s² < μ/k`.
pub fn ground_state<T: Scalar>(s: T, mu: T, k: T) -> Result<LadderWavefunction<T>> {
    require_positive("s", s.to_f64())?;
    require_positive("mu", mu.to_f64())?;
    require_positive("k", k.to_f64())?;
    if !is_bound(&s, 0, &mu, &k) {
        let sf = s.to_f64();
        return Err(Error::Unbound {
            shape_squared: sf * sf,
            limit: mu.to_f64() / k.to_f64(),
        });
    }
    ground_state_unchecked(s, mu, k)
}

/// Like [`ground_state`] but without the normalizability check, for
/// algebraic work with formal solutions.
pub fn ground_state_unchecked<T: Scalar>(s: T, mu: T, k: T) -> Result<LadderWavefunction<T>> {
    require_positive("s", s.to_f64())?;
    require_positive("mu", mu.to_f64())?;
    let c = mu.clone() / s.clone();
    LadderWavefunction::from_parts(c, s, Polynomial::constant(T::one()), mu, k)
}

/// `A†_p ψ = (∂ - μ/p + pk coth kr) ψ`, acting on `Q` as
/// `Q ↦ ((s + p) k u - c - μ/p) Q + k (1 - u²) Q'`.
pub fn apply_raising<T: Scalar>(p: &T, psi: &LadderWavefunction<T>) -> Result<LadderWavefunction<T>> {
    require_positive("p", p.to_f64())?;
    let k = &psi.k;
    let lin = Polynomial::linear(
        -(psi.c.clone() + psi.mu.clone() / p.clone()),
        (psi.s.clone() + p.clone()) * k.clone(),
    );
    let quad = Polynomial::new(vec![k.clone(), T::zero(), -k.clone()]);
    let out = &(&lin * &psi.poly) + &(&quad * &psi.poly.derivative());
    if let Some(d) = psi.poly.degree() {
        if out.degree() != Some(d + 1) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p.to_f64(),
                reason: "raising cancels the leading coefficient",
            });
        }
    }
    Ok(psi.with_poly(out))
}

/// `A_p ψ = (-∂ - μ/p + pk coth kr) ψ`, acting on `Q` as
/// `Q ↦ ((p - s) k u + c - μ/p) Q - k (1 - u²) Q'`.
pub fn apply_lowering<T: Scalar>(p: &T, psi: &LadderWavefunction<T>) -> Result<LadderWavefunction<T>> {
    require_positive("p", p.to_f64())?;
    let k = &psi.k;
    let lin = Polynomial::linear(
        psi.c.clone() - psi.mu.clone() / p.clone(),
        (p.clone() - psi.s.clone()) * k.clone(),
    );
    let quad = Polynomial::new(vec![-k.clone(), T::zero(), k.clone()]);
    let out = &(&lin * &psi.poly) + &(&quad * &psi.poly.derivative());
    Ok(psi.with_poly(out))
}

/// `ψ_{n,q} = A†_q A†_{q+1} ⋯ A†_{q+n-1} e^{W_{q+n}}`, the `n`-th bound state
/// of `Ĥ_q` with energy `ε_{q+n}`.
pub fn build_eigenfunction<T: Scalar>(n: u32, q: T, mu: T, k: T) -> Result<LadderWavefunction<T>> {
    require_positive("q", q.to_f64())?;
    let s = q.clone() + T::from_i64(n as i64);
    let mut psi = ground_state(s, mu, k)?;
    for i in (0..n).rev() {
        psi = apply_raising(&(q.clone() + T::from_i64(i as i64)), &psi)?;
    }
    Ok(psi)
}

/// Like [`build_eigenfunction`], without the bound-state check.
pub fn build_eigenfunction_unchecked<T: Scalar>(
    n: u32,
    q: T,
    mu: T,
    k: T,
) -> Result<LadderWavefunction<T>> {
    require_positive("q", q.to_f64())?;
    let s = q.clone() + T::from_i64(n as i64);
    let mut psi = ground_state_unchecked(s, mu, k)?;
    for i in (0..n).rev() {
        psi = apply_raising(&(q.clone() + T::from_i64(i as i64)), &psi)?;
    }
    Ok(psi)
}

/// Whether a ladder operator raises or lowers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    /// `A†_p = ∂ + W_p'`.
    Raising,
    /// `A_p = -∂ + W_p'`.
    Lowering,
}

/// A ladder operator acting on arbitrary radial functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderOperator {
    pub kind: LadderKind,
    pub p: f64,
    pub mu: f64,
    pub k: f64,
}

impl LadderOperator {
    pub fn raising(p: f64, mu: f64, k: f64) -> Self {
        Self {
            kind: LadderKind::Raising,
            p,
            mu,
            k,
        }
    }

    pub fn lowering(p: f64, mu: f64, k: f64) -> Self {
        Self {
            kind: LadderKind::Lowering,
            p,
            mu,
            k,
        }
    }

    fn sign(&self) -> f64 {
        match self.kind {
            LadderKind::Raising => 1.0,
            LadderKind::Lowering => -1.0,
        }
    }

    fn w1(&self, r: f64) -> f64 {
        -self.mu / self.p + self.p * self.k * coth(self.k * r)
    }

    fn w2(&self, r: f64) -> f64 {
        let sh = (self.k * r).sinh();
        -self.p * self.k * self.k / (sh * sh)
    }

    /// `(Aψ)(r)` from the jet of `ψ`.
    pub fn apply_at(&self, psi: &impl RadialFunction, r: f64) -> f64 {
        let j = psi.jet(r);
        self.sign() * j.d1 + self.w1(r) * j.value
    }

    /// `Aψ` as a radial function. Its first derivative is exact given the jet
    /// of `ψ`; the second uses central differences of the first.
    pub fn apply<F: RadialFunction>(self, psi: F) -> Applied<F> {
        Applied { op: self, psi }
    }
}

/// Result of [`LadderOperator::apply`].
pub struct Applied<F> {
    op: LadderOperator,
    psi: F,
}

impl<F: RadialFunction> Applied<F> {
    fn d1(&self, r: f64) -> f64 {
        let j = self.psi.jet(r);
        // (±ψ' + W'ψ)' = ±ψ'' + W''ψ + W'ψ'
        // ψ'' enters only through the jet
        self.op.sign() * j.d2 + self.op.w2(r) * j.value + self.op.w1(r) * j.d1
    }
}

impl<F: RadialFunction> RadialFunction for Applied<F> {
    fn value(&self, r: f64) -> f64 {
        self.op.apply_at(&self.psi, r)
    }

    fn jet(&self, r: f64) -> Jet {
        let h = default_step(r);
        let d1 = central_jet(|t| self.d1(t), r, h);
        Jet::new(self.value(r), d1.value, d1.d1)
    }
}

/// `(Ĥ_q ψ)(r)` from the jet of `ψ`.
pub fn hyperbolic_hamiltonian_at(q: f64, mu: f64, k: f64, psi: &impl RadialFunction, r: f64) -> f64 {
    let j = psi.jet(r);
    let sh = (k * r).sinh();
    -j.d2 + (k * k * q * (q - 1.0) / (sh * sh) - 2.0 * mu * k * coth(k * r)) * j.value
}
