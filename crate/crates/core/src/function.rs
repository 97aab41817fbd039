//! Radial functions with value and first two derivatives.
//!
//! Operators throughout the crate act on anything implementing
//! [`RadialFunction`]. Exact states (ladder and closed-form) supply analytic
//! derivatives; plain closures, wrapped in [`Func`], fall back to fourth-order
//! central differences.

use std::sync::Arc;

/// Value and first two derivatives of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    pub const fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0)
    }

    /// Jet of the product of two functions.
    pub fn product(self, other: Jet) -> Jet {
        Jet {
            value: self.value * other.value,
            d1: self.d1 * other.value + self.value * other.d1,
            d2: self.d2 * other.value + 2.0 * self.d1 * other.d1 + self.value * other.d2,
        }
    }

    /// Jet of `outer ∘ inner`, where `self` is the jet of `outer` evaluated at
    /// `inner.value`.
    pub fn compose(self, inner: Jet) -> Jet {
        Jet {
            value: self.value,
            d1: self.d1 * inner.d1,
            d2: self.d2 * inner.d1 * inner.d1 + self.d1 * inner.d2,
        }
    }

    /// Jet of `x ↦ g(x)^p` from the jet of `g`. Requires `g > 0` unless `p`
    /// is a non-negative integer.
    pub fn powf(self, p: f64) -> Jet {
        let g = self.value;
        let gp = g.powf(p);
        let gp1 = p * g.powf(p - 1.0);
        let gp2 = p * (p - 1.0) * g.powf(p - 2.0);
        Jet {
            value: gp,
            d1: gp1 * self.d1,
            d2: gp2 * self.d1 * self.d1 + gp1 * self.d2,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

/// A real function of one radial variable.
pub trait RadialFunction: Send + Sync {
    fn value(&self, x: f64) -> f64;

    /// Value and derivatives at `x`. The default uses fourth-order central
    /// differences with a step scaled to `x`.
    fn jet(&self, x: f64) -> Jet {
        let h = default_step(x);
        central_jet(|t| self.value(t), x, h)
    }
}

/// Adapts a plain closure into a [`RadialFunction`] (derivatives by finite
/// differences).
#[derive(Debug, Clone, Copy)]
pub struct Func<F>(pub F);

impl<F> RadialFunction for Func<F>
where
    F: Fn(f64) -> f64 + Send + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.0)(x)
    }
}

impl<T: RadialFunction + ?Sized> RadialFunction for &T {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }

    fn jet(&self, x: f64) -> Jet {
        (**self).jet(x)
    }
}

impl<T: RadialFunction + ?Sized> RadialFunction for Box<T> {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }

    fn jet(&self, x: f64) -> Jet {
        (**self).jet(x)
    }
}

impl<T: RadialFunction + ?Sized> RadialFunction for Arc<T> {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }

    fn jet(&self, x: f64) -> Jet {
        (**self).jet(x)
    }
}

/// A function paired with analytic first and second derivatives.
pub struct WithDerivatives<F, D1, D2> {
    pub f: F,
    pub d1: D1,
    pub d2: D2,
}

impl<F, D1, D2> RadialFunction for WithDerivatives<F, D1, D2>
where
    F: Fn(f64) -> f64 + Send + Sync,
    D1: Fn(f64) -> f64 + Send + Sync,
    D2: Fn(f64) -> f64 + Send + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn jet(&self, x: f64) -> Jet {
        Jet::new((self.f)(x), (self.d1)(x), (self.d2)(x))
    }
}

/// Forces finite-difference derivatives (with a fixed step) on any function,
/// ignoring analytic derivatives it may carry.
pub struct FiniteDifference<F> {
    pub inner: F,
    pub step: f64,
}

impl<F: RadialFunction> RadialFunction for FiniteDifference<F> {
    fn value(&self, x: f64) -> f64 {
        self.inner.value(x)
    }

    fn jet(&self, x: f64) -> Jet {
        central_jet(|t| self.inner.value(t), x, self.step)
    }
}

pub(crate) fn default_step(x: f64) -> f64 {
    1e-3 * x.abs().max(1e-2)
}

/// Fourth-order central differences for the first and second derivative.
pub fn central_jet(f: impl Fn(f64) -> f64, x: f64, h: f64) -> Jet {
    let fm2 = f(x - 2.0 * h);
    let fm1 = f(x - h);
    let f0 = f(x);
    let fp1 = f(x + h);
    let fp2 = f(x + 2.0 * h);
    Jet {
        value: f0,
        d1: (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h),
        d2: (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h),
    }
}

/// Second-order central differences for the first and second derivative.
pub fn central_jet2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> Jet {
    let fm1 = f(x - h);
    let f0 = f(x);
    let fp1 = f(x + h);
    Jet {
        value: f0,
        d1: (fp1 - fm1) / (2.0 * h),
        d2: (fp1 - 2.0 * f0 + fm1) / (h * h),
    }
}

/// Fourth-order central first derivative.
pub fn derivative4(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
