//! Verification suites with measured residuals.
//!
//! Each suite returns a [`SuiteReport`]: a list of named checks, each with
//! the measured quantity and the bound it is held to.

use std::fmt;

use crate::closedform::{closedform_energy, similarity_transport, ClosedFormState, Picture};
use crate::degeneracy::{degenerate_partners, multiplet_table, LevelLabel, RationalExponent};
use crate::error::{Error, Result};
use crate::function::{Func, RadialFunction};
use crate::model::{
    conformal_curvature, perlick_curvature, Partials, PerlickConformalFactor, PerlickIParams,
};
use crate::oracle::{
    conformal_resolution_limit, discretize, gram_matrix_with, node_count, normalize_gram,
    sturm_eigenvalues, variant_spectrum, Domain, NormalForm, Quadrature, RadialGrid, Scheme,
};
use crate::quantize::{similarity_residual, Angular, HamiltonianVariant};
use crate::susy::{
    bound_state_count, build_eigenfunction, factorization_energy, hyperbolic_hamiltonian_at,
    prepotential, LadderOperator,
};

/// What a measured value is compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Between(f64, f64),
    Equals(f64),
}

impl Bound {
    pub fn admits(&self, x: f64) -> bool {
        match *self {
            Bound::AtMost(t) => x <= t,
            Bound::AtLeast(t) => x >= t,
            Bound::Between(a, b) => a <= x && x <= b,
            Bound::Equals(t) => x == t,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(t) => write!(f, "<= {t:e}"),
            Bound::AtLeast(t) => write!(f, ">= {t:e}"),
            Bound::Between(a, b) => write!(f, "in [{a}, {b}]"),
            Bound::Equals(t) => write!(f, "== {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, measured: f64, bound: Bound) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            passed: measured.is_finite() && bound.admits(measured),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The check with the given name.
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Oracle,
    Ladder,
    ClosedForm,
    Curvature,
    Similarity,
    Degeneracy,
    FlatLimit,
    Nodes,
    BoundStates,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oracle,
        Suite::Ladder,
        Suite::ClosedForm,
        Suite::Curvature,
        Suite::Similarity,
        Suite::Degeneracy,
        Suite::FlatLimit,
        Suite::Nodes,
        Suite::BoundStates,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Ladder => "ladder",
            Suite::ClosedForm => "closedform",
            Suite::Curvature => "curvature",
            Suite::Similarity => "similarity",
            Suite::Degeneracy => "degeneracy",
            Suite::FlatLimit => "flat-limit",
            Suite::Nodes => "nodes",
            Suite::BoundStates => "bound-states",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Grid settings of the eigenvalue checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            r_min: 1e-3,
            r_max: 30.0,
            points: 3999,
        }
    }
}

/// Finite-difference spectrum of `Ĥ_q` against `ε_{q+j}`, and the observed
/// convergence order from three successive halvings of `h`
/// (`log₂((λ_h - λ_{h/2}) / (λ_{h/2} - λ_{h/4}))`).
pub fn oracle_suite(p: &PerlickIParams, q: f64, levels: u32, grid: OracleGrid) -> Result<SuiteReport> {
    let n_bound = bound_state_count(&q, &p.mu, &p.k).map_or(0, |n| n + 1);
    if levels == 0 || levels > n_bound {
        return Err(Error::InvalidParameter {
            name: "levels",
            value: levels as f64,
            reason: "must be between 1 and the number of bound levels",
        });
    }
    let count = levels as usize;
    let mut spectra = Vec::new();
    let mut n = grid.points;
    for _ in 0..3 {
        let g = RadialGrid::origin_anchored(grid.r_min, grid.r_max, n)?;
        spectra.push(sturm_eigenvalues(&discretize(q, p, &g)?, count)?);
        n = 2 * n + 1;
    }
    let mut checks = Vec::new();
    for j in 0..count {
        let s = q + j as f64;
        let exact = factorization_energy(s, p.mu, p.k);
        let rel = ((spectra[0][j] - exact) / exact).abs();
        checks.push(Check::new(format!("level {j} relative error"), rel, Bound::AtMost(1e-3)));
        let d1 = spectra[0][j] - spectra[1][j];
        let d2 = spectra[1][j] - spectra[2][j];
        let order = (d1 / d2).abs().log2();
        checks.push(Check::new(format!("level {j} convergence order"), order, Bound::Between(1.5, 2.5)));
    }
    Ok(SuiteReport {
        suite: Suite::Oracle,
        checks,
    })
}

fn test_functions() -> Vec<Func<impl Fn(f64) -> f64 + Send + Sync + Clone>> {
    (1..=10)
        .map(|j| {
            let j = j as f64;
            Func(move |r: f64| r * r * (-0.3 * j * r).exp() * (1.0 + 0.2 * (j * r).sin()))
        })
        .collect()
}

/// Factorization `A†_q A_q = Ĥ_q - ε_q`, shape invariance
/// `A_q A†_q = Ĥ_{q+1} - ε_q` on ten smooth test functions, and the
/// eigen-residual of every bound ladder state.
pub fn ladder_suite(p: &PerlickIParams, q: f64) -> Result<SuiteReport> {
    let (mu, k) = (p.mu, p.k);
    let eps = factorization_energy(q, mu, k);
    let lower = LadderOperator::lowering(q, mu, k);
    let raise = LadderOperator::raising(q, mu, k);
    let rs: Vec<f64> = (0..25).map(|i| 0.1 + 4.9 * i as f64 / 24.0).collect();
    let mut fact: f64 = 0.0;
    let mut shape: f64 = 0.0;
    for psi in test_functions() {
        let norm = rs.iter().map(|&r| psi.value(r).abs()).fold(0.0, f64::max);
        let a_psi = lower.apply(&psi);
        let ad_psi = raise.apply(&psi);
        for &r in &rs {
            let lhs = raise.apply_at(&a_psi, r);
            let rhs = hyperbolic_hamiltonian_at(q, mu, k, &psi, r) - eps * psi.value(r);
            fact = fact.max((lhs - rhs).abs() / norm);
            let lhs = lower.apply_at(&ad_psi, r);
            let rhs = hyperbolic_hamiltonian_at(q + 1.0, mu, k, &psi, r) - eps * psi.value(r);
            shape = shape.max((lhs - rhs).abs() / norm);
        }
    }
    let mut checks = vec![
        Check::new("factorization residual", fact, Bound::AtMost(1e-6)),
        Check::new("shape invariance residual", shape, Bound::AtMost(1e-6)),
    ];
    let n_max = bound_state_count(&q, &mu, &k).unwrap_or(0);
    if bound_state_count(&q, &mu, &k).is_some() {
        for n in 0..=n_max {
            let psi = build_eigenfunction(n, q, mu, k)?;
            let e = factorization_energy(q + n as f64, mu, k);
            let grid: Vec<f64> = (1..=200).map(|i| 0.05 * i as f64).collect();
            let scale = grid.iter().map(|&r| psi.value(r).abs()).fold(0.0, f64::max);
            let res = grid
                .iter()
                .map(|&r| (hyperbolic_hamiltonian_at(q, mu, k, &psi, r) - e * psi.value(r)).abs())
                .fold(0.0, f64::max)
                / scale;
            checks.push(Check::new(format!("eigen residual n={n}"), res, Bound::AtMost(1e-6)));
            checks.push(Check::new(
                format!("degree n={n}"),
                psi.degree().map_or(-1.0, |d| d as f64),
                Bound::Equals(n as f64),
            ));
            checks.push(Check::new(
                format!("decay margin n={n}"),
                psi.decay_margin(),
                Bound::AtLeast(f64::MIN_POSITIVE),
            ));
        }
    }
    Ok(SuiteReport {
        suite: Suite::Ladder,
        checks,
    })
}

/// Ladder states carried to the conformal chart against the closed form:
/// deviation from proportionality over 50 interior points, for every bound
/// `(n, l)` with `n + l ≤ nl_max`.
pub fn closedform_suite(p: &PerlickIParams, nl_max: u32) -> Result<SuiteReport> {
    let (mu, k) = (p.mu, p.k);
    let geo = PerlickIParams::kepler(k, mu)?;
    let edge = 1.0 / k;
    let xs: Vec<f64> = (1..=50).map(|i| edge * i as f64 / 52.0).collect();
    let mut checks = Vec::new();
    for total in 0..=nl_max {
        for l in 0..=total {
            let n = total - l;
            let s = (total + 1) as f64;
            if s * s * k >= mu {
                continue;
            }
            let ladder = build_eigenfunction(n, (l + 1) as f64, mu, k)?;
            let moved = similarity_transport(ladder, Picture::Hyperbolic, Picture::SchrodingerConformal, &geo)?;
            let closed = ClosedFormState::new(n, l, mu, k)?;
            let a = xs.iter().map(|&x| moved.eval(x)).collect::<Result<Vec<f64>>>()?;
            let b = xs.iter().map(|&x| closed.eval(x)).collect::<Result<Vec<f64>>>()?;
            // least-squares ratio; the defect is relative to the sup norm so
            // that common nodes do not spoil the comparison
            let c = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / b.iter().map(|y| y * y).sum::<f64>();
            let scale = a.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let defect = a.iter().zip(&b).map(|(x, y)| (x - c * y).abs()).fold(0.0, f64::max) / scale;
            checks.push(Check::new(format!("proportionality defect n={n} l={l}"), defect, Bound::AtMost(1e-9)));
        }
    }
    Ok(SuiteReport {
        suite: Suite::ClosedForm,
        checks,
    })
}

/// `R = -6k²` at `β = 1`, and agreement of the closed curvature formula with
/// the curvature of the conformal factor at 20 points: by central
/// differences (`h = 1e-3`) for `β = 1`, from the analytic partials for the
/// parameters given.
pub fn curvature_suite(p: &PerlickIParams) -> Result<SuiteReport> {
    let flat = PerlickIParams::kepler(p.k, p.mu)?;
    let edge = crate::model::conformal_edge(p);
    let edge1 = crate::model::conformal_edge(&flat);
    let mut dev6: f64 = 0.0;
    let mut dev1: f64 = 0.0;
    let mut devb: f64 = 0.0;
    for i in 1..=20 {
        let t = i as f64 / 30.0;
        let x1 = if edge1.is_finite() { t * edge1 } else { 2.0 * t };
        let r = perlick_curvature(x1, &flat)?;
        dev6 = dev6.max((r + 6.0 * p.k * p.k).abs());
        let f1 = PerlickConformalFactor::new(flat);
        let c = conformal_curvature(&f1, [x1, 0.0, 0.0], Partials::CentralDifference(1e-3))?;
        dev1 = dev1.max((c - r).abs());
        let xb = if edge.is_finite() { t * edge } else { 2.0 * t };
        let fb = PerlickConformalFactor::new(*p);
        let cb = conformal_curvature(&fb, [xb, 0.0, 0.0], Partials::Analytic { fallback_step: 1e-3 })?;
        devb = devb.max(((cb - perlick_curvature(xb, p)?) / (1.0 + cb.abs())).abs());
    }
    Ok(SuiteReport {
        suite: Suite::Curvature,
        checks: vec![
            Check::new("beta=1 deviation from -6k^2", dev6, Bound::AtMost(1e-14)),
            Check::new("beta=1 closed vs conformal factor", dev1, Bound::AtMost(1e-6)),
            Check::new("closed vs analytic conformal factor (relative)", devb, Bound::AtMost(1e-9)),
        ],
    })
}

/// Similarity identity residuals at two step sizes and the spectral offset
/// between the bare Laplace–Beltrami and Schrödinger operators.
pub fn similarity_suite(p: &PerlickIParams) -> Result<SuiteReport> {
    let geo = PerlickIParams::kepler(p.k, p.mu)?;
    let f = PerlickConformalFactor::new(geo);
    let edge = 1.0 / p.k;
    let points = [
        [0.21 * edge, 0.13 * edge, -0.08 * edge],
        [0.05 * edge, -0.30 * edge, 0.11 * edge],
        [-0.40 * edge, 0.02 * edge, 0.25 * edge],
    ];
    let psi = |x: [f64; 3]| (0.3 * x[0] - 0.2 * x[1] + 0.1 * x[2]).sin() + (x[0] * x[1]).cos();
    let mut coarse: f64 = 0.0;
    let mut fine: f64 = 0.0;
    for x in points {
        coarse = coarse.max(similarity_residual(&f, psi, x, 1e-3)?);
        fine = fine.max(similarity_residual(&f, psi, x, 1e-4)?);
    }
    let grid = RadialGrid::origin_anchored(1e-3, 40.0, 3999)?;
    let lb = NormalForm::new(HamiltonianVariant::LbConformal, Angular::L(0), geo)?;
    let vm = NormalForm::new(HamiltonianVariant::VmConformal, Angular::L(0), geo)?;
    let k2 = p.k * p.k;
    let e_lb = variant_spectrum(&lb, Scheme::Uniform(grid), 1)?[0]
        - HamiltonianVariant::LbConformal.record().operator_constant_k2 * k2;
    let e_vm = variant_spectrum(&vm, Scheme::Uniform(grid), 1)?[0]
        - HamiltonianVariant::VmConformal.record().operator_constant_k2 * k2;
    let offset = e_lb - e_vm;
    Ok(SuiteReport {
        suite: Suite::Similarity,
        checks: vec![
            Check::new("residual h=1e-3", coarse, Bound::AtMost(1e-4)),
            Check::new("residual h=1e-4", fine, Bound::AtMost(1e-6)),
            Check::new("bare spectral offset minus 3k^2/8", (offset - 3.0 * k2 / 8.0).abs(), Bound::AtMost(1e-6)),
        ],
    })
}

/// Exact `w` equality of predicted partners, completeness against a
/// brute-force scan of `n, l ≤ box_size`, and coincidence of the oracle
/// eigenvalues of the general-β operator for each partner pair in the
/// multiplet table with `n, l ≤ 2`.
pub fn degeneracy_suite(a: RationalExponent, p: &PerlickIParams, box_size: u32) -> Result<SuiteReport> {
    let mut missing = 0u32;
    let mut spurious = 0u32;
    for n in 0..=box_size {
        for l in 0..=box_size {
            let label = LevelLabel::new(n, l, a);
            let partners = degenerate_partners(&label, a, box_size, box_size);
            spurious += partners.iter().filter(|x| x.w != label.w).count() as u32;
            for n2 in 0..=box_size {
                for l2 in 0..=box_size {
                    let other = LevelLabel::new(n2, l2, a);
                    if (n2, l2) != (n, l) && other.w == label.w && !partners.contains(&other) {
                        missing += 1;
                    }
                }
            }
        }
    }
    let mut checks = vec![
        Check::new("partners with unequal w", spurious as f64, Bound::Equals(0.0)),
        Check::new("brute-force partners missed", missing as f64, Bound::Equals(0.0)),
    ];
    let geo = PerlickIParams::new(a.beta(), p.k, p.mu)?;
    let table = multiplet_table(a, p.mu, p.k, 2, 2)?;
    for group in table.iter().filter(|g| g.members.len() > 1) {
        let mut values = Vec::new();
        for m in &group.members {
            let nf = NormalForm::new(HamiltonianVariant::VmGeneralBeta, Angular::L(m.l), geo)?;
            let r_max = degeneracy_box_radius(nf.params.mu, nf.params.k, m.w_f64())
                .min(conformal_resolution_limit(nf.params.k));
            let ev = variant_spectrum(&nf, Scheme::Regularized { r_max, n: 1200 }, m.n as usize + 1)?;
            values.push(ev[m.n as usize]);
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let rel = (hi - lo) / group.energy.abs();
        checks.push(Check::new(format!("oracle spread w={}", group.w), rel, Bound::AtMost(1e-3)));
        let exact = (values[0] - group.energy).abs() / group.energy.abs();
        checks.push(Check::new(format!("oracle vs formula w={}", group.w), exact, Bound::AtMost(1e-3)));
    }
    Ok(SuiteReport {
        suite: Suite::Degeneracy,
        checks,
    })
}

fn degeneracy_box_radius(mu: f64, k: f64, w: f64) -> f64 {
    // decay rate of the state in r is μ/w - k w
    let rate = (mu / w - k * w).max(1e-2);
    (30.0 / rate).clamp(10.0, 200.0)
}

/// `|E(n,l) - E_hydrogen| ≤ 5e-8` for `n + l ≤ 3` at small `k`.
pub fn flat_limit_suite(mu: f64, k: f64) -> Result<SuiteReport> {
    let mut worst: f64 = 0.0;
    for total in 0..=3u32 {
        for l in 0..=total {
            let e = closedform_energy(total - l, l, mu, k)?;
            let s = (total + 1) as f64;
            worst = worst.max((e + mu * mu / (2.0 * s * s)).abs());
        }
    }
    Ok(SuiteReport {
        suite: Suite::FlatLimit,
        checks: vec![Check::new("max |E - E_hydrogen|", worst, Bound::AtMost(5e-8))],
    })
}

/// Node counts of the bound ladder states, and their Gram matrix in every
/// picture.
pub fn nodes_suite(p: &PerlickIParams, q: f64) -> Result<SuiteReport> {
    let (mu, k) = (p.mu, p.k);
    let n_max = bound_state_count(&q, &mu, &k).ok_or(Error::Unbound {
        shape_squared: q * q,
        limit: mu / k,
    })?;
    let states = (0..=n_max)
        .map(|n| build_eigenfunction(n, q, mu, k))
        .collect::<Result<Vec<_>>>()?;
    let grid = RadialGrid::origin_anchored(1e-3, 60.0, 6000)?;
    let mut checks = Vec::new();
    for (n, psi) in states.iter().enumerate() {
        checks.push(Check::new(
            format!("nodes n={n}"),
            node_count(psi, &grid) as f64,
            Bound::Equals(n as f64),
        ));
    }
    let geo = PerlickIParams::kepler(k, mu)?;
    let r_max = conformal_resolution_limit(k);
    for picture in Picture::ALL {
        if picture == Picture::GeneralBeta && p.beta != 1.0 {
            continue;
        }
        let moved = states
            .iter()
            .map(|s| similarity_transport(s, Picture::Hyperbolic, picture, &geo))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&dyn RadialFunction> = moved.iter().map(|m| m as &dyn RadialFunction).collect();
        let quad = Quadrature::new(Domain::PullBack {
            chart: picture.chart(),
            r_max,
        });
        let g = normalize_gram(&gram_matrix_with(&refs, |x| picture.eval_weight(x, &geo), &geo, &quad)?);
        let mut off: f64 = 0.0;
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    off = off.max(v.abs());
                }
            }
        }
        checks.push(Check::new(
            format!("gram off-diagonal {picture:?}"),
            off,
            Bound::AtMost(1e-8),
        ));
    }
    Ok(SuiteReport {
        suite: Suite::Nodes,
        checks,
    })
}

/// The predicted number of bound levels against the number of oracle
/// eigenvalues below the continuum edge `-2μk`, and the growth of
/// `∫₀^R e^{2W_s} dr` from `R` to `2R` (with `R` at forty e-folds of the
/// integrand) for the first unbound and the last
/// bound shape.
pub fn bound_states_suite(p: &PerlickIParams, q: f64) -> Result<SuiteReport> {
    let (mu, k) = (p.mu, p.k);
    let predicted = bound_state_count(&q, &mu, &k).map_or(0.0, |n| n as f64 + 1.0);
    let grid = RadialGrid::origin_anchored(1e-3, 60.0, 6000)?;
    let t = discretize(q, p, &grid)?;
    let edge = -2.0 * mu * k;
    let found = t.count_below(edge) as f64;
    let growth = |s: f64| -> Result<f64> {
        // e^{2W_s} ~ e^{-2(μ/s - ks) r} at large r
        let r = (20.0 / (mu / s - k * s).abs()).clamp(5.0, 200.0);
        let i = |upper: f64| {
            Quadrature::new(Domain::Finite(0.0, upper)).integrate(
                |x| (2.0 * prepotential(s, x, mu, k).unwrap_or(f64::NAN)).exp(),
                |_| Ok(1.0),
                p,
            )
        };
        Ok(i(2.0 * r)? / i(r)?)
    };
    let last = q + predicted - 1.0;
    let mut checks = vec![Check::new("oracle levels below -2mu k", found, Bound::Equals(predicted))];
    if predicted > 0.0 {
        checks.push(Check::new(
            format!("norm growth R->2R, s={last}"),
            growth(last)?,
            Bound::AtMost(1.0 + 1e-6),
        ));
    }
    checks.push(Check::new(
        format!("norm growth R->2R, s={}", last + 1.0),
        growth(last + 1.0)?,
        Bound::AtLeast(1e3),
    ));
    Ok(SuiteReport {
        suite: Suite::BoundStates,
        checks,
    })
}
