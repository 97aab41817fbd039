//! Reference computations used only by the tests. None of them call into the
//! library.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Fourth-order central first derivative.
pub fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative.
pub fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h * h)
}

type Metric = dyn Fn([f64; 3]) -> [[f64; 3]; 3];

fn inverse3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let mut inv = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    inv
}

fn shifted(x: [f64; 3], i: usize, t: f64) -> [f64; 3] {
    let mut y = x;
    y[i] += t;
    y
}

/// `Γ^a_{bc}` by central differences of the metric.
fn christoffel(g: &Metric, x: [f64; 3], h: f64) -> [[[f64; 3]; 3]; 3] {
    let gi = inverse3(g(x));
    let mut dg = [[[0.0; 3]; 3]; 3]; // dg[c][a][b] = ∂_c g_ab
    for c in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                dg[c][a][b] = d1(|t| g(shifted(x, c, t))[a][b], 0.0, h);
            }
        }
    }
    let mut gam = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut s = 0.0;
                for d in 0..3 {
                    s += gi[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
                }
                gam[a][b][c] = 0.5 * s;
            }
        }
    }
    gam
}

/// Scalar curvature of a 3-metric from Christoffel symbols and the Ricci
/// tensor, all derivatives by finite differences.
pub fn ricci_scalar(g: &Metric, x: [f64; 3], h: f64) -> f64 {
    let gam = christoffel(g, x, h);
    let mut dgam = [[[[0.0; 3]; 3]; 3]; 3]; // dgam[e][a][b][c] = ∂_e Γ^a_bc
    for e in 0..3 {
        let plus2 = christoffel(g, shifted(x, e, 2.0 * h), h);
        let plus1 = christoffel(g, shifted(x, e, h), h);
        let minus1 = christoffel(g, shifted(x, e, -h), h);
        let minus2 = christoffel(g, shifted(x, e, -2.0 * h), h);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    dgam[e][a][b][c] = (minus2[a][b][c] - 8.0 * minus1[a][b][c] + 8.0 * plus1[a][b][c]
                        - plus2[a][b][c])
                        / (12.0 * h);
                }
            }
        }
    }
    let gi = inverse3(g(x));
    let mut r = 0.0;
    for b in 0..3 {
        for c in 0..3 {
            let mut ric = 0.0;
            for a in 0..3 {
                ric += dgam[a][a][b][c] - dgam[c][a][b][a];
                for d in 0..3 {
                    ric += gam[a][a][d] * gam[d][b][c] - gam[a][c][d] * gam[d][b][a];
                }
            }
            r += gi[b][c] * ric;
        }
    }
    r
}

/// `dr²/(β²(1+k²r²)) + r²(dθ² + sin²θ dφ²)` in `(r, θ, φ)`.
pub fn family_one_metric(beta: f64, k: f64) -> impl Fn([f64; 3]) -> [[f64; 3]; 3] {
    move |x: [f64; 3]| {
        let (r, th) = (x[0], x[1]);
        [
            [1.0 / (beta * beta * (1.0 + k * k * r * r)), 0.0, 0.0],
            [0.0, r * r, 0.0],
            [0.0, 0.0, r * r * th.sin() * th.sin()],
        ]
    }
}

/// `P_n^{(α,β)}(x) = (α+1)_n/n! ₂F₁(-n, n+α+β+1; α+1; (1-x)/2)`, together
/// with the sum of the absolute values of the terms (the scale against
/// which cancellation is measured).
pub fn jacobi_series(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let z = 0.5 * (1.0 - x);
    let mut pre = 1.0;
    for j in 0..n {
        pre *= (alpha + 1.0 + j as f64) / (j + 1) as f64;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs = 1.0;
    let nf = n as f64;
    for j in 0..n {
        let jf = j as f64;
        term *= (-nf + jf) * (nf + alpha + beta + 1.0 + jf) / ((alpha + 1.0 + jf) * (jf + 1.0)) * z;
        sum += term;
        abs += term.abs();
    }
    (pre * sum, (pre * abs).abs())
}

/// Labels `(n, l)` in the box grouped by `2·m₂·w = 2n m₂ + 2 m₁ l + m₁ + m₂`
/// reduced against the common denominator, with integer keys and no rationals.
pub fn brute_force_groups(m1: i64, m2: i64, n_max: u32, l_max: u32) -> BTreeMap<i64, Vec<(u32, u32)>> {
    let mut groups: BTreeMap<i64, Vec<(u32, u32)>> = BTreeMap::new();
    for n in 0..=n_max {
        for l in 0..=l_max {
            let key = 2 * n as i64 * m2 + 2 * m1 * l as i64 + m1 + m2;
            groups.entry(key).or_default().push((n, l));
        }
    }
    groups
}

/// `-μ²/(2s²)`.
pub fn hydrogen(mu: f64, s: f64) -> f64 {
    -mu * mu / (2.0 * s * s)
}

/// `-(μ²/s² + k²s²)`.
pub fn hyperbolic_level(s: f64, mu: f64, k: f64) -> f64 {
    -(mu * mu / (s * s) + k * k * s * s)
}

/// Eigenvalues of a small dense symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn dense_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Writes straight to the process stdout, bypassing the test harness's
/// output capture, so report lines show up in every run.
pub fn report(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}
