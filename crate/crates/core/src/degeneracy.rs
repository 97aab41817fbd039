//! Exact spectrum labels and accidental degeneracies of the general-β family.
//!
//! With `a = 1/β = m₁/m₂` the levels depend on `(n, l)` only through
//! `w = n + a·l + (a+1)/2`, which is kept as an exact rational. Two labels
//! are degenerate exactly when their `w` agree, and for coprime `m₁, m₂`
//! that happens along `n′ = n − j·m₁`, `l′ = l + j·m₂`, `j ∈ ℤ`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// `a = m₁/m₂` with `gcd(m₁, m₂) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    m1: i64,
    m2: i64,
}

impl RationalExponent {
    /// Rejects non-positive or non-coprime pairs. Use [`Self::reduced`] to
    /// accept any positive pair.
    pub fn new(m1: i64, m2: i64) -> Result<Self> {
        let a = Self::reduced(m1, m2)?;
        if a.m1 != m1 {
            return Err(Error::InvalidParameter {
                name: "m1",
                value: m1 as f64,
                reason: "m1 and m2 must be coprime",
            });
        }
        Ok(a)
    }

    /// `m₁/m₂` in lowest terms.
    pub fn reduced(m1: i64, m2: i64) -> Result<Self> {
        if m1 <= 0 {
            return Err(Error::InvalidParameter {
                name: "m1",
                value: m1 as f64,
                reason: "must be a positive integer",
            });
        }
        if m2 <= 0 {
            return Err(Error::InvalidParameter {
                name: "m2",
                value: m2 as f64,
                reason: "must be a positive integer",
            });
        }
        let g = m1.gcd(&m2);
        Ok(Self {
            m1: m1 / g,
            m2: m2 / g,
        })
    }

    pub fn from_ratio(a: Rational64) -> Result<Self> {
        Self::reduced(*a.numer(), *a.denom())
    }

    pub fn m1(&self) -> i64 {
        self.m1
    }

    pub fn m2(&self) -> i64 {
        self.m2
    }

    pub fn value(&self) -> Rational64 {
        Rational64::new(self.m1, self.m2)
    }

    /// `β = 1/a` as a float.
    pub fn beta(&self) -> f64 {
        self.m2 as f64 / self.m1 as f64
    }
}

/// Level label `(n, l)` together with its exact `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelLabel {
    pub n: u32,
    pub l: u32,
    pub w: Rational64,
}

impl LevelLabel {
    pub fn new(n: u32, l: u32, a: RationalExponent) -> Self {
        let (m1, m2) = (a.m1, a.m2);
        let w = Rational64::new(
            2 * n as i64 * m2 + 2 * m1 * l as i64 + m1 + m2,
            2 * m2,
        );
        Self { n, l, w }
    }

    pub fn w_f64(&self) -> f64 {
        self.w.to_f64().unwrap_or(f64::NAN)
    }

    /// `w² < μ/k` (always true for `k = 0`).
    pub fn is_bound(&self, mu: f64, k: f64) -> bool {
        k == 0.0 || self.w_f64().powi(2) * k < mu
    }

    /// Angular multiplicity `2l + 1`.
    pub fn multiplicity(&self) -> u64 {
        2 * self.l as u64 + 1
    }
}

/// `E = -μ²/(2w²) - k²w²/2 + k²/8`.
pub fn energy(label: &LevelLabel, mu: f64, k: f64) -> Result<f64> {
    crate::error::require_positive("mu", mu)?;
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "k",
            value: k,
            reason: "must be finite and non-negative",
        });
    }
    let w = label.w_f64();
    if !label.is_bound(mu, k) {
        return Err(Error::Unbound {
            shape_squared: w * w,
            limit: mu / k,
        });
    }
    Ok(-mu * mu / (2.0 * w * w) - k * k * w * w / 2.0 + k * k / 8.0)
}

/// All other labels in the box `n ≤ n_max`, `l ≤ l_max` with the same `w`,
/// ordered by increasing `l`.
pub fn degenerate_partners(
    label: &LevelLabel,
    a: RationalExponent,
    n_max: u32,
    l_max: u32,
) -> Vec<LevelLabel> {
    let (m1, m2) = (a.m1, a.m2);
    let (n, l) = (label.n as i64, label.l as i64);
    // j ranges so that n - j m1 >= 0 and l + j m2 >= 0
    let j_min = -(l / m2);
    let j_max = n / m1;
    (j_min..=j_max)
        .filter(|&j| j != 0)
        .map(|j| (n - j * m1, l + j * m2))
        .filter(|&(n2, l2)| n2 <= n_max as i64 && l2 <= l_max as i64)
        .map(|(n2, l2)| LevelLabel::new(n2 as u32, l2 as u32, a))
        .collect()
}

/// A set of degenerate levels.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplet {
    pub w: Rational64,
    pub energy: f64,
    /// Members ordered by increasing `l`.
    pub members: Vec<LevelLabel>,
    /// `Σ (2l + 1)` over the members.
    pub multiplicity: u64,
}

/// Bound levels in the box `n ≤ n_max`, `l ≤ l_max`, grouped by exact `w`
/// and sorted by energy.
pub fn multiplet_table(
    a: RationalExponent,
    mu: f64,
    k: f64,
    n_max: u32,
    l_max: u32,
) -> Result<Vec<Multiplet>> {
    let rows: Vec<Vec<(LevelLabel, f64)>> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut row = Vec::new();
            for n in 0..=n_max {
                let label = LevelLabel::new(n, l, a);
                if label.is_bound(mu, k) {
                    row.push((label, energy(&label, mu, k)?));
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut groups: BTreeMap<Rational64, Multiplet> = BTreeMap::new();
    for (label, e) in rows.into_iter().flatten() {
        let entry = groups.entry(label.w).or_insert_with(|| Multiplet {
            w: label.w,
            energy: e,
            members: Vec::new(),
            multiplicity: 0,
        });
        entry.members.push(label);
        entry.multiplicity += label.multiplicity();
    }
    let mut table: Vec<Multiplet> = groups.into_values().collect();
    table.sort_by(|x, y| x.energy.total_cmp(&y.energy).then(x.w.cmp(&y.w)));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::closedform_energy;

    fn half() -> RationalExponent {
        RationalExponent::new(1, 2).unwrap()
    }

    #[test]
    fn coprimality_enforced() {
        assert!(RationalExponent::new(2, 4).is_err());
        assert!(RationalExponent::new(0, 1).is_err());
        assert_eq!(RationalExponent::reduced(2, 4).unwrap(), half());
    }

    #[test]
    fn w_formula() {
        let l = LevelLabel::new(1, 0, half());
        assert_eq!(l.w, Rational64::new(7, 4));
        assert_eq!(LevelLabel::new(0, 2, half()).w, l.w);
    }

    #[test]
    fn energy_examples() {
        let e = energy(&LevelLabel::new(1, 0, half()), 5.0, 0.5).unwrap();
        assert!((e - (-27805.0 / 6272.0)).abs() < 1e-14);
        let one = RationalExponent::new(1, 1).unwrap();
        let h = energy(&LevelLabel::new(0, 0, one), 1.0, 0.0).unwrap();
        assert_eq!(h, -0.5);
        for (n, l) in [(0, 0), (1, 0), (0, 2)] {
            let e = energy(&LevelLabel::new(n, l, one), 5.0, 0.5).unwrap();
            let c = closedform_energy(n, l, 5.0, 0.5).unwrap();
            assert!((e - c).abs() < 1e-13);
        }
        assert!(energy(&LevelLabel::new(5, 0, one), 5.0, 0.5).is_err());
    }

    #[test]
    fn partners() {
        let one = RationalExponent::new(1, 1).unwrap();
        let p = degenerate_partners(&LevelLabel::new(2, 0, one), one, 10, 10);
        let nl: Vec<_> = p.iter().map(|x| (x.n, x.l)).collect();
        assert_eq!(nl, vec![(1, 1), (0, 2)]);
        let p = degenerate_partners(&LevelLabel::new(1, 0, half()), half(), 20, 20);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].n, p[0].l), (0, 2));
        let odd = RationalExponent::new(97, 89).unwrap();
        assert!(degenerate_partners(&LevelLabel::new(3, 4, odd), odd, 10, 10).is_empty());
    }

    #[test]
    fn table_for_a_one() {
        let one = RationalExponent::new(1, 1).unwrap();
        let t = multiplet_table(one, 5.0, 0.5, 5, 5).unwrap();
        let mult: Vec<_> = t.iter().map(|m| m.multiplicity).collect();
        assert_eq!(mult, vec![1, 4, 9]);
        assert!(multiplet_table(one, 5.0, 0.5, 0, 0).unwrap().len() == 1);
    }

    #[test]
    fn table_for_a_half() {
        let t = multiplet_table(half(), 5.0, 0.5, 5, 5).unwrap();
        let g = t.iter().find(|m| m.w == Rational64::new(7, 4)).unwrap();
        let nl: Vec<_> = g.members.iter().map(|x| (x.n, x.l)).collect();
        assert_eq!(nl, vec![(1, 0), (0, 2)]);
        assert_eq!(g.multiplicity, 6);
        for pair in t.windows(2) {
            assert!(pair[0].energy <= pair[1].energy);
        }
    }
}
