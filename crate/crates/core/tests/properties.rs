mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use perlick::closedform::{jacobi_eval, similarity_transport, ClosedFormState, JacobiParams, Picture};
use perlick::degeneracy::{degenerate_partners, multiplet_table, LevelLabel, RationalExponent};
use perlick::function::WithDerivatives;
use perlick::model::{
    chart_map, family1_potential, metric_coefficient, perlick_curvature, CoordinateChart, PerlickIParams,
};
use perlick::oracle::{
    gram_matrix, sturm_eigenvalues, Domain, Quadrature, TridiagonalOperator,
};
use perlick::quantize::{apply_variant, centrifugal_identity, general_beta_reduce, vonroos_kinetic, Angular, HamiltonianVariant, OrderingScheme};
use perlick::susy::{
    build_eigenfunction, factorization_energy, hyperbolic_hamiltonian_at, LadderOperator,
};
use perlick::{Func, RadialFunction};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = PerlickIParams> {
    (0.2f64..4.0, 0.0f64..3.0, 0.1f64..10.0).prop_map(|(b, k, m)| PerlickIParams::new(b, k, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_functions_are_finite(p in params(), e in -6.0f64..6.0) {
        let r = 10f64.powf(e);
        prop_assert!(metric_coefficient(r, &p).unwrap().is_finite());
        prop_assert!(family1_potential(r, &p).unwrap().is_finite());
        let x = chart_map(CoordinateChart::FlatRadius, CoordinateChart::CONFORMAL, r, &p).unwrap();
        prop_assert!(perlick_curvature(x, &p).unwrap().is_finite());
    }

    #[test]
    fn chart_maps_are_monotone(p in params(), a in 0.01f64..0.99, b in 0.01f64..0.99) {
        prop_assume!(p.k > 0.0 && (a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        // hyperbolic radii from a fraction of an O(1/k) range
        let (r1, r2) = (lo * 8.0 / p.k, hi * 8.0 / p.k);
        for to in [CoordinateChart::FlatRadius, CoordinateChart::CONFORMAL] {
            let x1 = chart_map(CoordinateChart::Hyperbolic, to, r1, &p).unwrap();
            let x2 = chart_map(CoordinateChart::Hyperbolic, to, r2, &p).unwrap();
            prop_assert!(x1 < x2, "{to:?}: {x1} !< {x2}");
        }
    }

    #[test]
    fn chart_round_trips(p in params(), t in 0.02f64..0.98) {
        prop_assume!(p.k > 0.0);
        let charts = [CoordinateChart::Hyperbolic, CoordinateChart::FlatRadius, CoordinateChart::CONFORMAL];
        let r = t * 6.0 / p.k;
        for from in charts {
            let x = chart_map(CoordinateChart::Hyperbolic, from, r, &p).unwrap();
            for to in charts {
                let y = chart_map(from, to, x, &p).unwrap();
                let back = chart_map(to, from, y, &p).unwrap();
                prop_assert!(((back - x) / x).abs() < 1e-12, "{from:?}->{to:?}: {x} vs {back}");
            }
        }
    }

    #[test]
    fn factorization_at_random_points(r in 0.1f64..5.0, q in 0.5f64..3.0, mu in 1.0f64..8.0, k in 0.1f64..1.5) {
        let psi = Func(|x: f64| x * x * (-x).exp() * (2.0 + x.cos()));
        let norm = 1.0;
        let eps = factorization_energy(q, mu, k);
        let lower = LadderOperator::lowering(q, mu, k);
        let raise = LadderOperator::raising(q, mu, k);
        let lhs = raise.apply_at(&lower.apply(&psi), r);
        let rhs = hyperbolic_hamiltonian_at(q, mu, k, &psi, r) - eps * psi.value(r);
        prop_assert!((lhs - rhs).abs() < 1e-6 * norm);
        let lhs = lower.apply_at(&raise.apply(&psi), r);
        let rhs = hyperbolic_hamiltonian_at(q + 1.0, mu, k, &psi, r) - eps * psi.value(r);
        prop_assert!((lhs - rhs).abs() < 1e-6 * norm);
    }

    #[test]
    fn ladder_states_degree_decay_nodes(q in 0.5f64..2.5, mu in 2.0f64..12.0, k in 0.1f64..1.0) {
        let n_max = perlick::susy::bound_state_count(&q, &mu, &k);
        prop_assume!(n_max.is_some());
        for n in 0..=n_max.unwrap().min(4) {
            let psi = build_eigenfunction(n, q, mu, k).unwrap();
            prop_assert_eq!(psi.degree(), Some(n as usize));
            prop_assert!(psi.decay_margin() > 0.0);
            prop_assert_eq!(psi.nodes().len(), n as usize);
        }
    }

    #[test]
    fn jacobi_recurrence_matches_series(n in 0u32..=12, a in -4.99f64..4.99, b in -4.99f64..4.99, x in -3.0f64..3.0) {
        let jp = JacobiParams::new(n, a, b);
        prop_assume!(!jp.recurrence_degenerate());
        // the series needs α+1 away from the non-positive integers
        prop_assume!((1..=n).all(|j| (a + j as f64).abs() > 1e-3));
        let (series, scale) = common::jacobi_series(n, a, b, x);
        let got = jacobi_eval(jp, x);
        prop_assert!((got - series).abs() <= 1e-12 * scale.max(series.abs()).max(1e-300),
            "{got} vs {series} (scale {scale})");
    }

    #[test]
    fn vonroos_schemes_match_expanded_kinetics(k in 0.1f64..2.0, r in 0.1f64..3.0, c in 0.2f64..2.0) {
        let f = WithDerivatives { f: move |x: f64| 1.0 + k * k * x * x, d1: move |x: f64| 2.0 * k * k * x, d2: move |_x: f64| 2.0 * k * k };
        let psi = WithDerivatives {
            f: move |x: f64| (c * x).sin() * x,
            d1: move |x: f64| c * x * (c * x).cos() + (c * x).sin(),
            d2: move |x: f64| 2.0 * c * (c * x).cos() - c * c * x * (c * x).sin(),
        };
        let j = psi.jet(r);
        let lb = vonroos_kinetic(OrderingScheme::LAPLACE_BELTRAMI, &f, &psi, r).unwrap();
        let expanded = -(1.0 + k * k * r * r) * j.d2 - k * k * r * j.d1;
        prop_assert!((lb - expanded).abs() < 1e-10 * (1.0 + expanded.abs()));
        let s = vonroos_kinetic(OrderingScheme::SCHRODINGER, &f, &psi, r).unwrap();
        prop_assert!((s + (1.0 + k * k * r * r) * j.d2).abs() < 1e-10 * (1.0 + s.abs()));
    }

    #[test]
    fn centrifugal_identity_holds(num in 1i64..40, den in 1i64..40, l in 0u32..30) {
        let a = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assert!(centrifugal_identity(l, &a));
        let q = general_beta_reduce(l, &a);
        let expected = &a * BigRational::from_integer(BigInt::from(l))
            + (&a + BigRational::from_integer(BigInt::from(1))) / BigRational::from_integer(BigInt::from(2));
        prop_assert_eq!(q, expected);
    }

    #[test]
    fn sturm_counts_match_dense_oracle(
        diag in prop::collection::vec(-5.0f64..5.0, 8),
        off in prop::collection::vec(-2.0f64..2.0, 7),
        ts in prop::collection::vec(-10.0f64..10.0, 20),
    ) {
        let t = TridiagonalOperator::new(diag.clone(), off.clone()).unwrap();
        let mut dense = vec![vec![0.0; 8]; 8];
        for i in 0..8 {
            dense[i][i] = diag[i];
            if i < 7 {
                dense[i][i + 1] = off[i];
                dense[i + 1][i] = off[i];
            }
        }
        let reference = common::dense_eigenvalues(dense);
        let ev = sturm_eigenvalues(&t, 8).unwrap();
        for (a, b) in ev.iter().zip(&reference) {
            prop_assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "{a} vs {b}");
        }
        for th in ts {
            let want = reference.iter().filter(|&&x| x < th - 1e-9).count();
            let upper = reference.iter().filter(|&&x| x < th + 1e-9).count();
            let got = t.count_below(th);
            prop_assert!(want <= got && got <= upper);
        }
    }

    #[test]
    fn regrouping_after_scaling_is_identical(m1 in 1i64..6, m2 in 1i64..6, c in 1i64..5) {
        let a = RationalExponent::reduced(m1, m2).unwrap();
        let scaled = RationalExponent::reduced(c * m1, c * m2).unwrap();
        prop_assert_eq!(a, scaled);
        let t1 = multiplet_table(a, 50.0, 0.5, 6, 6).unwrap();
        let t2 = multiplet_table(scaled, 50.0, 0.5, 6, 6).unwrap();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn partners_share_w_and_are_complete(m1 in 1i64..5, m2 in 1i64..5, n in 0u32..12, l in 0u32..12) {
        let a = RationalExponent::reduced(m1, m2).unwrap();
        let label = LevelLabel::new(n, l, a);
        let partners = degenerate_partners(&label, a, 12, 12);
        for p in &partners {
            prop_assert_eq!(p.w, label.w);
        }
        let groups = common::brute_force_groups(a.m1(), a.m2(), 12, 12);
        let key = 2 * n as i64 * a.m2() + 2 * a.m1() * l as i64 + a.m1() + a.m2();
        prop_assert_eq!(groups[&key].len(), partners.len() + 1);
    }
}

#[test]
fn a_one_groups_are_fixed_n_plus_l() {
    let one = RationalExponent::new(1, 1).unwrap();
    for m in multiplet_table(one, 1000.0, 0.1, 9, 9).unwrap() {
        let s = m.members[0].n + m.members[0].l;
        assert!(m.members.iter().all(|x| x.n + x.l == s));
        let expected = (0..=9).filter(|&l| l <= s && s - l <= 9).count();
        assert_eq!(m.members.len(), expected);
    }
}

#[test]
fn gram_matrices_are_symmetric_and_psd() {
    let p = PerlickIParams::kepler(0.5, 5.0).unwrap();
    let states: Vec<_> = (0..=2).map(|n| build_eigenfunction(n, 1.0, 5.0, 0.5).unwrap()).collect();
    let extra = Func(|r: f64| r * (-r).exp());
    let mut refs: Vec<&dyn RadialFunction> = states.iter().map(|s| s as &dyn RadialFunction).collect();
    refs.push(&extra);
    let quad = Quadrature::new(Domain::HalfLine { start: 0.0, scale: 5.0 });
    let g = gram_matrix(&refs, perlick::model::WeightFunction::Unit, &p, &quad).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert!((g[i][j] - g[j][i]).abs() <= 1e-14 * g[i][i].max(g[j][j]));
        }
    }
    let smallest = common::dense_eigenvalues(g)[0];
    assert!(smallest >= -1e-10, "{smallest}");
}

#[test]
fn variants_are_symmetric_under_their_weights() {
    // compactly supported C^4 bumps in each chart coordinate
    let bump = |a: f64, b: f64, c: f64| {
        let f = move |x: f64| if x <= a || x >= b { 0.0 } else { ((x - a) * (b - x)).powi(6) * (1.0 + c * x) };
        Func(f)
    };
    let p = PerlickIParams::kepler(0.5, 5.0).unwrap().with_g_shift(0.3).unwrap();
    let pb = PerlickIParams::new(2.0, 0.5, 5.0).unwrap();
    for v in HamiltonianVariant::ALL {
        let params = if v == HamiltonianVariant::VmGeneralBeta { pb } else { p };
        let geo = v.geometry(&params);
        let (lo, hi) = match v.chart() {
            CoordinateChart::Hyperbolic | CoordinateChart::FlatRadius => (0.3, 3.0),
            _ => {
                let e = perlick::model::conformal_edge(&geo);
                (0.1 * e, 0.8 * e)
            }
        };
        let mid = 0.5 * (lo + hi);
        let phi = bump(lo, hi, 0.3);
        let psi = bump(lo + 0.1 * (hi - lo), hi, -0.5 / mid);
        let ang = Angular::L(1);
        let quad = Quadrature { panels: 64, order: 16, domain: Domain::Finite(lo, hi) };
        let w = |x: f64| v.eval_weight(x, &params);
        let left = quad
            .integrate(|x| phi.value(x) * apply_variant(v, &psi, x, &params, ang).unwrap(), w, &geo)
            .unwrap();
        let right = quad
            .integrate(|x| apply_variant(v, &phi, x, &params, ang).unwrap() * psi.value(x), w, &geo)
            .unwrap();
        let scale = left.abs().max(right.abs());
        assert!((left - right).abs() <= 1e-8 * scale, "{}: {left} vs {right}", v.name());
    }
}

#[test]
fn closed_form_is_orthogonal_in_the_conformal_chart() {
    let p = PerlickIParams::kepler(0.5, 5.0).unwrap();
    let states: Vec<_> = (0..=2).map(|n| ClosedFormState::new(n, 0, 5.0, 0.5).unwrap()).collect();
    let refs: Vec<&dyn RadialFunction> = states.iter().map(|s| s as &dyn RadialFunction).collect();
    let quad = Quadrature::new(Domain::PullBack {
        chart: CoordinateChart::CONFORMAL,
        r_max: perlick::oracle::conformal_resolution_limit(0.5),
    });
    let g = perlick::oracle::normalize_gram(
        &perlick::oracle::gram_matrix_with(&refs, |x| Picture::SchrodingerConformal.eval_weight(x, &p), &p, &quad).unwrap(),
    );
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert!(g[i][j].abs() < 1e-8, "{i}{j}: {}", g[i][j]);
            }
        }
    }
    // transport is unitary: the same matrix in the hyperbolic picture
    let back: Vec<_> = states
        .iter()
        .map(|s| similarity_transport(s, Picture::SchrodingerConformal, Picture::Hyperbolic, &p).unwrap())
        .collect();
    let refs: Vec<&dyn RadialFunction> = back.iter().map(|s| s as &dyn RadialFunction).collect();
    let quad = Quadrature::new(Domain::Finite(0.0, perlick::oracle::conformal_resolution_limit(0.5)));
    let h = perlick::oracle::gram_matrix_with(&refs, |_| Ok(1.0), &p, &quad).unwrap();
    let c = perlick::oracle::gram_matrix_with(
        &states.iter().map(|s| s as &dyn RadialFunction).collect::<Vec<_>>(),
        |x| Picture::SchrodingerConformal.eval_weight(x, &p),
        &p,
        &Quadrature::new(Domain::PullBack { chart: CoordinateChart::CONFORMAL, r_max: perlick::oracle::conformal_resolution_limit(0.5) }),
    )
    .unwrap();
    assert!((h[0][0] - c[0][0]).abs() < 1e-8 * c[0][0]);
}
