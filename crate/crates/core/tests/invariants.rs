//! Property tests over random admissible parameters.

use hcmc_core::barrier_estimates::{annulus_rho_minus, sphere_radius};
use hcmc_core::curvature_algebra::{mean_curvature_r, CurvatureVector};
use hcmc_core::export::formats::{read_profile_csv, same_float, write_profile_csv};
use hcmc_core::limacon::ell;
use hcmc_core::rot_profile::{
    classify, critical_curvature, profile_domain, Profile, ProfileParams, ResidualMode, Shape,
};
use hcmc_core::trans_profile::{TranslationParams, TranslationProfile};
use proptest::prelude::*;

/// `(n, r, H, d)` with `H` at least 0.05 off critical and `d` small enough
/// to be admissible in most regimes.
fn any_params() -> impl Strategy<Value = (u32, u32, f64, f64)> {
    (2u32..=5)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, r)| {
            let crit = critical_curvature(n, r);
            // n = r has no subcritical range.
            let sub = if crit > 0.0 { 0.05 * crit..0.95 * crit } else { 0.05..2.0 };
            let h = prop_oneof![sub, crit + 0.05..crit + 2.0];
            (Just(n), Just(r), h, -0.4f64..0.4)
        })
}

fn build(n: u32, r: u32, h: f64, d: f64) -> Option<Profile> {
    let p = ProfileParams::new(n, r, h, d).ok()?;
    Profile::new(p).ok()
}

fn interior(p: &Profile, count: usize) -> Vec<f64> {
    let a = p.domain().rho_minus;
    let b = p.domain().rho_plus.unwrap_or(p.extent());
    (1..=count).map(|i| a + (b - a) * i as f64 / (count + 1) as f64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn first_integral_and_curvature_hold((n, r, h, d) in any_params()) {
        let Some(p) = build(n, r, h, d) else { return Ok(()) };
        for rho in interior(&p, 20) {
            let res = p.first_integral_residual(rho, ResidualMode::Analytic).unwrap();
            prop_assert!(res <= 1e-10, "residual {res} at {rho}");
            let (kt, kn) = p.principal_curvatures(rho).unwrap();
            if kn.is_finite() {
                let k = CurvatureVector::profile(n as usize, kt, kn).unwrap();
                let hr = mean_curvature_r(&k, r as usize).unwrap();
                prop_assert!((hr - h).abs() <= 1e-8 * (1.0 + h), "H_r {hr} vs {h} at {rho}");
            }
        }
    }

    #[test]
    fn sigma_stays_in_unit_interval((n, r, h, d) in any_params()) {
        let Ok(params) = ProfileParams::new(n, r, h, d) else { return Ok(()) };
        let Ok(dom) = profile_domain(&params) else { return Ok(()) };
        // |σ| ≤ 1 inside, with equality at the non-axis ends.
        let p = Profile::new(params).unwrap();
        for rho in interior(&p, 30) {
            prop_assert!(p.sigma(rho).abs() <= 1.0 + 1e-12);
        }
        if let Some(rp) = dom.rho_plus {
            prop_assert!((p.sigma(rp).abs() - 1.0).abs() <= 1e-9, "σ(ρ₊) = {}", p.sigma(rp));
        }
    }

    #[test]
    fn classification_picks_one_consistent_row((n, r, h, d) in any_params()) {
        let Ok(params) = ProfileParams::new(n, r, h, d) else { return Ok(()) };
        let Ok(rec) = classify(&params) else { return Ok(()) };
        prop_assert_eq!(rec.combination, rec.table_row.combination());
        prop_assert_eq!(classify(&params).unwrap(), rec);
    }

    #[test]
    fn d_zero_gives_sphere_or_entire_graph((n, r, h, _d) in any_params()) {
        let rec = classify(&ProfileParams::new(n, r, h, 0.0).unwrap()).unwrap();
        let expected = if h > critical_curvature(n, r) { Shape::Sphere } else { Shape::EntireGraph };
        prop_assert_eq!(rec.shape, expected);
    }

    #[test]
    fn even_nonpositive_d_is_increasing_and_convex(
        n in 2u32..=5, half in 1u32..=2, extra in 0.05f64..2.0, d in -0.4f64..=0.0,
    ) {
        let r = 2 * half;
        prop_assume!(r <= n);
        let h = critical_curvature(n, r) + extra;
        let Some(p) = build(n, r, h, d) else { return Ok(()) };
        for rho in interior(&p, 100) {
            prop_assert!(p.lambda_dot(rho).unwrap() >= 0.0);
            prop_assert!(p.lambda_ddot(rho).unwrap() >= 0.0, "λ̈ < 0 at {rho}");
        }
    }

    #[test]
    fn even_positive_d_has_one_inflection(
        n in 3u32..=5, extra in 0.05f64..2.0, t in 0.05f64..0.9,
    ) {
        let r = 2;
        let h = critical_curvature(n, r) + extra;
        // Scale d under the cap so the profile stays resolvable.
        let range = hcmc_core::rot_profile::admissible_dr_range(n, r, h).unwrap();
        let d = t * range.upper.min(1.0);
        let Some(p) = build(n, r, h, d) else { return Ok(()) };
        let signs: Vec<bool> = interior(&p, 100)
            .into_iter()
            .map(|rho| p.lambda_ddot(rho).unwrap() > 0.0)
            .collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert_eq!(changes, 1);
    }

    #[test]
    fn profile_csv_round_trips((n, r, h, d) in any_params()) {
        let Some(p) = build(n, r, h, d) else { return Ok(()) };
        let samples = p.sample(25).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &samples).unwrap();
        let back = read_profile_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), samples.len());
        for (a, b) in samples.iter().zip(&back) {
            prop_assert!(same_float(a.rho, b.rho) && same_float(a.lambda, b.lambda));
            prop_assert!(same_float(a.lambda_ddot, b.lambda_ddot) && same_float(a.k_n, b.k_n));
        }
    }

    #[test]
    fn translation_profile_is_convex_with_oracle(
        n in 2u32..=5, r in 1u32..=3, extra in 0.05f64..2.0, eps in 1e-3f64..0.2,
    ) {
        prop_assume!(r <= n);
        let h = critical_curvature(n, r) + extra;
        let Ok(tp) = TranslationParams::new(n, r, h, eps) else { return Ok(()) };
        let prof = TranslationProfile::new(tp).unwrap();
        let lo = tp.lower();
        let hi = prof.rho_plus();
        for i in 1..=100 {
            let rho = lo + (hi - lo) * i as f64 / 101.0;
            prop_assert!(prof.mu_ddot(rho).unwrap() > 0.0, "μ̈ ≤ 0 at {rho}");
            let (kt, kn) = prof.principal_curvatures(rho).unwrap();
            let k = CurvatureVector::profile(n as usize, kt, kn).unwrap();
            let hr = mean_curvature_r(&k, r as usize).unwrap();
            prop_assert!((hr - h).abs() <= 1e-8 * (1.0 + h));
        }
    }

    #[test]
    fn ell_is_bounded_and_increasing_in_a(c in 0.05f64..2.0, gap in 0.05f64..3.0, step in 0.01f64..1.0) {
        let a = c + gap;
        let l = ell(a, c).unwrap();
        prop_assert!(l > 0.0 && l < a - c);
        prop_assert!(ell(a + step, c).unwrap() > l);
    }
}

#[test]
fn rho_minus_ratio_tends_to_one() {
    for (n, r) in [(3, 1), (4, 2)] {
        for (d, tol) in [(1e-4, 0.05), (1e-6, 0.005)] {
            let rm = annulus_rho_minus(n, r, d).unwrap();
            let q = d / rm.powi((n - r) as i32);
            assert!((q - 1.0).abs() <= tol, "({n},{r}) d={d}: {q}");
        }
    }
}

#[test]
fn sphere_radius_decreases_with_h() {
    let hs: Vec<f64> = (1..=20).map(|i| 1.0 / 3.0 + 0.1 * i as f64).collect();
    let radii: Vec<f64> = hs.iter().map(|&h| sphere_radius(3, 2, h).unwrap()).collect();
    assert!(radii.windows(2).all(|w| w[1] < w[0]), "{radii:?}");
}

#[test]
fn cylinder_height_decreases_as_epsilon_shrinks() {
    let heights: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&eps| {
            let p = TranslationParams::new(3, 2, 1.0, eps).unwrap();
            TranslationProfile::new(p).unwrap().cylinder_height().unwrap()
        })
        .collect();
    assert!(heights.windows(2).all(|w| w[1] < w[0]), "{heights:?}");
    assert!(heights.iter().all(|&h| h > 0.0));
}
