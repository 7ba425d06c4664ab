//! Property tests for the exact kernel: integral calculus identities, the
//! equivalence of the three dominance routes, witness soundness, and the
//! structural guarantees of the closed-form module.

use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use hhcert_core::closedform::SymmetricFamilyPoint;
use hhcert_core::functional::{Functional, IntervalSpec};
use hhcert_core::oracle::{
    even_crossing_pair, hinge_exact, hinge_sweep, random_functional, ConstraintKind,
    RandomInstanceSpec,
};
use hhcert_core::ordering::{
    check_alternating, check_levin_steckin, check_ohlin, compare, crossing_profile,
    witness_violation, Verdict, WitnessFn,
};
use hhcert_core::pwfun::PwFun;
use hhcert_core::{int, rat, Q};

fn node() -> impl Strategy<Value = Q> {
    (1..=12i64).prop_flat_map(|d| (0..=d).prop_map(move |n| rat(n, d)))
}

fn seeded(seed: u64, count: ConstraintKind, nodes: usize) -> Functional {
    random_functional(&RandomInstanceSpec::new(nodes, count, seed)).unwrap()
}

fn transform_of(seed: u64) -> PwFun {
    let nodes = 3 + (seed % 4) as usize;
    seeded(seed, ConstraintKind::None, nodes).bv_transform()
}

/// Independent tail integral `∫ₜ¹ g`, summed piece by piece from the raw
/// representation rather than through `prefix_integral`.
fn tail_integral(g: &PwFun, t: &Q) -> Q {
    let (entries, _) = g.decompose();
    let mut bounds: Vec<Q> = entries.iter().map(|(bp, _, _)| bp.clone()).collect();
    bounds.push(int(1));
    let mut acc = int(0);
    for (i, (bp, slope, start)) in entries.iter().enumerate() {
        let hi = &bounds[i + 1];
        if hi <= t {
            continue;
        }
        let lo = bp.max(t);
        let a = lo - bp;
        let b = hi - bp;
        // ∫ over [lo,hi] of start + slope·(u − bp)
        acc = acc + start * (&b - &a) + slope * (&b * &b - &a * &a) / int(2);
    }
    acc
}

proptest! {
    #[test]
    fn prefix_integral_is_additive(seed in any::<u64>(), t in node()) {
        let g = transform_of(seed);
        let total = g.prefix_integral(&int(1)).unwrap();
        let head = g.prefix_integral(&t).unwrap();
        prop_assert_eq!(total, head + tail_integral(&g, &t));
    }

    #[test]
    fn subtraction_commutes_with_prefix_integral(a in any::<u64>(), b in any::<u64>(), t in node()) {
        let g1 = transform_of(a);
        let g2 = transform_of(b);
        let d = g1.subtract(&g2);
        prop_assert_eq!(
            d.prefix_integral(&t).unwrap(),
            g1.prefix_integral(&t).unwrap() - g2.prefix_integral(&t).unwrap()
        );
    }

    #[test]
    fn sign_profile_roots_are_exact_zeros(a in any::<u64>(), b in any::<u64>()) {
        let d = transform_of(a).subtract(&transform_of(b));
        for seg in d.sign_profile() {
            for p in [&seg.lo, &seg.hi] {
                if p.is_positive() && *p < int(1) && !d.breakpoints().contains(p) {
                    prop_assert!(d.value(p).is_zero());
                }
            }
        }
    }

    #[test]
    fn min_prefix_bounds_every_probe(seed in any::<u64>()) {
        let g = transform_of(seed);
        let (_, min) = g.min_prefix_integral();
        for k in 0..=64i64 {
            let t = rat(k, 64);
            prop_assert!(min <= g.prefix_integral(&t).unwrap());
        }
    }

    #[test]
    fn canonical_form_round_trips(seed in any::<u64>()) {
        let g = transform_of(seed);
        let (entries, end) = g.decompose();
        prop_assert_eq!(PwFun::build_with_end(&entries, end).unwrap(), g);
    }

    /// Mass equals the descending-node cumulative formula
    /// `Σⱼ (a₁+⋯+aⱼ)(αⱼ₊₁ − αⱼ)` computed directly, with `α = 1 − λ`.
    #[test]
    fn mass_matches_descending_formula(seed in any::<u64>()) {
        let f = seeded(seed, ConstraintKind::None, 4);
        let terms = f.fterms();
        let alphas: Vec<Q> = terms.iter().map(|t| int(1) - &t.node).collect();
        let mut cum = int(0);
        let mut acc = int(0);
        for j in 0..terms.len() - 1 {
            cum = cum + &terms[j].coef;
            acc = acc + &cum * (&alphas[j + 1] - &alphas[j]);
        }
        prop_assert_eq!(f.mass(), acc);
    }

    /// On constants and the identity, the functional acts as mass and
    /// mass − mean; the numeric evaluator must agree to float tolerance.
    #[test]
    fn action_on_affine_functions(seed in any::<u64>()) {
        let f = seeded(seed, ConstraintKind::None, 5);
        let mass = f.mass();
        let mean = f.mean_integral();
        prop_assert_eq!(f.eval_constant_exact(true), mass.clone());
        prop_assert_eq!(f.eval_affine_exact(true), &mass - &mean);
        let unit = IntervalSpec::unit();
        let num_const = f.evaluate_numeric(|_| 1.0, |u| u, &unit);
        let num_id = f.evaluate_numeric(|u| u, |u| u * u / 2.0, &unit);
        prop_assert!((num_const - mass.to_f64().unwrap()).abs() < 1e-12);
        prop_assert!((num_id - (&mass - &mean).to_f64().unwrap()).abs() < 1e-12);
    }

    /// Evaluating on `[x,y]` equals evaluating the normalized functional on
    /// the pulled-back functions.
    #[test]
    fn affine_change_covariance(seed in any::<u64>(), p in 2..=4u32) {
        let f = seeded(seed, ConstraintKind::None, 4);
        let iv = IntervalSpec::new(int(-3), int(7)).unwrap();
        let direct = f.evaluate_numeric(
            |u| u.powi(p as i32),
            |u| u.powi(p as i32 + 1) / f64::from(p + 1),
            &iv,
        );
        let (x, len) = (-3.0, 10.0);
        let pulled = f.evaluate_numeric(
            |l| (x + len * l).powi(p as i32),
            |l| (x + len * l).powi(p as i32 + 1) / (f64::from(p + 1) * len),
            &IntervalSpec::unit(),
        );
        prop_assert!((direct - pulled).abs() < 1e-9 * (1.0 + direct.abs()));
    }

    #[test]
    fn hinge_routes_always_agree(seed in any::<u64>(), t in node()) {
        let f = seeded(seed, ConstraintKind::None, 5);
        prop_assert_eq!(hinge_exact(&f, &t), f.eval_hinge_exact(&t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// The prefix-integral route, the alternating-area route, and the hinge
    /// sweep must return the same verdict on every constrained pair.
    #[test]
    fn dominance_routes_agree(seed in any::<u64>()) {
        let lhs = seeded(seed, ConstraintKind::Mass1MeanHalf, 3 + (seed % 4) as usize);
        let rhs = seeded(seed ^ 0x9e3779b97f4a7c15, ConstraintKind::Mass1MeanHalf, 3 + (seed % 3) as usize);
        let g_l = lhs.bv_transform();
        let g_r = rhs.bv_transform();
        let (ls_holds, _) = check_levin_steckin(&g_l, &g_r);
        let profile = crossing_profile(&g_l, &g_r);
        let alt = check_alternating(&profile, true, true).unwrap();
        let (max_violation, _) = hinge_sweep(&lhs, &rhs).unwrap();
        prop_assert_eq!(ls_holds, alt == Verdict::Holds);
        prop_assert_eq!(ls_holds, !max_violation.is_positive());
        prop_assert_eq!(compare(&lhs, &rhs).verdict == Verdict::Holds, ls_holds);
    }
}

proptest! {
    /// A `Holds` certificate survives a hinge audit at every breakpoint of
    /// the difference and every interior root; a `Fails` certificate's
    /// witness reproduces its violation exactly.
    #[test]
    fn certificates_survive_hinge_audit(seed in any::<u64>()) {
        let lhs = seeded(seed, ConstraintKind::Mass1MeanHalf, 4);
        let rhs = seeded(!seed, ConstraintKind::Mass1MeanHalf, 4);
        let cert = compare(&lhs, &rhs);
        let d = lhs.bv_transform().subtract(&rhs.bv_transform());
        let mut points: Vec<Q> = d.breakpoints().to_vec();
        for seg in d.sign_profile() {
            points.push(seg.lo);
            points.push(seg.hi);
        }
        match cert.verdict {
            Verdict::Holds => {
                for t in &points {
                    let w = WitnessFn::Hinge { t: t.clone() };
                    prop_assert!(!witness_violation(&lhs, &rhs, &w).is_positive());
                }
            }
            Verdict::Fails => {
                let w = cert.witness.expect("failing certificate carries a witness");
                prop_assert!(w.violation.is_positive());
                prop_assert_eq!(witness_violation(&lhs, &rhs, &w.function), w.violation);
            }
            Verdict::NotComparable => prop_assert!(false, "constrained pair cannot be incomparable"),
        }
    }

    /// Whenever the single-crossing fast path decides, the full criterion
    /// agrees.
    #[test]
    fn ohlin_consistent_with_levin_steckin(a in any::<u64>(), b in any::<u64>()) {
        let g1 = transform_of(a);
        let g2 = transform_of(b);
        if let Some(v) = check_ohlin(&g1, &g2) {
            let (holds, _) = check_levin_steckin(&g1, &g2);
            prop_assert_eq!(v == Verdict::Holds, holds);
        }
    }

    /// Even crossing counts are never convex-ordered.
    #[test]
    fn even_crossings_never_hold(seed in any::<u64>()) {
        let (g1, g2) = even_crossing_pair(seed);
        let profile = crossing_profile(&g1, &g2);
        prop_assert_eq!(profile.count() % 2, 0);
        let (holds, _) = check_levin_steckin(&g1, &g2);
        prop_assert!(!holds);
        prop_assert_eq!(check_alternating(&profile, true, true).unwrap(), Verdict::Fails);
    }

    /// Four-node endpoint formulas with unit mass and mean 1/2 cross the
    /// uniform transform exactly once.
    #[test]
    fn four_point_endpoint_single_crossing(seed in any::<u64>()) {
        let mut spec = RandomInstanceSpec::new(4, ConstraintKind::Mass1MeanHalf, seed);
        spec.include_endpoints = true;
        let f = random_functional(&spec).unwrap();
        let profile = crossing_profile(
            &f.bv_transform(),
            &Functional::integral_mean().bv_transform(),
        );
        prop_assert_eq!(profile.count(), 1);
    }

    /// The symmetric family construction always has mass 1 and mean 1/2.
    #[test]
    fn symmetric_family_mass_and_mean(num in -40..=40i64, den in 1..=8i64, an in 1..=20i64) {
        let a = rat(num, den);
        let alpha = rat(an, 41);
        let p = SymmetricFamilyPoint::from_a_alpha(a, alpha).unwrap();
        let f = p.functional();
        prop_assert_eq!(f.mass(), int(1));
        prop_assert_eq!(f.mean_integral(), rat(1, 2));
    }
}

/// Case (i) of the four-point classification, sampled: valid formulas with
/// the left-endpoint coefficient above −1 always sit below the integral
/// mean.
#[test]
fn four_point_case_one_sample() {
    let mut checked = 0u32;
    let mut seed = 0u64;
    while checked < 400 {
        let mut spec = RandomInstanceSpec::new(4, ConstraintKind::Mass1MeanHalf, seed);
        spec.include_endpoints = true;
        let f = random_functional(&spec).unwrap();
        seed += 1;
        let a1 = f
            .fterms()
            .iter()
            .find(|t| t.node.is_zero())
            .map(|t| t.coef.clone())
            .unwrap_or_else(|| int(0));
        if a1 <= int(-1) {
            continue;
        }
        let cert = compare(&f, &Functional::integral_mean());
        assert_eq!(cert.verdict, Verdict::Holds, "seed {seed} violated case (i)");
        checked += 1;
    }
}
