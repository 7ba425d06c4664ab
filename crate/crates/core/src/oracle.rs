//! Independent cross-validation of verdicts, plus seeded random instances.
//!
//! Hinge functions `u ↦ (u−t)₊` are the extremal convex test functions: with
//! matching masses and means, `T_lhs(h_t) − T_rhs(h_t)` equals the prefix
//! integral of `G_lhs − G_rhs` at `t`, and that prefix integral is piecewise
//! quadratic, so its global maximum over the breakpoints and the interior
//! roots of the difference is the worst violation over *all* convex
//! functions. [`hinge_sweep`] evaluates exactly that finite sweep, with each
//! hinge value computed per functional through the transform (integration by
//! parts), while [`Functional::eval_hinge_exact`] computes the same number
//! from closed-form antiderivatives; the two routes guard each other against
//! sign and orientation bugs in the transform construction.
//!
//! Floating-point checks live here too and are never authoritative: they
//! confirm exact verdicts to tolerance on explicit convex families and on
//! arbitrary intervals.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::functional::{Functional, IntervalSpec};
use crate::pwfun::PwFun;
use crate::{CoreError, Q};

/// A convex test function with a closed-form antiderivative.
///
/// Positions (hinge kinks, absolute-deviation centers) are in physical
/// coordinates of the evaluation interval.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// `u ↦ ±1`
    Constant { positive: bool },
    /// `u ↦ ±u`
    Affine { positive: bool },
    /// `u ↦ (u−t)₊`, antiderivative `(u−t)₊²/2`
    Hinge(Q),
    /// `u ↦ uᵖ`, convex on `[0,∞)` for any `p ≥ 1` and on all of `ℝ` for even `p`
    Power(u32),
    /// `u ↦ e^{ku}`, antiderivative `e^{ku}/k`
    Exponential(f64),
    /// `u ↦ |u−c|`, antiderivative `(u−c)|u−c|/2`
    AbsDev(Q),
}

impl TestFunction {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            TestFunction::Constant { positive } => {
                if *positive {
                    1.0
                } else {
                    -1.0
                }
            }
            TestFunction::Affine { positive } => {
                if *positive {
                    u
                } else {
                    -u
                }
            }
            TestFunction::Hinge(t) => (u - t.to_f64().unwrap()).max(0.0),
            TestFunction::Power(p) => u.powi(*p as i32),
            TestFunction::Exponential(k) => (k * u).exp(),
            TestFunction::AbsDev(c) => (u - c.to_f64().unwrap()).abs(),
        }
    }

    pub fn antiderivative(&self, u: f64) -> f64 {
        match self {
            TestFunction::Constant { positive } => {
                if *positive {
                    u
                } else {
                    -u
                }
            }
            TestFunction::Affine { positive } => {
                if *positive {
                    u * u / 2.0
                } else {
                    -u * u / 2.0
                }
            }
            TestFunction::Hinge(t) => {
                let s = (u - t.to_f64().unwrap()).max(0.0);
                s * s / 2.0
            }
            TestFunction::Power(p) => u.powi(*p as i32 + 1) / f64::from(p + 1),
            TestFunction::Exponential(k) => (k * u).exp() / k,
            TestFunction::AbsDev(c) => {
                let s = u - c.to_f64().unwrap();
                s * s.abs() / 2.0
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            TestFunction::Constant { positive: true } => "const +1".into(),
            TestFunction::Constant { positive: false } => "const -1".into(),
            TestFunction::Affine { positive: true } => "u".into(),
            TestFunction::Affine { positive: false } => "-u".into(),
            TestFunction::Hinge(t) => format!("hinge {t}"),
            TestFunction::Power(p) => format!("u^{p}"),
            TestFunction::Exponential(k) => format!("exp({k}u)"),
            TestFunction::AbsDev(c) => format!("|u - {c}|"),
        }
    }
}

/// Standard convex family on an interval: constants, ±affine, safe powers,
/// exponentials, one absolute deviation, and `hinge_count` hinges on an
/// equispaced interior grid.
///
/// Odd powers are included only when the interval stays nonnegative, where
/// they are convex.
pub fn default_family(iv: &IntervalSpec, hinge_count: usize) -> Vec<TestFunction> {
    let mut family = vec![
        TestFunction::Constant { positive: true },
        TestFunction::Constant { positive: false },
        TestFunction::Affine { positive: true },
        TestFunction::Affine { positive: false },
        TestFunction::Power(2),
        TestFunction::Power(4),
        TestFunction::Exponential(1.0),
        TestFunction::Exponential(-1.0),
        TestFunction::AbsDev(iv.point(&crate::rat(1, 2))),
    ];
    if !iv.x().is_negative() {
        family.push(TestFunction::Power(3));
    }
    let n = hinge_count as i64;
    for k in 1..=n {
        family.push(TestFunction::Hinge(iv.point(&crate::rat(k, n + 1))));
    }
    family
}

/// Exact `T(h_t)` for the hinge at `t ∈ [0,1]`, via the BV transform:
/// `(1−t)·G(1) − ∫ₜ¹ G(u) du`.
pub fn hinge_exact(f: &Functional, t: &Q) -> Q {
    let g = f.bv_transform();
    hinge_exact_on(&g, t)
}

fn hinge_exact_on(g: &PwFun, t: &Q) -> Q {
    let tail = g.integral()
        - g.prefix_integral(t)
            .expect("hinge kink must lie in [0,1]");
    (crate::int(1) - t) * g.end_value() - tail
}

/// Exact worst hinge violation of `lhs ≤ rhs` over the critical set (all
/// transform breakpoints plus interior roots of the difference), as
/// `(max_violation, argmax)`; ties resolve to the smallest kink.
///
/// Requires matching masses and means; the critical set then provably
/// contains the global maximizer over all convex functions.
pub fn hinge_sweep(lhs: &Functional, rhs: &Functional) -> Result<(Q, Q), CoreError> {
    let g_l = lhs.bv_transform();
    let g_r = rhs.bv_transform();
    if g_l.end_value() != g_r.end_value() || g_l.integral() != g_r.integral() {
        return Err(CoreError::MassMeanMismatch {
            mass_lhs: g_l.end_value().clone(),
            mass_rhs: g_r.end_value().clone(),
            mean_lhs: g_l.integral(),
            mean_rhs: g_r.integral(),
        });
    }
    let d = g_l.subtract(&g_r);
    let mut critical: Vec<Q> = d.breakpoints().to_vec();
    for seg in d.sign_profile() {
        critical.push(seg.lo);
        critical.push(seg.hi);
    }
    critical.sort();
    critical.dedup();

    let mut best_t = critical[0].clone();
    let mut best = hinge_exact_on(&g_l, &best_t) - hinge_exact_on(&g_r, &best_t);
    for t in &critical[1..] {
        let v = hinge_exact_on(&g_l, t) - hinge_exact_on(&g_r, t);
        if v > best {
            best = v;
            best_t = t.clone();
        }
    }
    Ok((best, best_t))
}

/// One evaluated family member: `T_lhs(f) − T_rhs(f)` in floating point.
#[derive(Debug, Clone)]
pub struct CrossCheckRow {
    pub label: String,
    pub diff: f64,
}

/// Floating-point evaluation of the difference over a convex family.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub rows: Vec<CrossCheckRow>,
}

impl CrossCheckReport {
    /// Largest signed difference; positive means some family member violates
    /// `lhs ≤ rhs` numerically.
    pub fn max_diff(&self) -> f64 {
        self.rows.iter().map(|r| r.diff).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn worst(&self) -> Option<&CrossCheckRow> {
        self.rows
            .iter()
            .max_by(|a, b| a.diff.total_cmp(&b.diff))
    }
}

/// Evaluates `T_lhs − T_rhs` on every family member over `iv`.
pub fn numeric_cross_check(
    lhs: &Functional,
    rhs: &Functional,
    family: &[TestFunction],
    iv: &IntervalSpec,
) -> CrossCheckReport {
    let rows = family
        .iter()
        .map(|tf| {
            let l = lhs.evaluate_numeric(|u| tf.eval(u), |u| tf.antiderivative(u), iv);
            let r = rhs.evaluate_numeric(|u| tf.eval(u), |u| tf.antiderivative(u), iv);
            CrossCheckRow {
                label: tf.label(),
                diff: l - r,
            }
        })
        .collect();
    CrossCheckReport { rows }
}

/// Linear constraints imposed on a random functional's coefficients, beyond
/// the always-present zero-sum requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Only `Σc = 0`.
    None,
    /// `Σc = 0` and mass 1.
    Mass1,
    /// `Σc = 0`, mass 1, transform integral 1/2.
    Mass1MeanHalf,
}

impl ConstraintKind {
    fn equations(self) -> usize {
        match self {
            ConstraintKind::None => 1,
            ConstraintKind::Mass1 => 2,
            ConstraintKind::Mass1MeanHalf => 3,
        }
    }
}

/// Deterministic generator parameters for random antiderivative functionals.
#[derive(Debug, Clone)]
pub struct RandomInstanceSpec {
    pub node_count: usize,
    pub node_denom_bound: u64,
    pub coef_bound: i64,
    pub constraints: ConstraintKind,
    pub include_endpoints: bool,
    pub seed: u64,
}

impl RandomInstanceSpec {
    pub fn new(node_count: usize, constraints: ConstraintKind, seed: u64) -> RandomInstanceSpec {
        RandomInstanceSpec {
            node_count,
            node_denom_bound: 12,
            coef_bound: 6,
            constraints,
            include_endpoints: false,
            seed,
        }
    }
}

fn random_node(rng: &mut ChaCha8Rng, denom_bound: u64) -> Q {
    let den = rng.gen_range(1..=denom_bound) as i64;
    let num = rng.gen_range(0..=den);
    crate::rat(num, den)
}

fn random_coef(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    let den = rng.gen_range(1..=4);
    loop {
        let num = rng.gen_range(-bound * den..=bound * den);
        if num != 0 {
            return crate::rat(num, den);
        }
    }
}

/// Exact Gaussian elimination with partial (first nonzero) pivoting.
fn solve_linear(mut mat: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let factor = &mat[r][col] / &mat[col][col];
                for c in col..n {
                    mat[r][c] = &mat[r][c] - &factor * &mat[col][c];
                }
                rhs[r] = &rhs[r] - &factor * &rhs[col];
            }
        }
    }
    Some(
        (0..n)
            .map(|i| &rhs[i] / &mat[i][i])
            .collect(),
    )
}

/// Random antiderivative functional with nodes and coefficients of bounded
/// denominator, the trailing coefficients solved exactly so the requested
/// constraints hold. Deterministic per seed.
pub fn random_functional(spec: &RandomInstanceSpec) -> Result<Functional, CoreError> {
    let k = spec.constraints.equations();
    if spec.node_count > 8 || spec.node_count < k.max(2) {
        return Err(CoreError::Precondition(format!(
            "node count {} incompatible with {} constraint equations",
            spec.node_count, k
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..64 {
        let mut nodes: Vec<Q> = Vec::with_capacity(spec.node_count);
        if spec.include_endpoints {
            nodes.push(crate::int(0));
            nodes.push(crate::int(1));
        }
        let mut guard = 0;
        while nodes.len() < spec.node_count {
            let n = random_node(&mut rng, spec.node_denom_bound);
            if !nodes.contains(&n) {
                nodes.push(n);
            }
            guard += 1;
            if guard > 256 {
                break;
            }
        }
        if nodes.len() < spec.node_count {
            continue;
        }
        nodes.sort();

        let free: Vec<Q> = (0..spec.node_count - k)
            .map(|_| random_coef(&mut rng, spec.coef_bound))
            .collect();
        // rows: Σc, Σcλ, Σcλ² over the trailing k nodes; Vandermonde on
        // distinct nodes, hence invertible
        let solved_nodes = &nodes[spec.node_count - k..];
        let mut mat = Vec::with_capacity(k);
        let mut rhs = Vec::with_capacity(k);
        for row in 0..k {
            let pow = |x: &Q| -> Q {
                let mut acc = crate::int(1);
                for _ in 0..row {
                    acc = acc * x;
                }
                acc
            };
            mat.push(solved_nodes.iter().map(&pow).collect::<Vec<Q>>());
            let target = if row == 0 { crate::int(0) } else { crate::int(1) };
            let free_part: Q = free
                .iter()
                .zip(&nodes[..spec.node_count - k])
                .map(|(c, x)| c * pow(x))
                .sum();
            rhs.push(target - free_part);
        }
        let Some(solved) = solve_linear(mat, rhs) else {
            continue;
        };
        let coefs = free.into_iter().chain(solved);
        let terms: Vec<(Q, Q)> = nodes.into_iter().zip(coefs).collect();
        let f = Functional::from_fterms(&terms)?;
        // reject the degenerate draw that lands exactly on the integral mean
        if spec.constraints != ConstraintKind::None && f == Functional::integral_mean() {
            continue;
        }
        if f.fterms().is_empty() {
            continue;
        }
        return Ok(f);
    }
    Err(CoreError::GenerationFailed(format!(
        "no admissible functional after 64 attempts (seed {})",
        spec.seed
    )))
}

/// Random three-node endpoint formula `{0, λ, 1}` with nonzero middle
/// coefficient, rescaled to mass exactly 1. Deterministic per seed.
pub fn random_three_point_endpoint(seed: u64) -> Functional {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let den = rng.gen_range(2..=20);
        let num = rng.gen_range(1..den);
        let lambda = crate::rat(num, den);
        let c1 = random_coef(&mut rng, 6);
        let c2 = random_coef(&mut rng, 6);
        let c3 = -(&c1 + &c2);
        let mass = &c2 * &lambda + &c3;
        if mass.is_zero() {
            continue;
        }
        let terms = [
            (crate::int(0), &c1 / &mass),
            (lambda, &c2 / &mass),
            (crate::int(1), &c3 / &mass),
        ];
        if terms.iter().any(|(_, c)| c.is_zero()) {
            continue;
        }
        return Functional::from_fterms(&terms).expect("coefficients sum to zero");
    }
}

/// A transform pair whose difference changes sign an even number of times
/// (2 or 4) with equal end values and equal integrals. Such pairs are never
/// convex-ordered. Deterministic per seed.
pub fn even_crossing_pair(seed: u64) -> (PwFun, PwFun) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = if rng.gen_bool(0.5) { 2 } else { 4 };
    let mut cuts: Vec<Q> = Vec::new();
    while cuts.len() < n {
        let den = rng.gen_range(4..=24) as i64;
        let num = rng.gen_range(1..den);
        let c = crate::rat(num, den);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort();
    let mut bounds = vec![crate::int(0)];
    bounds.extend(cuts);
    bounds.push(crate::int(1));

    let mut areas: Vec<Q> = (0..=n).map(|_| crate::rat(rng.gen_range(1..=12), 12)).collect();
    // rescale the even-index areas so the alternating sum vanishes, which
    // makes the integrals of the two transforms agree
    let odd_total: Q = areas.iter().skip(1).step_by(2).cloned().sum();
    let even_total: Q = areas.iter().step_by(2).cloned().sum();
    let scale = odd_total / even_total;
    for a in areas.iter_mut().step_by(2) {
        *a = &*a * &scale;
    }

    let first_positive = rng.gen_bool(0.5);
    let entries: Vec<(Q, Q, Q)> = (0..=n)
        .map(|i| {
            let len = &bounds[i + 1] - &bounds[i];
            let mut v = &areas[i] / len;
            if (i % 2 == 0) != first_positive {
                v = -v;
            }
            (bounds[i].clone(), crate::int(0), v)
        })
        .collect();
    let d = PwFun::build_with_end(&entries, crate::int(0)).expect("valid step function");
    let uniform = PwFun::build(&[(crate::int(0), crate::int(1), crate::int(0))]).unwrap();
    (uniform.add(&d), uniform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::{check_levin_steckin, compare, crossing_profile, Verdict};
    use crate::{int, rat};

    fn eq8() -> Functional {
        Functional::from_fterms(&[
            (int(0), rat(1, 3)),
            (rat(1, 4), rat(-8, 3)),
            (rat(3, 4), rat(8, 3)),
            (int(1), rat(-1, 3)),
        ])
        .unwrap()
    }

    fn prop4() -> Functional {
        Functional::from_fterms(&[(int(0), int(-3)), (rat(1, 2), int(4)), (int(1), int(-1))])
            .unwrap()
    }

    fn remark3() -> Functional {
        Functional::from_fterms(&[
            (rat(1, 4), int(-3)),
            (rat(9, 20), rat(25, 11)),
            (int(1), rat(8, 11)),
        ])
        .unwrap()
    }

    #[test]
    fn hinge_exact_examples() {
        assert_eq!(hinge_exact(&Functional::integral_mean(), &int(0)), rat(1, 2));
        assert_eq!(hinge_exact(&eq8(), &rat(1, 2)), rat(1, 24));
        assert_eq!(hinge_exact(&prop4(), &rat(1, 3)), rat(-1, 6));
    }

    #[test]
    fn hinge_routes_agree() {
        let probes = [int(0), rat(1, 7), rat(1, 4), rat(2, 5), rat(1, 2), rat(9, 10), int(1)];
        for f in [eq8(), prop4(), remark3(), Functional::trapezoid()] {
            for t in &probes {
                assert_eq!(hinge_exact(&f, t), f.eval_hinge_exact(t));
            }
        }
    }

    #[test]
    fn sweep_classic_pair_has_no_violation() {
        let (max, _) = hinge_sweep(&Functional::midpoint(), &Functional::integral_mean()).unwrap();
        assert!(!max.is_positive());
    }

    #[test]
    fn sweep_finds_exact_violations() {
        let (max, t) = hinge_sweep(&eq8(), &Functional::midpoint()).unwrap();
        assert_eq!((max, t), (rat(1, 24), rat(1, 2)));
        // reversed direction: the worst hinge sits at the interior root 2/7,
        // strictly above the breakpoint violation 1/96 at 1/4
        let (max, t) = hinge_sweep(&Functional::midpoint(), &eq8()).unwrap();
        assert_eq!((max, t), (rat(1, 84), rat(2, 7)));
    }

    #[test]
    fn sweep_rejects_mass_mismatch() {
        let e6 = Functional::from_fterms(&[
            (int(0), int(2)),
            (rat(1, 4), int(-3)),
            (rat(3, 4), int(3)),
            (int(1), int(-2)),
        ])
        .unwrap();
        assert!(hinge_sweep(&e6, &Functional::midpoint()).is_err());
    }

    #[test]
    fn cross_check_confirms_holding_pair() {
        let iv = IntervalSpec::unit();
        let fam = default_family(&iv, 50);
        let report = numeric_cross_check(&Functional::midpoint(), &remark3(), &fam, &iv);
        assert!(report.max_diff() <= 1e-12);

        let wide = IntervalSpec::new(int(-3), int(7)).unwrap();
        let fam = default_family(&wide, 50);
        let report = numeric_cross_check(&Functional::midpoint(), &remark3(), &fam, &wide);
        assert!(report.max_diff() <= 1e-9);
    }

    #[test]
    fn cross_check_exposes_mass_gap_via_constants() {
        let e6 = Functional::from_fterms(&[
            (int(0), int(2)),
            (rat(1, 4), int(-3)),
            (rat(3, 4), int(3)),
            (int(1), int(-2)),
        ])
        .unwrap();
        let iv = IntervalSpec::unit();
        let fam = [TestFunction::Constant { positive: false }];
        let report = numeric_cross_check(&e6, &Functional::midpoint(), &fam, &iv);
        assert!((report.max_diff() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn random_functional_is_deterministic_and_constrained() {
        let spec = RandomInstanceSpec::new(5, ConstraintKind::Mass1MeanHalf, 42);
        let f1 = random_functional(&spec).unwrap();
        let f2 = random_functional(&spec).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(f1.mass(), int(1));
        assert_eq!(f1.mean_integral(), rat(1, 2));

        let spec = RandomInstanceSpec::new(4, ConstraintKind::Mass1, 7);
        let f = random_functional(&spec).unwrap();
        assert_eq!(f.mass(), int(1));

        let spec = RandomInstanceSpec::new(3, ConstraintKind::None, 9);
        let f = random_functional(&spec).unwrap();
        let sum: Q = f.fterms().iter().map(|t| t.coef.clone()).sum();
        assert!(sum.is_zero());
    }

    #[test]
    fn three_point_generator_mass_one_nonzero_middle() {
        for seed in 0..20 {
            let f = random_three_point_endpoint(seed);
            assert_eq!(f.mass(), int(1));
            assert_eq!(f.fterms().len(), 3);
            assert_ne!(f.mean_integral(), rat(1, 2));
        }
    }

    #[test]
    fn even_crossing_pairs_never_hold() {
        for seed in 0..20 {
            let (g1, g2) = even_crossing_pair(seed);
            assert_eq!(g1.end_value(), g2.end_value());
            assert_eq!(g1.integral(), g2.integral());
            let profile = crossing_profile(&g1, &g2);
            assert_eq!(profile.count() % 2, 0);
            assert!(profile.count() > 0);
            let (holds, _) = check_levin_steckin(&g1, &g2);
            assert!(!holds);
        }
    }

    #[test]
    fn sweep_agrees_with_compare_on_seeded_pairs() {
        for seed in 0..40 {
            let lhs = random_functional(&RandomInstanceSpec::new(
                4,
                ConstraintKind::Mass1MeanHalf,
                seed,
            ))
            .unwrap();
            let rhs = random_functional(&RandomInstanceSpec::new(
                5,
                ConstraintKind::Mass1MeanHalf,
                seed + 1000,
            ))
            .unwrap();
            let cert = compare(&lhs, &rhs);
            let (max, _) = hinge_sweep(&lhs, &rhs).unwrap();
            assert_eq!(cert.verdict == Verdict::Holds, !max.is_positive());
        }
    }
}
