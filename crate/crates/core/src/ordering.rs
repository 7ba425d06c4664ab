//! Convex-order dominance between two functionals.
//!
//! `lhs ≤ rhs` (meaning `T_lhs(f) ≤ T_rhs(f)` for every continuous convex
//! `f`) is decided on the BV transforms `G_lhs`, `G_rhs`. Writing
//! `P(t) = ∫₀ᵗ (G_rhs − G_lhs)`, the inequality holds iff
//!
//! * the masses agree: `G_lhs(1) = G_rhs(1)`,
//! * `P(t) ≥ 0` for all `t`, and `P(1) = 0`
//!
//! (the Levin-Stečkin criterion). Equal masses and equal transform integrals
//! are exactly comparability on constants and affine functions, so their
//! failure yields a `NotComparable` verdict with a constant or affine
//! counterexample. Otherwise `P` is piecewise quadratic and its exact global
//! minimum decides; a negative minimum at `t*` produces the hinge witness
//! `u ↦ (u−t*)₊` whose violation is exactly `−min P`.
//!
//! The alternating-area route of the same decision (crossing profile, areas
//! `A₀ ≥ A₁`, `A₀−A₁+A₂ ≥ A₃`, …) is implemented independently and must
//! agree; the equivalence is enforced by tests.

use num_traits::{Signed, Zero};

use crate::functional::Functional;
use crate::pwfun::{PwFun, Sign};
use crate::{CoreError, Q};

/// Outcome of a dominance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The inequality holds for every continuous convex function.
    Holds,
    /// A convex counterexample exists despite matching masses and means.
    Fails,
    /// Already constants or affine functions break the comparison.
    NotComparable,
}

/// Sign-interval decomposition of the difference of two transforms.
///
/// `crossings` are the exact sign-change points of `G₁ − G₂`; `areas[i]` is
/// the absolute area over the i-th maximal nonzero-sign interval; signs
/// alternate starting from `first_sign`. Intervals where the difference
/// vanishes identically are merged out of the sign sequence and recorded in
/// `zero_intervals`; they never count as crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingProfile {
    pub crossings: Vec<Q>,
    pub areas: Vec<Q>,
    pub first_sign: Option<Sign>,
    pub zero_intervals: Vec<(Q, Q)>,
}

impl CrossingProfile {
    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    /// Signs of the maximal intervals, alternating from `first_sign`.
    pub fn signs(&self) -> Vec<Sign> {
        let mut out = Vec::with_capacity(self.areas.len());
        let Some(first) = self.first_sign else {
            return out;
        };
        let mut sign = first;
        for _ in 0..self.areas.len() {
            out.push(sign);
            sign = match sign {
                Sign::Neg => Sign::Pos,
                Sign::Pos => Sign::Neg,
                Sign::Zero => Sign::Zero,
            };
        }
        out
    }

    /// Partial sums `Σ_{j≤k} (−1)ʲ Aⱼ` for `k = 0, …, n`.
    ///
    /// With equal masses and means and the first sign negative, the odd-index
    /// sums are exactly the dominance conditions, and the last sum is 0.
    pub fn alternating_partial_sums(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.areas.len());
        let mut acc = crate::int(0);
        for (j, a) in self.areas.iter().enumerate() {
            if j % 2 == 0 {
                acc = acc + a;
            } else {
                acc = acc - a;
            }
            out.push(acc.clone());
        }
        out
    }
}

/// Exact mass/mean values of both sides; equality of each pair is necessary
/// for dominance in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryCheck {
    pub mass_lhs: Q,
    pub mass_rhs: Q,
    pub mean_lhs: Q,
    pub mean_rhs: Q,
}

impl NecessaryCheck {
    pub fn mass_equal(&self) -> bool {
        self.mass_lhs == self.mass_rhs
    }

    pub fn mean_equal(&self) -> bool {
        self.mean_lhs == self.mean_rhs
    }
}

/// The convex function witnessing a violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessFn {
    /// `u ↦ (u − t)₊`
    Hinge { t: Q },
    /// `u ↦ ±u`
    Affine { positive: bool },
    /// `u ↦ ±1`
    Constant { positive: bool },
}

/// A witness plus the exact amount by which `T_lhs` exceeds `T_rhs` on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexWitness {
    pub function: WitnessFn,
    pub violation: Q,
}

/// Full evidence for a comparison: verdict, necessary-condition values,
/// crossing profile with alternating partial sums, the exact extremum of the
/// oriented prefix integral, and a counterexample witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub mass_lhs: Q,
    pub mass_rhs: Q,
    pub mean_lhs: Q,
    pub mean_rhs: Q,
    /// Present when masses and means both match.
    pub profile: Option<CrossingProfile>,
    pub partial_sums: Vec<Q>,
    /// `(argmin, min)` of `∫₀ᵗ (G_rhs − G_lhs)`; with matching masses and
    /// means the verdict is `Holds` exactly when the min is ≥ 0.
    pub min_prefix: (Q, Q),
    pub witness: Option<ConvexWitness>,
}

/// Sign-interval profile of `g1 − g2` with exact crossings and areas.
///
/// When a sign change happens across an interval where the difference
/// vanishes identically, the crossing is reported at the left endpoint of
/// that interval.
pub fn crossing_profile(g1: &PwFun, g2: &PwFun) -> CrossingProfile {
    let d = g1.subtract(g2);
    let mut crossings = Vec::new();
    let mut areas: Vec<Q> = Vec::new();
    let mut zero_intervals = Vec::new();
    let mut first_sign = None;
    let mut last_sign: Option<Sign> = None;
    let mut last_hi: Option<Q> = None;
    for seg in d.sign_profile() {
        if seg.sign == Sign::Zero {
            zero_intervals.push((seg.lo, seg.hi));
            continue;
        }
        let area = (d.prefix_integral(&seg.hi).unwrap() - d.prefix_integral(&seg.lo).unwrap()).abs();
        if last_sign == Some(seg.sign) {
            let acc = areas.last_mut().expect("area for previous segment");
            *acc = &*acc + area;
        } else {
            if let Some(prev_hi) = &last_hi {
                // crossing at the shared endpoint, or at the left edge of the
                // separating zero interval
                crossings.push(prev_hi.clone());
            }
            first_sign.get_or_insert(seg.sign);
            areas.push(area);
            last_sign = Some(seg.sign);
        }
        last_hi = Some(seg.hi);
    }
    CrossingProfile {
        crossings,
        areas,
        first_sign,
        zero_intervals,
    }
}

/// Exact mass and mean-integral comparison of the two sides.
pub fn check_necessary(lhs: &Functional, rhs: &Functional) -> NecessaryCheck {
    let g_l = lhs.bv_transform();
    let g_r = rhs.bv_transform();
    NecessaryCheck {
        mass_lhs: g_l.end_value().clone(),
        mass_rhs: g_r.end_value().clone(),
        mean_lhs: g_l.integral(),
        mean_rhs: g_r.integral(),
    }
}

/// Necessary-and-sufficient prefix-integral test for `∫f dG₁ ≤ ∫f dG₂`.
///
/// Returns the verdict and `(argmin, min)` of `∫₀ᵗ (g2 − g1)`; the verdict is
/// true iff the end values agree, the minimum is ≥ 0, and the full integrals
/// agree.
pub fn check_levin_steckin(g1: &PwFun, g2: &PwFun) -> (bool, (Q, Q)) {
    let oriented = g2.subtract(g1);
    let min_prefix = oriented.min_prefix_integral();
    let holds = g1.end_value() == g2.end_value()
        && !min_prefix.1.is_negative()
        && oriented.integral().is_zero();
    (holds, min_prefix)
}

/// Alternating-area decision on a crossing profile with matching masses and
/// means: an even crossing count always fails; an odd count holds iff every
/// odd-index alternating partial sum is ≥ 0 (`A₀ ≥ A₁`, `A₀−A₁+A₂ ≥ A₃`, …).
///
/// A profile whose first sign is positive fails outright: the prefix
/// integral of `G₁ − G₂` is already positive on the first interval.
pub fn check_alternating(
    profile: &CrossingProfile,
    masses_equal: bool,
    means_equal: bool,
) -> Result<Verdict, CoreError> {
    if !masses_equal || !means_equal {
        return Ok(Verdict::NotComparable);
    }
    let Some(first) = profile.first_sign else {
        return Ok(Verdict::Holds); // identical transforms
    };
    if profile.crossings.is_empty() {
        // single-signed nonzero difference contradicts equal means
        return Err(CoreError::InconsistentProfile);
    }
    if first == Sign::Pos {
        return Ok(Verdict::Fails);
    }
    let n = profile.crossings.len();
    if n % 2 == 0 {
        return Ok(Verdict::Fails);
    }
    let sums = profile.alternating_partial_sums();
    let ok = sums
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 1 && *k + 2 <= n)
        .all(|(_, s)| !s.is_negative());
    Ok(if ok { Verdict::Holds } else { Verdict::Fails })
}

/// Single-crossing fast path: applies only when both transforms are genuine
/// distribution functions (nondecreasing) with equal masses and means. A
/// single crossing with `g1` below first gives `Holds`; anything else defers
/// to the prefix-integral test.
pub fn check_ohlin(g1: &PwFun, g2: &PwFun) -> Option<Verdict> {
    if !g1.is_nondecreasing() || !g2.is_nondecreasing() {
        return None;
    }
    if g1.end_value() != g2.end_value() || g1.integral() != g2.integral() {
        return None;
    }
    let profile = crossing_profile(g1, g2);
    match (profile.first_sign, profile.count()) {
        (None, _) => Some(Verdict::Holds),
        (Some(Sign::Neg), 1) => Some(Verdict::Holds),
        _ => None,
    }
}

/// Exact evaluation of `T_lhs − T_rhs` on a witness function, from the
/// closed-form antiderivatives (`(u−t)₊²/2` for hinges). Never consults the
/// BV transforms, so it independently audits certificate violations.
pub fn witness_violation(lhs: &Functional, rhs: &Functional, w: &WitnessFn) -> Q {
    match w {
        WitnessFn::Hinge { t } => lhs.eval_hinge_exact(t) - rhs.eval_hinge_exact(t),
        WitnessFn::Affine { positive } => {
            lhs.eval_affine_exact(*positive) - rhs.eval_affine_exact(*positive)
        }
        WitnessFn::Constant { positive } => {
            lhs.eval_constant_exact(*positive) - rhs.eval_constant_exact(*positive)
        }
    }
}

/// Decides `lhs ≤ rhs` over all continuous convex functions and assembles the
/// full certificate.
///
/// Pipeline: mass mismatch → `NotComparable` with a constant witness; mean
/// mismatch → `NotComparable` with an affine witness; otherwise the exact
/// minimum of the oriented prefix integral decides, with a hinge witness at
/// the argmin on failure (ties toward smaller `t*`).
pub fn compare(lhs: &Functional, rhs: &Functional) -> Certificate {
    let g_l = lhs.bv_transform();
    let g_r = rhs.bv_transform();
    let mass_lhs = g_l.end_value().clone();
    let mass_rhs = g_r.end_value().clone();
    let mean_lhs = g_l.integral();
    let mean_rhs = g_r.integral();
    let oriented = g_r.subtract(&g_l);
    let min_prefix = oriented.min_prefix_integral();

    if mass_lhs != mass_rhs {
        let function = WitnessFn::Constant {
            positive: mass_lhs > mass_rhs,
        };
        let violation = witness_violation(lhs, rhs, &function);
        debug_assert!(violation.is_positive());
        return Certificate {
            verdict: Verdict::NotComparable,
            mass_lhs,
            mass_rhs,
            mean_lhs,
            mean_rhs,
            profile: None,
            partial_sums: Vec::new(),
            min_prefix,
            witness: Some(ConvexWitness {
                function,
                violation,
            }),
        };
    }
    if mean_lhs != mean_rhs {
        let function = WitnessFn::Affine {
            positive: mean_rhs > mean_lhs,
        };
        let violation = witness_violation(lhs, rhs, &function);
        debug_assert!(violation.is_positive());
        return Certificate {
            verdict: Verdict::NotComparable,
            mass_lhs,
            mass_rhs,
            mean_lhs,
            mean_rhs,
            profile: None,
            partial_sums: Vec::new(),
            min_prefix,
            witness: Some(ConvexWitness {
                function,
                violation,
            }),
        };
    }

    let profile = crossing_profile(&g_l, &g_r);
    let partial_sums = profile.alternating_partial_sums();
    let (verdict, witness) = if min_prefix.1.is_negative() {
        let function = WitnessFn::Hinge {
            t: min_prefix.0.clone(),
        };
        let violation = witness_violation(lhs, rhs, &function);
        debug_assert_eq!(violation, -min_prefix.1.clone());
        (
            Verdict::Fails,
            Some(ConvexWitness {
                function,
                violation,
            }),
        )
    } else {
        (Verdict::Holds, None)
    };
    Certificate {
        verdict,
        mass_lhs,
        mass_rhs,
        mean_lhs,
        mean_rhs,
        profile: Some(profile),
        partial_sums,
        min_prefix,
        witness,
    }
}
