//! Closed-form dominance criteria for four-point antiderivative formulas,
//! calibrated against the exact ordering engine.
//!
//! The criteria below are published as formulas in the coefficients; several
//! of them are wrong or use an inconsistent parameterization. They are
//! evaluated here *literally* and never silently repaired: every
//! reconciliation attempt (such as the `α ↔ 1−α` swap for the trapezoid
//! condition) is a separately labelled column, and the exact verdict from
//! [`crate::ordering::compare`] is always the ground truth.

use num_traits::{Signed, Zero};

use crate::functional::Functional;
use crate::ordering::{compare, Verdict};
use crate::{CoreError, Q};

/// A four-point antiderivative formula
/// `(a₁F(α₁x+(1−α₁)y) + ⋯ + a₄F(α₄x+(1−α₄)y)) / (y−x)` in the descending
/// node convention `1 = α₁ > α₂ > α₃ > α₄ = 0`, coefficients summing to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPointFormula {
    coeffs: [Q; 4],
    alpha2: Q,
    alpha3: Q,
}

/// Which chain of inequalities the sign of `a₁` selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourPointCase {
    /// `a₁ > 0`: formula ≤ integral mean ≤ trapezoid
    FormulaBelowMean,
    /// `a₁ < −1`, `a₁+a₂ > 0`: midpoint ≤ integral mean ≤ formula
    MeanBelowFormula,
    /// `a₁ ∈ (−1, 0]`: midpoint ≤ formula ≤ integral mean
    FormulaBetweenMidpointAndMean,
    /// `a₁ < −1`, `a₁+a₂ ≤ 0`: integral mean ≤ formula ≤ trapezoid
    FormulaBetweenMeanAndTrapezoid,
}

/// One endpoint of a chain link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainTerm {
    Formula,
    Midpoint,
    IntegralMean,
    Trapezoid,
}

impl ChainTerm {
    pub fn resolve(&self, formula: &Functional) -> Functional {
        match self {
            ChainTerm::Formula => formula.clone(),
            ChainTerm::Midpoint => Functional::midpoint(),
            ChainTerm::IntegralMean => Functional::integral_mean(),
            ChainTerm::Trapezoid => Functional::trapezoid(),
        }
    }
}

/// A claimed inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainLink {
    pub lhs: ChainTerm,
    pub rhs: ChainTerm,
}

/// Classification outcome: the selected case, the claimed chain, and the
/// exact verdict recomputed for each link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPointReport {
    pub case: Option<FourPointCase>,
    pub claimed: Vec<ChainLink>,
    pub verified: Vec<(ChainLink, Verdict)>,
}

impl FourPointFormula {
    pub fn new(coeffs: [Q; 4], alpha2: Q, alpha3: Q) -> Result<FourPointFormula, CoreError> {
        let sum: Q = coeffs.iter().cloned().sum();
        if !sum.is_zero() {
            return Err(CoreError::CoefficientSum(sum));
        }
        let one = crate::int(1);
        if !(alpha2 < one && alpha3 < alpha2 && alpha3.is_positive()) {
            return Err(CoreError::Precondition(format!(
                "nodes must satisfy 1 > {alpha2} > {alpha3} > 0"
            )));
        }
        Ok(FourPointFormula {
            coeffs,
            alpha2,
            alpha3,
        })
    }

    pub fn a1(&self) -> &Q {
        &self.coeffs[0]
    }

    /// Node positions in descending convention: `1, α₂, α₃, 0`.
    fn alphas(&self) -> [Q; 4] {
        [
            crate::int(1),
            self.alpha2.clone(),
            self.alpha3.clone(),
            crate::int(0),
        ]
    }

    /// Left side of the equal-mass condition,
    /// `Σⱼ (a₁+⋯+aⱼ)(αⱼ₊₁ − αⱼ)`; equals the mass of [`Self::functional`].
    pub fn mass_condition_lhs(&self) -> Q {
        let alphas = self.alphas();
        let mut cum = crate::int(0);
        let mut acc = crate::int(0);
        for j in 0..3 {
            cum = cum + &self.coeffs[j];
            acc = acc + &cum * (&alphas[j + 1] - &alphas[j]);
        }
        acc
    }

    /// Left side of the equal-first-moment condition,
    /// `Σⱼ (a₁+⋯+aⱼ)(αⱼ₊₁² − αⱼ²)`; equals twice the transform integral.
    pub fn moment_condition_lhs(&self) -> Q {
        let alphas = self.alphas();
        let mut cum = crate::int(0);
        let mut acc = crate::int(0);
        for j in 0..3 {
            cum = cum + &self.coeffs[j];
            let sq_next = &alphas[j + 1] * &alphas[j + 1];
            let sq = &alphas[j] * &alphas[j];
            acc = acc + &cum * (sq_next - sq);
        }
        acc
    }

    /// The formula as a [`Functional`] in the ascending position convention
    /// `λ = 1 − α`.
    pub fn functional(&self) -> Functional {
        let one = crate::int(1);
        Functional::from_fterms(&[
            (crate::int(0), self.coeffs[0].clone()),
            (&one - &self.alpha2, self.coeffs[1].clone()),
            (&one - &self.alpha3, self.coeffs[2].clone()),
            (one, self.coeffs[3].clone()),
        ])
        .expect("coefficient sum validated at construction")
    }
}

fn chain_for(case: FourPointCase) -> Vec<ChainLink> {
    use ChainTerm::*;
    let links: [(ChainTerm, ChainTerm); 2] = match case {
        FourPointCase::FormulaBelowMean => [(Formula, IntegralMean), (IntegralMean, Trapezoid)],
        FourPointCase::MeanBelowFormula => [(Midpoint, IntegralMean), (IntegralMean, Formula)],
        FourPointCase::FormulaBetweenMidpointAndMean => {
            [(Midpoint, Formula), (Formula, IntegralMean)]
        }
        FourPointCase::FormulaBetweenMeanAndTrapezoid => {
            [(IntegralMean, Formula), (Formula, Trapezoid)]
        }
    };
    links
        .into_iter()
        .map(|(lhs, rhs)| ChainLink { lhs, rhs })
        .collect()
}

/// Classifies a four-point formula by the sign conditions on `a₁` and
/// recomputes every claimed link with the exact ordering engine.
///
/// The equal-mass and equal-moment hypotheses are preconditions; inputs that
/// violate them produce an error carrying the exact mass and mean.
pub fn classify_four_point(f4: &FourPointFormula) -> Result<FourPointReport, CoreError> {
    let one = crate::int(1);
    let two = crate::int(2);
    let m1 = f4.mass_condition_lhs();
    let e1 = f4.moment_condition_lhs();
    if m1 != one || e1 != one {
        return Err(CoreError::NecessaryConditionsViolated {
            mass: m1,
            mean: e1 / two,
        });
    }
    let minus_one = crate::int(-1);
    let a1 = f4.a1();
    let a12 = a1 + &f4.coeffs[1];
    let case = if *a1 < minus_one {
        if a12.is_positive() {
            Some(FourPointCase::MeanBelowFormula)
        } else {
            Some(FourPointCase::FormulaBetweenMeanAndTrapezoid)
        }
    } else if *a1 > minus_one {
        if a1.is_positive() {
            Some(FourPointCase::FormulaBelowMean)
        } else {
            Some(FourPointCase::FormulaBetweenMidpointAndMean)
        }
    } else {
        None
    };
    let claimed = case.map(chain_for).unwrap_or_default();
    let formula = f4.functional();
    let verified = claimed
        .iter()
        .map(|link| {
            let lhs = link.lhs.resolve(&formula);
            let rhs = link.rhs.resolve(&formula);
            (*link, compare(&lhs, &rhs).verdict)
        })
        .collect();
    Ok(FourPointReport {
        case,
        claimed,
        verified,
    })
}

/// A member of the symmetric family
/// `aF(x) + bF(αx+(1−α)y) − bF((1−α)x+αy) − aF(y)` with `α ∈ (0, 1/2)` and
/// `b` pinned by the unit-mass constraint `b = a + (1+2aα)/(1−2α)`; the
/// induced density is symmetric, so the transform integral is 1/2
/// automatically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricFamilyPoint {
    a: Q,
    alpha: Q,
    b: Q,
}

impl SymmetricFamilyPoint {
    pub fn from_a_alpha(a: Q, alpha: Q) -> Result<SymmetricFamilyPoint, CoreError> {
        if !alpha.is_positive() || alpha >= crate::rat(1, 2) {
            return Err(CoreError::Precondition(format!(
                "alpha must lie in (0, 1/2), got {alpha}"
            )));
        }
        let one = crate::int(1);
        let two = crate::int(2);
        let b = &a + (&one + &two * &a * &alpha) / (&one - &two * &alpha);
        Ok(SymmetricFamilyPoint { a, alpha, b })
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn alpha(&self) -> &Q {
        &self.alpha
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    /// Antiderivative terms at positions `0, α, 1−α, 1` with coefficients
    /// `a, −b, b, −a`; mass is exactly 1 and the transform integral exactly 1/2.
    pub fn functional(&self) -> Functional {
        let one = crate::int(1);
        Functional::from_fterms(&[
            (crate::int(0), self.a.clone()),
            (self.alpha.clone(), -self.b.clone()),
            (&one - &self.alpha, self.b.clone()),
            (one, -self.a.clone()),
        ])
        .expect("a − b + b − a = 0")
    }
}

/// Literal evaluation of the published midpoint-bound condition
/// `(1−α)²·ab/(a+b) > 1/2 − (1−α)·b/(a+b)` (claimed equivalent to
/// formula ≤ midpoint when `a > 0`).
pub fn claimed_condition_vs_midpoint(a: &Q, b: &Q, alpha: &Q) -> Result<bool, CoreError> {
    if !a.is_positive() {
        return Err(CoreError::Precondition(format!(
            "midpoint-bound condition needs a > 0, got {a}"
        )));
    }
    let sum = a + b;
    if sum.is_zero() {
        return Err(CoreError::UndefinedExpression(
            "a + b = 0 in the midpoint-bound condition".into(),
        ));
    }
    let one = crate::int(1);
    let half = crate::rat(1, 2);
    let om = &one - alpha;
    let lhs = &om * &om * a * b / &sum;
    let rhs = half - om * b / sum;
    Ok(lhs > rhs)
}

/// Literal evaluation of the published trapezoid-bound condition
/// `−1/(4a) > (−a(1−α) − 1/2)(1/2 + 1/(2a))` (claimed equivalent to
/// formula ≤ trapezoid when `a < −1`).
pub fn claimed_condition_vs_trapezoid(a: &Q, alpha: &Q) -> Result<bool, CoreError> {
    if a.is_zero() {
        return Err(CoreError::UndefinedExpression(
            "a = 0 in the trapezoid-bound condition".into(),
        ));
    }
    if *a >= crate::int(-1) {
        return Err(CoreError::Precondition(format!(
            "trapezoid-bound condition needs a < −1, got {a}"
        )));
    }
    let one = crate::int(1);
    let half = crate::rat(1, 2);
    let lhs = -&one / (crate::int(4) * a);
    let rhs = (-a * (&one - alpha) - &half) * (&half + &one / (crate::int(2) * a));
    Ok(lhs > rhs)
}

/// The published crossing points `((1−α)b/(a+b), 1/2, (a+αb)/(a+b))` of the
/// family transform against the unit step at 1/2, returned for comparison
/// with the exact crossing profile. Agreement is reported, never assumed.
pub fn claimed_symmetric_crossings(p: &SymmetricFamilyPoint) -> Result<[Q; 3], CoreError> {
    let sum = &p.a + &p.b;
    if sum.is_zero() {
        return Err(CoreError::UndefinedExpression(
            "a + b = 0 in the published crossing points".into(),
        ));
    }
    let one = crate::int(1);
    Ok([
        (&one - &p.alpha) * &p.b / &sum,
        crate::rat(1, 2),
        (&p.a + &p.alpha * &p.b) / &sum,
    ])
}

/// Why a three-point endpoint formula cannot match midpoint or trapezoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreePointViolation {
    MassNotOne(Q),
    MeanNotHalf(Q),
}

/// Proves a three-point endpoint formula (nodes `{0, λ, 1}`, nonzero middle
/// coefficient, no point evaluations) incomparable with both midpoint and
/// trapezoid: unit mass and transform integral 1/2 cannot both hold, because
/// the 2×2 linear system they impose on the outer coefficients has the
/// uniform density as its unique solution, which forces the middle
/// coefficient to 0.
pub fn three_point_obstruction(f: &Functional) -> Result<ThreePointViolation, CoreError> {
    if !f.atoms().is_empty() {
        return Err(CoreError::Precondition(
            "three-point check applies to antiderivative terms only".into(),
        ));
    }
    let terms = f.fterms();
    if terms.len() != 3 || !terms[0].node.is_zero() || terms[2].node != crate::int(1) {
        return Err(CoreError::Precondition(
            "expected exactly three antiderivative nodes {0, λ, 1}".into(),
        ));
    }
    let mass = f.mass();
    if mass != crate::int(1) {
        return Ok(ThreePointViolation::MassNotOne(mass));
    }
    let mean = f.mean_integral();
    if mean != crate::rat(1, 2) {
        return Ok(ThreePointViolation::MeanNotHalf(mean));
    }
    unreachable!("unit mass and mean 1/2 force the middle coefficient to 0, which canonicalization drops")
}

/// One calibration cell: exact verdict against the relevant reference next
/// to the literal published conditions (and the `α ↔ 1−α` variant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibrationRow {
    pub a: Q,
    pub alpha: Q,
    pub b: Q,
    pub verdict: Verdict,
    pub cond_i: Option<bool>,
    pub cond_ii: Option<bool>,
    pub cond_ii_swapped: Option<bool>,
}

impl CalibrationRow {
    fn agreement(&self, cond: Option<bool>) -> Option<bool> {
        cond.map(|c| c == (self.verdict == Verdict::Holds))
    }

    pub fn agree_i(&self) -> Option<bool> {
        self.agreement(self.cond_i)
    }

    pub fn agree_ii(&self) -> Option<bool> {
        self.agreement(self.cond_ii)
    }

    pub fn agree_ii_swapped(&self) -> Option<bool> {
        self.agreement(self.cond_ii_swapped)
    }
}

/// Calibrates one family point: ground truth is `compare` against the
/// midpoint (`a > 0`) or the trapezoid (`a < −1`).
pub fn calibration_row(a: &Q, alpha: &Q) -> Result<CalibrationRow, CoreError> {
    let p = SymmetricFamilyPoint::from_a_alpha(a.clone(), alpha.clone())?;
    let f = p.functional();
    let one = crate::int(1);
    if a.is_positive() {
        let verdict = compare(&f, &Functional::midpoint()).verdict;
        let cond_i = Some(claimed_condition_vs_midpoint(a, p.b(), alpha)?);
        Ok(CalibrationRow {
            a: a.clone(),
            alpha: alpha.clone(),
            b: p.b().clone(),
            verdict,
            cond_i,
            cond_ii: None,
            cond_ii_swapped: None,
        })
    } else if *a < -&one {
        let verdict = compare(&f, &Functional::trapezoid()).verdict;
        let cond_ii = Some(claimed_condition_vs_trapezoid(a, alpha)?);
        let cond_ii_swapped = Some(claimed_condition_vs_trapezoid(a, &(&one - alpha))?);
        Ok(CalibrationRow {
            a: a.clone(),
            alpha: alpha.clone(),
            b: p.b().clone(),
            verdict,
            cond_i: None,
            cond_ii,
            cond_ii_swapped,
        })
    } else {
        Err(CoreError::Precondition(format!(
            "family calibration needs a > 0 or a < −1, got {a}"
        )))
    }
}

/// Deterministic calibration over a grid, in the given point order.
pub fn calibration_report(points: &[(Q, Q)]) -> Result<Vec<CalibrationRow>, CoreError> {
    points
        .iter()
        .map(|(a, alpha)| calibration_row(a, alpha))
        .collect()
}
