//! Regression corpus: every published comparison claim alongside the exact
//! verdict derived independently by the engine.
//!
//! The expected verdicts are frozen ground truths; the claims travel with
//! them so the suite can stay green while faithfully reporting which
//! published statements exact computation refutes.

use hhcert_core::closedform::claimed_condition_vs_trapezoid;
use hhcert_core::functional::Functional;
use hhcert_core::ordering::{compare, Verdict};
use hhcert_core::{int, rat};

/// What the published statement claims about `lhs ≤ rhs` over convex `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperClaim {
    Holds,
    Fails,
}

#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub id: &'static str,
    pub lhs: Functional,
    pub rhs: Functional,
    pub claim: Option<PaperClaim>,
    /// Ground truth, derived by exact computation and frozen.
    pub expected: Verdict,
    pub source: &'static str,
}

#[derive(Debug, Clone)]
pub struct CorpusOutcome {
    pub item: CorpusItem,
    pub computed: Verdict,
}

impl CorpusOutcome {
    /// Whether the exact verdict backs the published claim (`None` when the
    /// row has no claim of its own).
    pub fn agrees_with_claim(&self) -> Option<bool> {
        self.item.claim.map(|c| match c {
            PaperClaim::Holds => self.computed == Verdict::Holds,
            PaperClaim::Fails => self.computed != Verdict::Holds,
        })
    }

    pub fn matches_expected(&self) -> bool {
        self.computed == self.item.expected
    }
}

/// `(F(y)−F(x))/(y−x) ≈ f` five-point stencil weights: the divided-difference
/// formula `(1/3)F(x) − (8/3)F((3x+y)/4) + (8/3)F((x+3y)/4) − (1/3)F(y)`.
pub fn eq8_formula() -> Functional {
    Functional::from_fterms(&[
        (int(0), rat(1, 3)),
        (rat(1, 4), rat(-8, 3)),
        (rat(3, 4), rat(8, 3)),
        (int(1), rat(-1, 3)),
    ])
    .expect("coefficients sum to zero")
}

/// `(−3F(x) + 4F((x+y)/2) − F(y))/(y−x)`.
pub fn prop4_formula() -> Functional {
    Functional::from_fterms(&[(int(0), int(-3)), (rat(1, 2), int(4)), (int(1), int(-1))])
        .expect("coefficients sum to zero")
}

/// `(−3F((3x+y)/4) + (25/11)F((11x+9y)/20) + (8/11)F(y))/(y−x)`.
pub fn remark3_formula() -> Functional {
    Functional::from_fterms(&[
        (rat(1, 4), int(-3)),
        (rat(9, 20), rat(25, 11)),
        (int(1), rat(8, 11)),
    ])
    .expect("coefficients sum to zero")
}

/// `(−2F(x) + 3F((2x+y)/3) − 3F((x+2y)/3) + 2F(y))/(y−x)`.
pub fn example2_formula() -> Functional {
    Functional::from_fterms(&[
        (int(0), int(-2)),
        (rat(1, 3), int(3)),
        (rat(2, 3), int(-3)),
        (int(1), int(2)),
    ])
    .expect("coefficients sum to zero")
}

/// `(−(1/2)F(x) − (3/2)F((2x+y)/3) + (3/2)F((x+2y)/3) + (1/2)F(y))/(y−x)`.
pub fn example3_formula() -> Functional {
    Functional::from_fterms(&[
        (int(0), rat(-1, 2)),
        (rat(1, 3), rat(-3, 2)),
        (rat(2, 3), rat(3, 2)),
        (int(1), rat(1, 2)),
    ])
    .expect("coefficients sum to zero")
}

/// Printed coefficients `(−3/2, 2, −2, 3/2)` on quarter nodes; mass is 1/2,
/// so the claimed chain is ill-posed.
pub fn example4_printed() -> Functional {
    Functional::from_fterms(&[
        (int(0), rat(-3, 2)),
        (rat(1, 4), int(2)),
        (rat(3, 4), int(-2)),
        (int(1), rat(3, 2)),
    ])
    .expect("coefficients sum to zero")
}

/// A constructed replacement with unit mass and mean 1/2 that genuinely
/// satisfies the mean ≤ formula ≤ trapezoid chain. Not attributed to any
/// published statement.
pub fn example4_constructed() -> Functional {
    Functional::from_fterms(&[
        (int(0), rat(-3, 2)),
        (rat(1, 4), int(1)),
        (rat(3, 4), int(-1)),
        (int(1), rat(3, 2)),
    ])
    .expect("coefficients sum to zero")
}

/// Printed coefficients `(2, −3, 3, −2)` on quarter nodes; mass is −1/2.
pub fn example6_printed() -> Functional {
    Functional::from_fterms(&[
        (int(0), int(2)),
        (rat(1, 4), int(-3)),
        (rat(3, 4), int(3)),
        (int(1), int(-2)),
    ])
    .expect("coefficients sum to zero")
}

/// The full regression corpus, in fixed presentation order.
pub fn corpus() -> Vec<CorpusItem> {
    let midpoint = Functional::midpoint();
    let mean = Functional::integral_mean();
    let trapezoid = Functional::trapezoid();
    let point0 = Functional::point_eval(int(0)).expect("0 is a valid node");
    vec![
        CorpusItem {
            id: "hh-classic-left",
            lhs: midpoint.clone(),
            rhs: mean.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "f((x+y)/2) <= (F(y)-F(x))/(y-x)",
        },
        CorpusItem {
            id: "hh-classic-right",
            lhs: mean.clone(),
            rhs: trapezoid.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "(F(y)-F(x))/(y-x) <= (f(x)+f(y))/2",
        },
        CorpusItem {
            id: "remark3-left",
            lhs: midpoint.clone(),
            rhs: remark3_formula(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "midpoint <= interior-node three-point formula",
        },
        CorpusItem {
            id: "remark3-right",
            lhs: remark3_formula(),
            rhs: mean.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "interior-node three-point formula <= integral mean",
        },
        CorpusItem {
            id: "prop4-printed",
            lhs: point0.clone(),
            rhs: prop4_formula(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Fails,
            source: "f(x) <= (-3F(x)+4F((x+y)/2)-F(y))/(y-x) as printed",
        },
        CorpusItem {
            id: "prop4-reversed",
            lhs: prop4_formula(),
            rhs: point0.clone(),
            claim: None,
            expected: Verdict::Holds,
            source: "reversed orientation of the three-point bound",
        },
        CorpusItem {
            id: "prop2-threepoint",
            lhs: prop4_formula(),
            rhs: midpoint.clone(),
            claim: Some(PaperClaim::Fails),
            expected: Verdict::NotComparable,
            source: "no endpoint three-point formula compares to the midpoint",
        },
        CorpusItem {
            id: "ex1",
            lhs: eq8_formula(),
            rhs: mean.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "five-point difference formula <= integral mean",
        },
        CorpusItem {
            id: "ex2",
            lhs: mean.clone(),
            rhs: example2_formula(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "integral mean <= thirds formula",
        },
        CorpusItem {
            id: "ex3-left",
            lhs: example3_formula(),
            rhs: mean.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "damped thirds formula <= integral mean",
        },
        CorpusItem {
            id: "ex3-right",
            lhs: midpoint.clone(),
            rhs: example3_formula(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "midpoint <= damped thirds formula",
        },
        CorpusItem {
            id: "ex4-printed",
            lhs: mean.clone(),
            rhs: example4_printed(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::NotComparable,
            source: "integral mean <= printed quarter formula (mass 1/2)",
        },
        CorpusItem {
            id: "ex4-constructed-left",
            lhs: mean.clone(),
            rhs: example4_constructed(),
            claim: None,
            expected: Verdict::Holds,
            source: "integral mean <= constructed quarter formula",
        },
        CorpusItem {
            id: "ex4-constructed-right",
            lhs: example4_constructed(),
            rhs: trapezoid.clone(),
            claim: None,
            expected: Verdict::Holds,
            source: "constructed quarter formula <= trapezoid",
        },
        CorpusItem {
            id: "ex5-star",
            lhs: midpoint.clone(),
            rhs: eq8_formula(),
            claim: Some(PaperClaim::Fails),
            expected: Verdict::Fails,
            source: "midpoint <= five-point difference formula",
        },
        CorpusItem {
            id: "ex5-doublestar",
            lhs: eq8_formula(),
            rhs: midpoint.clone(),
            claim: Some(PaperClaim::Fails),
            expected: Verdict::Fails,
            source: "five-point difference formula <= midpoint",
        },
        CorpusItem {
            id: "ex6-printed",
            lhs: example6_printed(),
            rhs: midpoint.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::NotComparable,
            source: "printed quarter formula <= midpoint (mass -1/2)",
        },
        CorpusItem {
            id: "ex7",
            lhs: example2_formula(),
            rhs: trapezoid.clone(),
            claim: Some(PaperClaim::Holds),
            expected: Verdict::Holds,
            source: "thirds formula <= trapezoid",
        },
        CorpusItem {
            id: "t2-sample",
            lhs: example2_formula(),
            rhs: trapezoid.clone(),
            // the literal closed-form condition predicts failure here
            claim: Some(if t2_literal_predicts_thirds_formula() {
                PaperClaim::Holds
            } else {
                PaperClaim::Fails
            }),
            expected: Verdict::Holds,
            source: "closed-form trapezoid-bound condition at (a, alpha) = (-2, 1/3)",
        },
    ]
}

fn t2_literal_predicts_thirds_formula() -> bool {
    claimed_condition_vs_trapezoid(&int(-2), &rat(1, 3)).expect("a < -1")
}

/// Runs the whole corpus through the exact engine.
pub fn evaluate() -> Vec<CorpusOutcome> {
    corpus()
        .into_iter()
        .map(|item| {
            let computed = compare(&item.lhs, &item.rhs).verdict;
            CorpusOutcome { item, computed }
        })
        .collect()
}
