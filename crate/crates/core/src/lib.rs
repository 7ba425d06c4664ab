//! Exact certification engine for Hermite-Hadamard-type inequalities.
//!
//! A *functional* is a combination of point evaluations of a convex function
//! `f` and evaluations of its antiderivative `F` on an interval, e.g. the
//! three members of the classical chain
//!
//! ```text
//! f((x+y)/2)  ≤  (F(y) - F(x))/(y-x)  ≤  (f(x) + f(y))/2.
//! ```
//!
//! Given two such functionals `L` and `R`, this crate decides whether
//! `L(f) ≤ R(f)` holds for *every* continuous convex `f`, entirely in exact
//! rational arithmetic. Each functional is turned into a bounded-variation
//! transform (a piecewise-linear function with jumps on `[0,1]`), and the
//! comparison reduces to sign conditions on prefix integrals of the
//! difference (the Levin-Stečkin criterion), with the single-crossing case
//! handled by Ohlin's lemma. The answer is a [`ordering::Certificate`]: a
//! verdict plus exact evidence, including an explicit convex counterexample
//! witness whenever the inequality fails.
//!
//! Module map:
//!
//! * [`pwfun`] — exact piecewise-linear-with-jumps calculus on `[0,1]`
//! * [`functional`] — functionals and their bounded-variation transforms
//! * [`ordering`] — dominance decision, certificates, witnesses
//! * [`closedform`] — published closed-form criteria and their calibration
//! * [`oracle`] — independent exact/numeric cross-checks, random instances

pub mod closedform;
mod error;
pub mod functional;
pub mod oracle;
pub mod ordering;
pub mod pwfun;

pub use error::CoreError;

/// The scalar type of the verification core: arbitrary-precision rationals.
///
/// Every verdict-relevant quantity is a `Q`; floating point appears only in
/// the numeric oracle. `num_rational::BigRational` keeps values reduced with
/// a positive denominator, so equality is exact structural equality.
pub type Q = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Q`].
///
/// Panics on a zero denominator; intended for literals in code and tests.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Shorthand for the integer `n` as a [`Q`].
pub fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_reduces_and_normalizes_sign() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(rat(3, 1), int(3));
    }
}
