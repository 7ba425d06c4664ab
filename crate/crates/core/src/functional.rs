//! One side of a Hermite-Hadamard-type inequality, and its transform.
//!
//! A [`Functional`] acts on a convex `f` with antiderivative `F` over an
//! interval `[x,y]` as
//!
//! ```text
//! T(f) = Σᵢ wᵢ f(x + λᵢ(y−x))  +  (1/(y−x)) Σⱼ cⱼ F(x + λⱼ(y−x))
//! ```
//!
//! with nodes in the position convention `λ ∈ [0,1]` (the point `x+λ(y−x)`),
//! and antiderivative coefficients summing to zero. Such a functional equals
//! `∫ f dG` for a bounded-variation function `G` on `[0,1]`: point weights
//! become jumps, and the `F`-terms induce a signed measure whose density on
//! `[λⱼ, λⱼ₊₁]` is minus the ascending cumulative coefficient sum. `G` is the
//! *BV transform* computed by [`Functional::bv_transform`], and the whole
//! dominance theory operates on these transforms.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::pwfun::{Piece, PwFun};
use crate::{CoreError, Q};

/// A point evaluation `weight · f(node)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub node: Q,
    pub weight: Q,
}

/// An antiderivative term `coef · F(node)` (scaled by `1/(y−x)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTerm {
    pub node: Q,
    pub coef: Q,
}

/// The interval `[x,y]`, `x < y`, a comparison is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSpec {
    x: Q,
    y: Q,
}

impl IntervalSpec {
    pub fn new(x: Q, y: Q) -> Result<IntervalSpec, CoreError> {
        if x >= y {
            return Err(CoreError::EmptyInterval { x, y });
        }
        Ok(IntervalSpec { x, y })
    }

    /// The normalized interval `[0,1]`.
    pub fn unit() -> IntervalSpec {
        IntervalSpec {
            x: crate::int(0),
            y: crate::int(1),
        }
    }

    pub fn x(&self) -> &Q {
        &self.x
    }

    pub fn y(&self) -> &Q {
        &self.y
    }

    pub fn length(&self) -> Q {
        &self.y - &self.x
    }

    /// The physical point `x + λ(y−x)`.
    pub fn point(&self, lambda: &Q) -> Q {
        &self.x + lambda * self.length()
    }
}

/// Canonical reference functionals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    /// `f((x+y)/2)`
    Midpoint,
    /// `(f(x) + f(y))/2`
    Trapezoid,
    /// `(F(y) − F(x))/(y−x)`
    IntegralMean,
    /// `f(x + λ(y−x))`
    PointEval(Q),
}

/// A validated, canonical functional: nodes sorted ascending, duplicates
/// merged, zero weights/coefficients dropped, coefficient sum zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    atoms: Vec<Atom>,
    fterms: Vec<FTerm>,
}

fn canonical_nodes(mut entries: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Q, Q)> = Vec::with_capacity(entries.len());
    for (node, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == node => last.1 = &last.1 + v,
            _ => out.push((node, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl Functional {
    /// Validates and canonicalizes raw atoms and antiderivative terms.
    pub fn make(atoms: Vec<Atom>, fterms: Vec<FTerm>) -> Result<Functional, CoreError> {
        let one = crate::int(1);
        for node in atoms.iter().map(|a| &a.node).chain(fterms.iter().map(|t| &t.node)) {
            if node.is_negative() || *node > one {
                return Err(CoreError::NodeOutOfRange(node.clone()));
            }
        }
        let coef_sum: Q = fterms.iter().map(|t| t.coef.clone()).sum();
        if !coef_sum.is_zero() {
            return Err(CoreError::CoefficientSum(coef_sum));
        }
        let atoms = canonical_nodes(atoms.into_iter().map(|a| (a.node, a.weight)).collect())
            .into_iter()
            .map(|(node, weight)| Atom { node, weight })
            .collect();
        let fterms = canonical_nodes(fterms.into_iter().map(|t| (t.node, t.coef)).collect())
            .into_iter()
            .map(|(node, coef)| FTerm { node, coef })
            .collect();
        Ok(Functional { atoms, fterms })
    }

    /// Convenience constructor from `(node, coef)` antiderivative terms only.
    pub fn from_fterms(terms: &[(Q, Q)]) -> Result<Functional, CoreError> {
        Functional::make(
            Vec::new(),
            terms
                .iter()
                .map(|(node, coef)| FTerm {
                    node: node.clone(),
                    coef: coef.clone(),
                })
                .collect(),
        )
    }

    /// Convenience constructor from `(node, weight)` atoms only.
    pub fn from_atoms(atoms: &[(Q, Q)]) -> Result<Functional, CoreError> {
        Functional::make(
            atoms
                .iter()
                .map(|(node, weight)| Atom {
                    node: node.clone(),
                    weight: weight.clone(),
                })
                .collect(),
            Vec::new(),
        )
    }

    pub fn reference(kind: Reference) -> Result<Functional, CoreError> {
        match kind {
            Reference::Midpoint => Functional::from_atoms(&[(crate::rat(1, 2), crate::int(1))]),
            Reference::Trapezoid => Functional::from_atoms(&[
                (crate::int(0), crate::rat(1, 2)),
                (crate::int(1), crate::rat(1, 2)),
            ]),
            Reference::IntegralMean => Functional::from_fterms(&[
                (crate::int(0), crate::int(-1)),
                (crate::int(1), crate::int(1)),
            ]),
            Reference::PointEval(node) => Functional::from_atoms(&[(node, crate::int(1))]),
        }
    }

    pub fn midpoint() -> Functional {
        Functional::reference(Reference::Midpoint).expect("valid")
    }

    pub fn trapezoid() -> Functional {
        Functional::reference(Reference::Trapezoid).expect("valid")
    }

    pub fn integral_mean() -> Functional {
        Functional::reference(Reference::IntegralMean).expect("valid")
    }

    pub fn point_eval(node: Q) -> Result<Functional, CoreError> {
        Functional::reference(Reference::PointEval(node))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn fterms(&self) -> &[FTerm] {
        &self.fterms
    }

    /// The BV transform `G(t) = Σ_{λᵢ≤t} wᵢ + μ((−∞,t])`, where `μ` has
    /// density `−(c₁+⋯+cⱼ)` on `[λⱼ, λⱼ₊₁]` (ascending-node cumulative sums)
    /// and is zero outside the hull of the `F`-nodes.
    pub fn bv_transform(&self) -> PwFun {
        let mut grid: Vec<Q> = vec![crate::int(0), crate::int(1)];
        grid.extend(self.atoms.iter().map(|a| a.node.clone()));
        grid.extend(self.fterms.iter().map(|t| t.node.clone()));
        grid.sort();
        grid.dedup();

        let one = crate::int(1);
        let atom_at = |t: &Q| -> Q {
            self.atoms
                .iter()
                .filter(|a| a.node == *t)
                .map(|a| a.weight.clone())
                .sum()
        };
        let mut pieces = Vec::with_capacity(grid.len() - 1);
        let mut value = atom_at(&grid[0]); // G(0) = jump at 0
        let mut cum = crate::int(0); // Σ coefs with node ≤ current left breakpoint
        let mut next_fterm = 0usize;
        for window in grid.windows(2) {
            let (lo, hi) = (&window[0], &window[1]);
            while next_fterm < self.fterms.len() && self.fterms[next_fterm].node <= *lo {
                cum = cum + &self.fterms[next_fterm].coef;
                next_fterm += 1;
            }
            let slope = -cum.clone();
            pieces.push(Piece {
                start: value.clone(),
                slope: slope.clone(),
            });
            value = value + slope * (hi - lo);
            if *hi < one {
                value = value + atom_at(hi);
            }
        }
        let end_value = value + atom_at(&one);
        PwFun::canonical(grid, pieces, end_value)
    }

    /// Total mass `G(1)`: atom weight plus signed measure mass.
    pub fn mass(&self) -> Q {
        self.bv_transform().end_value().clone()
    }

    /// Exact `∫₀¹ G(t) dt` of the BV transform. Together with [`mass`],
    /// equality of these across two functionals is exactly equality of their
    /// action on affine functions.
    ///
    /// [`mass`]: Functional::mass
    pub fn mean_integral(&self) -> Q {
        self.bv_transform().integral()
    }

    /// Floating-point evaluation of `T(f)` on `[x,y]`; `f_anti` must be an
    /// antiderivative of `f` there.
    pub fn evaluate_numeric(
        &self,
        f: impl Fn(f64) -> f64,
        f_anti: impl Fn(f64) -> f64,
        iv: &IntervalSpec,
    ) -> f64 {
        let len = iv.length().to_f64().expect("finite interval length");
        let mut acc = 0.0;
        for a in &self.atoms {
            let point = iv.point(&a.node).to_f64().expect("finite node");
            acc += a.weight.to_f64().expect("finite weight") * f(point);
        }
        for t in &self.fterms {
            let point = iv.point(&t.node).to_f64().expect("finite node");
            acc += t.coef.to_f64().expect("finite coef") * f_anti(point) / len;
        }
        acc
    }

    /// Exact `T(f)` for the hinge `f(u) = (u−t)₊` on the normalized interval,
    /// evaluated directly from the closed-form antiderivative `(u−t)₊²/2`.
    ///
    /// This route never touches the BV transform, so it independently audits
    /// the transform-based evaluation in the oracle module.
    pub fn eval_hinge_exact(&self, t: &Q) -> Q {
        let plus = |v: Q| if v.is_negative() { crate::int(0) } else { v };
        let mut acc = crate::int(0);
        for a in &self.atoms {
            acc = acc + &a.weight * plus(&a.node - t);
        }
        let two = crate::int(2);
        for term in &self.fterms {
            let p = plus(&term.node - t);
            acc = acc + &term.coef * &p * &p / &two;
        }
        acc
    }

    /// Exact `T(f)` for `f(u) = sign·uᵖ`, `p ≥ 0`, using `F = uᵖ⁺¹/(p+1)`.
    pub fn eval_power_exact(&self, p: u32, positive: bool) -> Q {
        let pow = |base: &Q, e: u32| -> Q {
            let mut acc = crate::int(1);
            for _ in 0..e {
                acc = acc * base;
            }
            acc
        };
        let mut acc = crate::int(0);
        for a in &self.atoms {
            acc = acc + &a.weight * pow(&a.node, p);
        }
        let div = crate::int(i64::from(p) + 1);
        for term in &self.fterms {
            acc = acc + &term.coef * pow(&term.node, p + 1) / &div;
        }
        if positive {
            acc
        } else {
            -acc
        }
    }

    /// Exact `T(±1)` (constants), directly: `±(Σwᵢ + Σcⱼλⱼ)`.
    pub fn eval_constant_exact(&self, positive: bool) -> Q {
        self.eval_power_exact(0, positive)
    }

    /// Exact `T(±u)` (affine), directly: `±(Σwᵢλᵢ + Σcⱼλⱼ²/2)`.
    pub fn eval_affine_exact(&self, positive: bool) -> Q {
        self.eval_power_exact(1, positive)
    }
}
