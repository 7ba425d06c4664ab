//! Exact piecewise-linear functions with jump discontinuities on `[0,1]`.
//!
//! A [`PwFun`] is right-continuous: the value at a breakpoint equals the
//! right limit, and the value at `t = 1` is stored explicitly so that a jump
//! at the right endpoint (a point mass at 1) is representable. The function
//! is implicitly 0 to the left of 0, so a nonzero start value of the first
//! piece is a jump at 0.
//!
//! All arithmetic is exact; the dominance checks built on top depend only on
//! integrals and one-sided limits, never on the value chosen at a jump.

use num_traits::{Signed, Zero};

use crate::{CoreError, Q};

/// One linear piece: `t ↦ start + slope·(t − left_breakpoint)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub start: Q,
    pub slope: Q,
}

/// Sign of a function on an open interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    fn of(v: &Q) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// A maximal open interval `(lo, hi)` on which the function has constant sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSegment {
    pub lo: Q,
    pub hi: Q,
    pub sign: Sign,
}

/// Piecewise-linear function with jumps on `[0,1]`, in canonical form:
/// breakpoints strictly increasing from 0 to 1, and no interior breakpoint
/// at which both the jump is zero and the slope is unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PwFun {
    breakpoints: Vec<Q>,
    pieces: Vec<Piece>,
    end_value: Q,
}

impl PwFun {
    /// Builds from `(breakpoint, slope, start_value)` entries, one per piece,
    /// continuous at `t = 1` (no jump at the right endpoint).
    ///
    /// Breakpoints must be strictly increasing, start at 0, and stay below 1;
    /// the final piece ends at 1.
    pub fn build(entries: &[(Q, Q, Q)]) -> Result<PwFun, CoreError> {
        let (breakpoints, pieces) = Self::validate_entries(entries)?;
        let last = pieces.last().expect("at least one piece");
        let last_bp = &breakpoints[breakpoints.len() - 2];
        let end_value = &last.start + &last.slope * (crate::int(1) - last_bp);
        Ok(Self::canonical(breakpoints, pieces, end_value))
    }

    /// Like [`PwFun::build`], with an explicit value at `t = 1` (allows a
    /// jump at the right endpoint).
    pub fn build_with_end(entries: &[(Q, Q, Q)], end_value: Q) -> Result<PwFun, CoreError> {
        let (breakpoints, pieces) = Self::validate_entries(entries)?;
        Ok(Self::canonical(breakpoints, pieces, end_value))
    }

    fn validate_entries(entries: &[(Q, Q, Q)]) -> Result<(Vec<Q>, Vec<Piece>), CoreError> {
        if entries.is_empty() {
            return Err(CoreError::MissingLeftEndpoint(crate::int(1)));
        }
        let one = crate::int(1);
        let mut breakpoints = Vec::with_capacity(entries.len() + 1);
        let mut pieces = Vec::with_capacity(entries.len());
        for (bp, slope, start) in entries {
            if bp.is_negative() || *bp >= one {
                return Err(CoreError::OutOfRange(bp.clone()));
            }
            if let Some(prev) = breakpoints.last() {
                if bp <= prev {
                    return Err(CoreError::BadBreakpoints(bp.clone(), prev.clone()));
                }
            } else if !bp.is_zero() {
                return Err(CoreError::MissingLeftEndpoint(bp.clone()));
            }
            breakpoints.push(bp.clone());
            pieces.push(Piece {
                start: start.clone(),
                slope: slope.clone(),
            });
        }
        breakpoints.push(one);
        Ok((breakpoints, pieces))
    }

    /// Canonical form: merge interior breakpoints where the function is
    /// continuous and the slope does not change.
    pub(crate) fn canonical(breakpoints: Vec<Q>, pieces: Vec<Piece>, end_value: Q) -> PwFun {
        debug_assert_eq!(breakpoints.len(), pieces.len() + 1);
        let mut out_bps: Vec<Q> = vec![breakpoints[0].clone()];
        let mut out_pieces: Vec<Piece> = Vec::with_capacity(pieces.len());
        for (i, piece) in pieces.into_iter().enumerate() {
            if let Some(prev) = out_pieces.last() {
                let prev_lo = &out_bps[out_bps.len() - 1];
                let reach = &prev.start + &prev.slope * (&breakpoints[i] - prev_lo);
                if reach == piece.start && prev.slope == piece.slope {
                    continue; // extend previous piece across this breakpoint
                }
            }
            if !out_pieces.is_empty() {
                out_bps.push(breakpoints[i].clone());
            }
            out_pieces.push(piece);
        }
        out_bps.push(breakpoints[breakpoints.len() - 1].clone());
        PwFun {
            breakpoints: out_bps,
            pieces: out_pieces,
            end_value,
        }
    }

    /// The zero function.
    pub fn zero() -> PwFun {
        PwFun {
            breakpoints: vec![crate::int(0), crate::int(1)],
            pieces: vec![Piece {
                start: crate::int(0),
                slope: crate::int(0),
            }],
            end_value: crate::int(0),
        }
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// The value at `t = 1` (total mass when this is a transform).
    pub fn end_value(&self) -> &Q {
        &self.end_value
    }

    /// Inverse of [`PwFun::build_with_end`]: the entries and end value that
    /// reconstruct this function.
    pub fn decompose(&self) -> (Vec<(Q, Q, Q)>, Q) {
        let entries = self
            .breakpoints
            .iter()
            .zip(&self.pieces)
            .map(|(bp, p)| (bp.clone(), p.slope.clone(), p.start.clone()))
            .collect();
        (entries, self.end_value.clone())
    }

    /// Index of the piece whose half-open interval `[b_i, b_{i+1})` contains `t < 1`.
    fn piece_index(&self, t: &Q) -> usize {
        debug_assert!(!t.is_negative() && *t < crate::int(1));
        // no. of breakpoints ≤ t, minus one
        self.breakpoints.partition_point(|b| b <= t) - 1
    }

    /// Right-continuous value at `t ∈ [0,1]`.
    ///
    /// Panics if `t` is outside `[0,1]`.
    pub fn value(&self, t: &Q) -> Q {
        let one = crate::int(1);
        assert!(
            !t.is_negative() && *t <= one,
            "evaluation point outside [0,1]"
        );
        if *t == one {
            return self.end_value.clone();
        }
        let i = self.piece_index(t);
        let p = &self.pieces[i];
        &p.start + &p.slope * (t - &self.breakpoints[i])
    }

    /// Left limit at `t ∈ (0,1]`.
    pub fn left_limit(&self, t: &Q) -> Q {
        assert!(t.is_positive() && *t <= crate::int(1), "left limit needs t in (0,1]");
        // the piece is the one containing points just below t
        let i = self.breakpoints.partition_point(|b| b < t) - 1;
        let p = &self.pieces[i];
        &p.start + &p.slope * (t - &self.breakpoints[i])
    }

    /// Pointwise `ca·self + cb·other`, exact, on the merged breakpoint grid.
    pub fn combine_linear(&self, other: &PwFun, ca: &Q, cb: &Q) -> PwFun {
        let mut grid: Vec<Q> = Vec::with_capacity(self.breakpoints.len() + other.breakpoints.len());
        let (mut i, mut j) = (0, 0);
        while i < self.breakpoints.len() || j < other.breakpoints.len() {
            let next = match (self.breakpoints.get(i), other.breakpoints.get(j)) {
                (Some(a), Some(b)) => {
                    if a <= b {
                        if a == b {
                            j += 1;
                        }
                        i += 1;
                        a.clone()
                    } else {
                        j += 1;
                        b.clone()
                    }
                }
                (Some(a), None) => {
                    i += 1;
                    a.clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (None, None) => unreachable!(),
            };
            grid.push(next);
        }
        let pieces = grid[..grid.len() - 1]
            .iter()
            .map(|lo| {
                let pa = &self.pieces[self.piece_index(lo)];
                let pb = &other.pieces[other.piece_index(lo)];
                Piece {
                    start: ca * self.value(lo) + cb * other.value(lo),
                    slope: ca * &pa.slope + cb * &pb.slope,
                }
            })
            .collect();
        let end_value = ca * &self.end_value + cb * &other.end_value;
        Self::canonical(grid, pieces, end_value)
    }

    pub fn add(&self, other: &PwFun) -> PwFun {
        self.combine_linear(other, &crate::int(1), &crate::int(1))
    }

    /// Exact pointwise difference `self − other`.
    pub fn subtract(&self, other: &PwFun) -> PwFun {
        self.combine_linear(other, &crate::int(1), &crate::int(-1))
    }

    pub fn neg(&self) -> PwFun {
        PwFun::zero().combine_linear(self, &crate::int(0), &crate::int(-1))
    }

    /// Exact `∫₀ᵗ g(u) du` for `t ∈ [0,1]`. Jump values do not contribute.
    pub fn prefix_integral(&self, t: &Q) -> Result<Q, CoreError> {
        if t.is_negative() || *t > crate::int(1) {
            return Err(CoreError::OutOfRange(t.clone()));
        }
        let mut acc = crate::int(0);
        for (i, p) in self.pieces.iter().enumerate() {
            let lo = &self.breakpoints[i];
            if t <= lo {
                break;
            }
            let hi = (&self.breakpoints[i + 1]).min(t);
            let len = hi - lo;
            acc = acc + &p.start * &len + &p.slope * &len * &len / crate::int(2);
        }
        Ok(acc)
    }

    /// Exact `∫₀¹ g(u) du`.
    pub fn integral(&self) -> Q {
        self.prefix_integral(&crate::int(1))
            .expect("1 is always in range")
    }

    /// Maximal open intervals of constant sign, with exact root endpoints.
    ///
    /// Signs use open-interval values only: a jump at a breakpoint may change
    /// the sign without producing a root. Identically-zero stretches are
    /// reported as explicit [`Sign::Zero`] segments.
    pub fn sign_profile(&self) -> Vec<SignSegment> {
        let mut segs: Vec<SignSegment> = Vec::new();
        let mut push = |lo: Q, hi: Q, sign: Sign| {
            if let Some(last) = segs.last_mut() {
                if last.sign == sign && last.hi == lo {
                    last.hi = hi;
                    return;
                }
            }
            segs.push(SignSegment { lo, hi, sign });
        };
        for (i, p) in self.pieces.iter().enumerate() {
            let lo = self.breakpoints[i].clone();
            let hi = self.breakpoints[i + 1].clone();
            if p.slope.is_zero() {
                push(lo, hi, Sign::of(&p.start));
                continue;
            }
            let end = &p.start + &p.slope * (&hi - &lo);
            let s_start = Sign::of(&p.start);
            let s_end = Sign::of(&end);
            match (s_start, s_end) {
                (Sign::Zero, s) | (s, Sign::Zero) => push(lo, hi, s),
                (a, b) if a == b => push(lo, hi, a),
                (a, b) => {
                    let root = &lo - &p.start / &p.slope;
                    debug_assert!(root > lo && root < hi);
                    push(lo, root.clone(), a);
                    push(root, hi, b);
                }
            }
        }
        segs
    }

    /// Global minimum of `H(t) = ∫₀ᵗ g` over `[0,1]`, as `(argmin, min)`.
    ///
    /// `H` is piecewise quadratic, so the minimum is attained at a breakpoint
    /// or at an interior root of `g`; ties resolve to the smallest `t`.
    pub fn min_prefix_integral(&self) -> (Q, Q) {
        let mut best_t = crate::int(0);
        let mut best = crate::int(0);
        let mut acc = crate::int(0); // H at current left breakpoint
        let two = crate::int(2);
        for (i, p) in self.pieces.iter().enumerate() {
            let lo = &self.breakpoints[i];
            let hi = &self.breakpoints[i + 1];
            // interior stationary point of the quadratic: root of the piece
            if !p.slope.is_zero() {
                let root = lo - &p.start / &p.slope;
                if root > *lo && root < *hi {
                    let len = &root - lo;
                    let cand = &acc + &p.start * &len + &p.slope * &len * &len / &two;
                    if cand < best {
                        best = cand;
                        best_t = root;
                    }
                }
            }
            let len = hi - lo;
            acc = acc + &p.start * &len + &p.slope * &len * &len / &two;
            if acc < best {
                best = acc.clone();
                best_t = hi.clone();
            }
        }
        (best_t, best)
    }

    /// Global maximum of `H(t) = ∫₀ᵗ g`, as `(argmax, max)`; smallest-`t` ties.
    pub fn max_prefix_integral(&self) -> (Q, Q) {
        let (t, m) = self.neg().min_prefix_integral();
        (t, -m)
    }

    /// True when the function never decreases (all slopes and jumps ≥ 0),
    /// i.e. it is a distribution function of a nonnegative measure.
    pub fn is_nondecreasing(&self) -> bool {
        if self.pieces.iter().any(|p| p.slope.is_negative()) {
            return false;
        }
        if self.pieces[0].start.is_negative() {
            return false; // downward jump at 0 from the implicit 0 at 0⁻
        }
        for i in 1..self.pieces.len() {
            let reach = self.left_limit(&self.breakpoints[i]);
            if self.pieces[i].start < reach {
                return false;
            }
        }
        self.end_value >= self.left_limit(&crate::int(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn uniform() -> PwFun {
        PwFun::build(&[(int(0), int(1), int(0))]).unwrap()
    }

    fn unit_step(at: Q) -> PwFun {
        if at.is_zero() {
            PwFun::build(&[(int(0), int(0), int(1))]).unwrap()
        } else if at == int(1) {
            PwFun::build_with_end(&[(int(0), int(0), int(0))], int(1)).unwrap()
        } else {
            PwFun::build(&[(int(0), int(0), int(0)), (at, int(0), int(1))]).unwrap()
        }
    }

    /// Transform of the divided-difference formula with density 3 on [0,1/2]
    /// and −1 on [1/2,1].
    fn steep_tent() -> PwFun {
        PwFun::build(&[
            (int(0), int(3), int(0)),
            (rat(1, 2), int(-1), rat(3, 2)),
        ])
        .unwrap()
    }

    /// Transform with densities −1/3, 7/3, −1/3 on [0,1/4], [1/4,3/4], [3/4,1].
    fn dipping_transform() -> PwFun {
        PwFun::build(&[
            (int(0), rat(-1, 3), int(0)),
            (rat(1, 4), rat(7, 3), rat(-1, 12)),
            (rat(3, 4), rat(-1, 3), rat(13, 12)),
        ])
        .unwrap()
    }

    #[test]
    fn build_uniform() {
        let g = uniform();
        assert_eq!(g.value(&rat(1, 3)), rat(1, 3));
        assert_eq!(*g.end_value(), int(1));
    }

    #[test]
    fn build_unit_step_at_zero() {
        let g = unit_step(int(0));
        assert_eq!(g.value(&int(0)), int(1));
        assert_eq!(g.value(&rat(1, 2)), int(1));
        assert_eq!(*g.end_value(), int(1));
    }

    #[test]
    fn build_steep_tent_values() {
        let g = steep_tent();
        assert_eq!(g.value(&rat(1, 2)), rat(3, 2));
        assert_eq!(*g.end_value(), int(1));
    }

    #[test]
    fn build_rejects_bad_breakpoints() {
        let err = PwFun::build(&[
            (int(0), int(0), int(0)),
            (rat(1, 2), int(0), int(0)),
            (rat(1, 3), int(0), int(0)),
        ])
        .unwrap_err();
        assert!(matches!(err, CoreError::BadBreakpoints(..)));

        let err = PwFun::build(&[(int(0), int(0), int(0)), (int(2), int(0), int(0))]).unwrap_err();
        assert!(matches!(err, CoreError::OutOfRange(..)));

        let err = PwFun::build(&[(rat(1, 4), int(0), int(0))]).unwrap_err();
        assert!(matches!(err, CoreError::MissingLeftEndpoint(..)));
    }

    #[test]
    fn canonical_merges_redundant_breakpoints() {
        // same slope, no jump at 1/2: collapses to the identity
        let g = PwFun::build(&[
            (int(0), int(1), int(0)),
            (rat(1, 2), int(1), rat(1, 2)),
        ])
        .unwrap();
        assert_eq!(g, uniform());
        // decompose/rebuild round-trip
        let (entries, end) = g.decompose();
        assert_eq!(PwFun::build_with_end(&entries, end).unwrap(), g);
    }

    #[test]
    fn subtract_self_is_zero() {
        let g = steep_tent();
        assert_eq!(g.subtract(&g), PwFun::zero());
    }

    #[test]
    fn subtract_uniform_minus_midstep() {
        let d = uniform().subtract(&unit_step(rat(1, 2)));
        // slope-1 pieces with a −1 jump at 1/2
        assert_eq!(d.value(&rat(1, 4)), rat(1, 4));
        assert_eq!(d.left_limit(&rat(1, 2)), rat(1, 2));
        assert_eq!(d.value(&rat(1, 2)), rat(-1, 2));
        assert_eq!(*d.end_value(), int(0));
    }

    #[test]
    fn subtract_steep_tent_minus_step_at_zero() {
        let d = steep_tent().subtract(&unit_step(int(0)));
        // −1 + 3t on (0,1/2)
        assert_eq!(d.value(&rat(1, 4)), rat(-1, 4));
        assert_eq!(d.value(&rat(1, 3)), int(0));
        assert_eq!(d.value(&rat(1, 8)), rat(-5, 8));
    }

    #[test]
    fn prefix_integral_examples() {
        assert_eq!(uniform().integral(), rat(1, 2));
        assert_eq!(steep_tent().integral(), int(1));
        // slopes 2, −1, 2 on thirds
        let g = PwFun::build(&[
            (int(0), int(2), int(0)),
            (rat(1, 3), int(-1), rat(2, 3)),
            (rat(2, 3), int(2), rat(1, 3)),
        ])
        .unwrap();
        assert_eq!(g.integral(), rat(1, 2));
    }

    #[test]
    fn prefix_integral_rejects_out_of_range() {
        assert!(uniform().prefix_integral(&int(2)).is_err());
        assert!(uniform().prefix_integral(&rat(-1, 2)).is_err());
    }

    #[test]
    fn prefix_integral_ignores_jumps() {
        let g = unit_step(rat(1, 2));
        assert_eq!(g.prefix_integral(&rat(1, 2)).unwrap(), int(0));
        assert_eq!(g.integral(), rat(1, 2));
    }

    #[test]
    fn sign_profile_zero_function() {
        let segs = PwFun::zero().sign_profile();
        assert_eq!(
            segs,
            vec![SignSegment {
                lo: int(0),
                hi: int(1),
                sign: Sign::Zero
            }]
        );
    }

    #[test]
    fn sign_profile_single_root() {
        let d = steep_tent().subtract(&unit_step(int(0)));
        let segs = d.sign_profile();
        assert_eq!(segs.len(), 2);
        assert_eq!((&segs[0].lo, &segs[0].hi, segs[0].sign), (&int(0), &rat(1, 3), Sign::Neg));
        assert_eq!((&segs[1].lo, &segs[1].hi, segs[1].sign), (&rat(1, 3), &int(1), Sign::Pos));
    }

    #[test]
    fn sign_profile_alternating_four() {
        let d = dipping_transform().subtract(&unit_step(rat(1, 2)));
        let segs = d.sign_profile();
        let signs: Vec<Sign> = segs.iter().map(|s| s.sign).collect();
        assert_eq!(signs, vec![Sign::Neg, Sign::Pos, Sign::Neg, Sign::Pos]);
        assert_eq!(segs[0].hi, rat(2, 7));
        assert_eq!(segs[1].hi, rat(1, 2));
        assert_eq!(segs[2].hi, rat(5, 7));
    }

    #[test]
    fn min_prefix_zero_function() {
        assert_eq!(PwFun::zero().min_prefix_integral(), (int(0), int(0)));
    }

    #[test]
    fn min_prefix_of_midstep_minus_dipping() {
        let d = unit_step(rat(1, 2)).subtract(&dipping_transform());
        assert_eq!(d.min_prefix_integral(), (rat(1, 2), rat(-1, 24)));
    }

    #[test]
    fn max_prefix_via_min_of_negation() {
        let d = unit_step(int(0)).subtract(&steep_tent());
        assert_eq!(d.max_prefix_integral(), (rat(1, 3), rat(1, 6)));
    }

    #[test]
    fn nondecreasing_detection() {
        assert!(uniform().is_nondecreasing());
        assert!(unit_step(rat(1, 2)).is_nondecreasing());
        assert!(unit_step(int(1)).is_nondecreasing());
        assert!(!dipping_transform().is_nondecreasing());
        assert!(!uniform().subtract(&unit_step(rat(1, 2))).is_nondecreasing());
    }
}
