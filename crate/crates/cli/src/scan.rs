//! Parameter-space scan of the symmetric family over an `(a, α)` grid,
//! rendered as CSV.

use std::str::FromStr;

use num_traits::Signed;

use hhcert_core::closedform::{calibration_row, CalibrationRow};
use hhcert_core::Q;

use crate::spec::{verdict_str, SpecError};

#[derive(Debug, Clone)]
pub struct ScanRange {
    pub min: Q,
    pub max: Q,
    pub step: Q,
}

impl ScanRange {
    pub fn parse(min: &str, max: &str, step: &str, what: &str) -> Result<ScanRange, SpecError> {
        let q = |s: &str| {
            Q::from_str(s.trim())
                .map_err(|e| SpecError(format!("bad rational {s:?} in {what} range: {e}")))
        };
        let range = ScanRange {
            min: q(min)?,
            max: q(max)?,
            step: q(step)?,
        };
        if !range.step.is_positive() {
            return Err(SpecError(format!("{what} step must be positive")));
        }
        Ok(range)
    }

    pub fn points(&self) -> Vec<Q> {
        let mut out = Vec::new();
        let mut v = self.min.clone();
        while v <= self.max {
            out.push(v.clone());
            v = v + &self.step;
        }
        out
    }
}

pub const CSV_HEADER: &str =
    "a,alpha,b,verdict,cond_i_printed,cond_ii_printed,cond_ii_swapped,agree_i,agree_ii,agree_ii_swapped";

fn opt_bool(b: Option<bool>) -> String {
    b.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv_row(row: &CalibrationRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        row.a,
        row.alpha,
        row.b,
        verdict_str(row.verdict),
        opt_bool(row.cond_i),
        opt_bool(row.cond_ii),
        opt_bool(row.cond_ii_swapped),
        opt_bool(row.agree_i()),
        opt_bool(row.agree_ii()),
        opt_bool(row.agree_ii_swapped()),
    )
}

/// Runs the grid in row-major order (`a` outer, `α` inner) and renders CSV
/// with a trailing newline, LF endings.
pub fn scan_csv(a: &ScanRange, alpha: &ScanRange) -> Result<String, SpecError> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for a_val in a.points() {
        for alpha_val in alpha.points() {
            let row = calibration_row(&a_val, &alpha_val)
                .map_err(|e| SpecError(format!("invalid grid cell (a={a_val}, alpha={alpha_val}): {e}")))?;
            out.push_str(&csv_row(&row));
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_boundary_point() {
        let a = ScanRange::parse("1", "1", "1", "a").unwrap();
        let alpha = ScanRange::parse("1/4", "1/4", "1", "alpha").unwrap();
        let csv = scan_csv(&a, &alpha).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "1,1/4,4,holds,true,,,true,,");
    }

    #[test]
    fn single_cell_thirds_point() {
        let a = ScanRange::parse("-2", "-2", "1", "a").unwrap();
        let alpha = ScanRange::parse("1/3", "1/3", "1", "alpha").unwrap();
        let csv = scan_csv(&a, &alpha).unwrap();
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            "-2,1/3,-3,holds,,false,true,,false,true"
        );
    }

    #[test]
    fn empty_range_gives_header_only() {
        let a = ScanRange::parse("1", "0", "1", "a").unwrap();
        let alpha = ScanRange::parse("1/4", "1/4", "1", "alpha").unwrap();
        assert_eq!(scan_csv(&a, &alpha).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn rejects_nonpositive_step() {
        assert!(ScanRange::parse("0", "1", "0", "a").is_err());
        assert!(ScanRange::parse("0", "1", "-1/2", "a").is_err());
    }

    #[test]
    fn rejects_calibration_gap_cells() {
        let a = ScanRange::parse("-1/2", "-1/2", "1", "a").unwrap();
        let alpha = ScanRange::parse("1/4", "1/4", "1", "alpha").unwrap();
        assert!(scan_csv(&a, &alpha).is_err());
    }
}
