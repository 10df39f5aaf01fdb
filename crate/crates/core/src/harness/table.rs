//! The lower/upper bound table over a capacity grid (the piecewise ratio
//! curves, CSV-ready).

use super::report_precision;
use crate::algorithms::{lower_bound_formula, select_algorithm, theoretical_bound, Bound};
use crate::exact::{rat, Rat};
use crate::model::{Mode, Removability};

#[derive(Clone, Debug)]
pub struct TableRow {
    pub r: Rat,
    pub lower: Bound,
    pub upper: Bound,
    pub algorithm: Option<crate::algorithms::AlgorithmId>,
}

impl TableRow {
    pub fn csv_line(&self, digits: u32) -> String {
        let alg = match self.algorithm {
            Some(a) => a.to_string(),
            None => "none".into(),
        };
        format!(
            "{},{},{},{}",
            crate::exact::to_decimal(&self.r, digits as usize),
            self.lower.to_decimal(digits),
            self.upper.to_decimal(digits),
            alg
        )
    }
}

/// Evaluates both bound curves on an inclusive rational grid.
pub fn ratio_table(
    mode: Mode,
    removability: Removability,
    r_min: &Rat,
    r_max: &Rat,
    steps: u32,
) -> Vec<TableRow> {
    assert!(steps >= 1 && r_min <= r_max, "grid must be non-empty and ordered");
    let mut rows = Vec::with_capacity(steps as usize);
    for i in 0..steps {
        let r = if steps == 1 {
            r_min.clone()
        } else {
            r_min + (r_max - r_min) * rat(i as i64, steps as i64 - 1)
        };
        let lower = lower_bound_formula(mode, removability, &r);
        let upper = theoretical_bound(mode, removability, &r);
        let algorithm = select_algorithm(mode, removability, &r).ok().map(|s| s.algorithm);
        rows.push(TableRow { r, lower, upper, algorithm });
    }
    rows
}

/// CSV with the header `R,lower,upper,algorithm`.
pub fn table_csv(rows: &[TableRow]) -> String {
    let digits = report_precision();
    let mut out = String::from("R,lower,upper,algorithm\n");
    for row in rows {
        out.push_str(&row.csv_line(digits));
        out.push('\n');
    }
    out
}
