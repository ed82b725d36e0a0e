use std::fmt::Write;

use queig_core::experiments::{BenchReport, ReproRow};
use queig_core::TrialRecord;

pub const TRIAL_HEADER: &str = "trial,initial_state,overlap_p,fidelity_F,measured_eigenvalue,queries";

/// Six decimals, switching to scientific notation for small nonzero values.
pub fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:.6e}")
    } else {
        format!("{x:.6}")
    }
}

pub fn trials_csv(trials: &[TrialRecord]) -> String {
    let mut out = String::from(TRIAL_HEADER);
    out.push('\n');
    for (i, t) in trials.iter().enumerate() {
        let _ = writeln!(
            out,
            "{i},{},{},{},{},{}",
            t.initial_state,
            num(t.overlap),
            num(t.fidelity),
            num(t.measured_eigenvalue),
            t.queries
        );
    }
    out
}

pub fn repro_csv(rows: &[ReproRow]) -> String {
    let mut out = String::from(TRIAL_HEADER);
    out.push('\n');
    for (i, r) in rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "{i},{},{},{},{},{}",
            r.label,
            num(r.overlap),
            num(r.fidelity),
            num(r.measured_eigenvalue),
            r.queries
        );
    }
    out
}

pub fn bench_csv(report: &BenchReport) -> String {
    let mut out = String::from("n,method,mean_oracle_calls\n");
    for row in &report.rows {
        let _ = writeln!(out, "{},{},{}", row.n, row.method.name(), num(row.mean_oracle_calls));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::num;

    #[test]
    fn number_formatting() {
        assert_eq!(num(0.0), "0.000000");
        assert_eq!(num(-0.8837), "-0.883700");
        assert_eq!(num(0.5), "0.500000");
        assert_eq!(num(1e-4), "0.000100");
        assert_eq!(num(3.2e-5), "3.200000e-5");
        assert_eq!(num(-7e-9), "-7.000000e-9");
    }
}
