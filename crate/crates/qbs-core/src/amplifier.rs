//! Chaos amplification of the answer-qubit weight.
//!
//! The logistic map `g_a(x) = a x (1 - x)` at `a = 3.71` blows an
//! exponentially small weight `p` past 1/2 within a number of iterations
//! linear in `-log2 p`, while leaving `p = 0` fixed forever. Detection is
//! the first strict crossing `x_k > 1/2` within the iteration budget.
//!
//! The channel form carries a scalar `x` inside the density
//! `(I + x sigma_3) / 2`; one channel application maps the scalar through
//! the logistic map, so `k` applications reproduce the scalar iteration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qsim::QubitDensity;

/// Map parameter the amplification guarantee is stated for.
pub const DEFAULT_LOGISTIC_A: f64 = 3.71;

/// Detection threshold; crossings are strict.
pub const DETECTION_THRESHOLD: f64 = 0.5;

/// Amplifier parameters: the map parameter `a` and the iteration budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierConfig {
    a: f64,
    k_max: usize,
    threshold: f64,
}

impl AmplifierConfig {
    /// Budget `k_max = 2n` for an `n`-bit search, `a = 3.71`.
    pub fn for_bits(n: usize) -> Self {
        AmplifierConfig {
            a: DEFAULT_LOGISTIC_A,
            k_max: 2 * n,
            threshold: DETECTION_THRESHOLD,
        }
    }

    /// Explicit parameters; `a` must lie in `[0, 4]`.
    pub fn new(a: f64, k_max: usize) -> Result<Self> {
        if !(0.0..=4.0).contains(&a) {
            return Err(Error::DomainViolation {
                name: "a",
                value: a,
            });
        }
        Ok(AmplifierConfig {
            a,
            k_max,
            threshold: DETECTION_THRESHOLD,
        })
    }

    pub fn with_a(mut self, a: f64) -> Result<Self> {
        if !(0.0..=4.0).contains(&a) {
            return Err(Error::DomainViolation {
                name: "a",
                value: a,
            });
        }
        self.a = a;
        Ok(self)
    }

    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// Logistic trajectory with the detection verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplifierTrace {
    xs: Vec<f64>,
    detected: bool,
    k: Option<usize>,
}

impl AmplifierTrace {
    /// Trajectory `x_0, ..., x_K`; ends at the crossing when detected,
    /// otherwise runs the full budget.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn detected(&self) -> bool {
        self.detected
    }

    /// First index with `x_k > 1/2`, when one exists within the budget.
    pub fn crossing(&self) -> Option<usize> {
        self.k
    }

    /// Number of map iterations (channel applications) performed.
    pub fn steps(&self) -> usize {
        self.xs.len() - 1
    }
}

/// One logistic step `a x (1 - x)`, domain-checked.
pub fn logistic_step(x: f64, a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainViolation {
            name: "x",
            value: x,
        });
    }
    if !(0.0..=4.0).contains(&a) {
        return Err(Error::DomainViolation {
            name: "a",
            value: a,
        });
    }
    Ok(step(x, a))
}

#[inline]
fn step(x: f64, a: f64) -> f64 {
    a * x * (1.0 - x)
}

/// One channel application `(I + g_a(x) sigma_3) / 2` on a diagonal density
/// carrying the scalar `x = tr(rho sigma_3)`.
pub fn channel_apply(rho: &QubitDensity, a: f64) -> Result<QubitDensity> {
    let off = rho.off_diagonal_magnitude();
    if off > crate::qsim::DIAGONAL_TOLERANCE {
        return Err(Error::NonDiagonalDensity { off_diag: off });
    }
    let x = rho.sigma3_expectation();
    let next = logistic_step(clamp_unit(x)?, a)?;
    Ok(QubitDensity::from_sigma3(next))
}

fn clamp_unit(x: f64) -> Result<f64> {
    if !(-1e-9..=1.0 + 1e-9).contains(&x) {
        return Err(Error::DomainViolation {
            name: "x",
            value: x,
        });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Runs the amplifier on the weight `p` read off the reduction.
///
/// `x_0 = p` is tested first (zero iterations count), then the map is
/// iterated up to `k_max` times. No detection within the budget is read as
/// `p = 0` by the caller.
pub fn detect(p: f64, config: &AmplifierConfig) -> AmplifierTrace {
    debug_assert!((-1e-9..=1.0 + 1e-9).contains(&p), "p = {p} outside [0, 1]");
    let p = p.clamp(0.0, 1.0);
    let mut xs = vec![p];
    if p > config.threshold {
        return AmplifierTrace {
            xs,
            detected: true,
            k: Some(0),
        };
    }
    let mut x = p;
    for j in 1..=config.k_max {
        x = step(x, config.a);
        xs.push(x);
        if x > config.threshold {
            return AmplifierTrace {
                xs,
                detected: true,
                k: Some(j),
            };
        }
    }
    AmplifierTrace {
        xs,
        detected: false,
        k: None,
    }
}

/// Minimal `k <= k_cap` with `g_a^k(x0) > 1/2`, if any.
pub fn min_crossing(x0: f64, a: f64, k_cap: usize) -> Option<usize> {
    debug_assert!((0.0..=1.0).contains(&x0));
    let mut x = x0;
    if x > DETECTION_THRESHOLD {
        return Some(0);
    }
    for k in 1..=k_cap {
        x = step(x, a);
        if x > DETECTION_THRESHOLD {
            return Some(k);
        }
    }
    None
}

/// One row of the crossing-bound probe for `x_0 = 2^{-n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremRow {
    pub n: usize,
    pub x0: f64,
    pub k_min: Option<usize>,
    /// Budget `2n` that detection is claimed to stay within.
    pub bound_2n: usize,
    /// `(n - 1) / (log2 3.71 - 1)` evaluated at the sweep's `a`.
    pub bound_eq7: f64,
    /// `floor(5/4 (n - 1)) + 1`.
    pub bound_54: usize,
    /// `k_min` exists and `k_min <= 2n`.
    pub thm1_holds: bool,
    /// `k_min <= ceil(bound_eq7)`: the bound read as an upper limit.
    pub eq7_as_upper_holds: bool,
    /// `k_min > bound_eq7`: the bound in its stated direction.
    pub eq7_as_stated_holds: bool,
    /// `2^{-n}` underflowed to zero in working precision.
    pub underflow: bool,
}

/// Crossing-bound probe over a range of `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub a: f64,
    pub rows: Vec<TheoremRow>,
}

/// Sweeps `n = n_lo ..= n_hi` with `x_0 = 2^{-n}`, recording the minimal
/// crossing and how it compares against each claimed bound. The stated
/// direction of the second bound is reported, never asserted.
pub fn theorem_report(n_lo: usize, n_hi: usize, a: f64) -> Result<TheoremReport> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(Error::InvalidRange { lo: n_lo, hi: n_hi });
    }
    if !(0.0..=4.0).contains(&a) {
        return Err(Error::DomainViolation {
            name: "a",
            value: a,
        });
    }
    let denom = libm::log2(a) - 1.0;
    let rows = (n_lo..=n_hi)
        .map(|n| {
            let x0 = libm::scalbn(1.0, -(n as i32));
            let underflow = x0 == 0.0;
            // Search well past 2n so budget violations are visible as data.
            let k_min = if underflow {
                None
            } else {
                min_crossing(x0, a, 4 * n + 16)
            };
            let bound_eq7 = (n - 1) as f64 / denom;
            let bound_54 = 5 * (n - 1) / 4 + 1;
            TheoremRow {
                n,
                x0,
                k_min,
                bound_2n: 2 * n,
                bound_eq7,
                bound_54,
                thm1_holds: k_min.is_some_and(|k| k <= 2 * n),
                eq7_as_upper_holds: k_min.is_some_and(|k| (k as f64) <= libm::ceil(bound_eq7)),
                eq7_as_stated_holds: k_min.is_some_and(|k| (k as f64) > bound_eq7),
                underflow,
            }
        })
        .collect();
    Ok(TheoremReport { a, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_is_a_fixed_point() {
        assert_eq!(logistic_step(0.0, DEFAULT_LOGISTIC_A).unwrap(), 0.0);
    }

    #[test]
    fn half_maps_to_peak() {
        assert_eq!(logistic_step(0.5, 3.71).unwrap(), 0.9275);
    }

    #[test]
    fn one_maps_to_zero_for_any_a() {
        for a in [0.0, 1.3, 3.71, 4.0] {
            assert_eq!(logistic_step(1.0, a).unwrap(), 0.0);
        }
    }

    #[test]
    fn domain_violations_rejected() {
        assert!(matches!(
            logistic_step(-0.1, 3.71),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            logistic_step(1.1, 3.71),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            logistic_step(0.5, 4.5),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn detect_never_fires_on_zero() {
        for k_max in [0usize, 1, 8, 10_000] {
            let config = AmplifierConfig::new(DEFAULT_LOGISTIC_A, k_max).unwrap();
            let trace = detect(0.0, &config);
            assert!(!trace.detected());
            assert_eq!(trace.crossing(), None);
            assert_eq!(trace.xs().len(), k_max + 1);
            assert!(trace.xs().iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn detect_sixteenth_crosses_at_two() {
        let config = AmplifierConfig::new(3.71, 8).unwrap();
        let trace = detect(1.0 / 16.0, &config);
        assert!(trace.detected());
        assert_eq!(trace.crossing(), Some(2));
        let expected = [0.0625, 3.71 * 0.0625 * (1.0 - 0.0625)];
        assert_eq!(trace.xs()[0], expected[0]);
        assert_eq!(trace.xs()[1], expected[1]);
        assert!((trace.xs()[1] - 0.21738).abs() < 1e-5);
        assert!((trace.xs()[2] - 0.63117).abs() < 1e-5);
    }

    #[test]
    fn already_above_threshold_detects_without_iterating() {
        let config = AmplifierConfig::for_bits(4);
        let trace = detect(0.6, &config);
        assert!(trace.detected());
        assert_eq!(trace.crossing(), Some(0));
        assert_eq!(trace.steps(), 0);
    }

    #[test]
    fn exact_threshold_does_not_detect() {
        let config = AmplifierConfig::new(3.71, 0).unwrap();
        let trace = detect(0.5, &config);
        assert!(!trace.detected());
    }

    #[test]
    fn min_crossing_examples() {
        assert_eq!(min_crossing(1.0 / 16.0, 3.71, 100), Some(2));
        assert_eq!(min_crossing(0.0, 3.71, 1000), None);
        assert_eq!(min_crossing(0.9, 3.71, 10), Some(0));
    }

    #[test]
    fn channel_matches_scalar_iteration_exactly() {
        // The density carries the scalar itself, so even a long chaotic
        // orbit agrees bit for bit with the scalar iteration.
        let a = DEFAULT_LOGISTIC_A;
        for p in [0.125, 1.0 / 1024.0, 0.3141592653589793] {
            let mut rho = QubitDensity::from_sigma3(p);
            let mut x = p;
            for _ in 0..200 {
                rho = channel_apply(&rho, a).unwrap();
                x = logistic_step(x, a).unwrap();
                assert_eq!(rho.sigma3_expectation(), x);
                assert!((rho.trace() - 1.0).abs() < 1e-12);
                rho.validate(1e-12).unwrap();
            }
        }
    }

    #[test]
    fn channel_fixed_point_at_zero() {
        let rho = QubitDensity::from_sigma3(0.0);
        let out = channel_apply(&rho, 3.71).unwrap();
        assert_eq!(out.sigma3_expectation(), 0.0);
        assert_eq!(out.trace(), 1.0);
    }

    #[test]
    fn channel_rejects_off_diagonal_input() {
        let rho = QubitDensity::from_parts(0.5, num_complex::Complex64::new(0.3, 0.0), 0.5);
        assert!(matches!(
            channel_apply(&rho, 3.71),
            Err(Error::NonDiagonalDensity { .. })
        ));
    }

    #[test]
    fn theorem_row_n4_crosses_at_two() {
        let report = theorem_report(4, 4, 3.71).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.k_min, Some(2));
        assert_eq!(row.bound_2n, 8);
        assert!(row.thm1_holds);
        assert!(row.eq7_as_upper_holds);
        // k_min = 2 is not above 3.365..., so the stated direction fails.
        assert!(!row.eq7_as_stated_holds);
    }

    #[test]
    fn theorem_row_n1_needs_one_step() {
        let report = theorem_report(1, 1, 3.71).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.x0, 0.5);
        assert_eq!(row.k_min, Some(1));
        assert!(row.thm1_holds);
    }

    #[test]
    fn crossing_stays_within_budget_for_probed_range() {
        let report = theorem_report(1, 500, 3.71).unwrap();
        for row in &report.rows {
            let k = row.k_min.expect("crossing must exist");
            assert!(k <= row.bound_2n, "n={} k={k}", row.n);
            assert!(row.thm1_holds);
        }
    }

    #[test]
    fn derived_multiplier_bound_holds() {
        // While below 1/2 each step multiplies by at least a/2, so the
        // crossing happens by floor((n-1)/(log2 a - 1)) + 1.
        let denom = libm::log2(3.71) - 1.0;
        for n in 2..=500usize {
            let x0 = libm::scalbn(1.0, -(n as i32));
            let k = min_crossing(x0, 3.71, 4 * n + 16).unwrap();
            let bound = ((n - 1) as f64 / denom).floor() as usize + 1;
            assert!(k <= bound, "n={n} k={k} bound={bound}");
            assert!(
                k as f64 <= ((n - 1) as f64 / denom).ceil(),
                "ceil form, n={n}"
            );
        }
    }

    #[test]
    fn underflow_is_flagged() {
        let report = theorem_report(1075, 1076, 3.71).unwrap();
        assert!(report.rows.iter().all(|r| r.underflow && r.k_min.is_none()));
    }

    #[test]
    fn report_flags_recompute_from_row_fields() {
        let report = theorem_report(1, 64, 3.71).unwrap();
        for row in &report.rows {
            assert_eq!(row.bound_2n, 2 * row.n);
            assert_eq!(row.bound_54, 5 * (row.n - 1) / 4 + 1);
            assert_eq!(row.thm1_holds, row.k_min.is_some_and(|k| k <= row.bound_2n));
            assert_eq!(
                row.eq7_as_upper_holds,
                row.k_min.is_some_and(|k| (k as f64) <= row.bound_eq7.ceil())
            );
            assert_eq!(
                row.eq7_as_stated_holds,
                row.k_min.is_some_and(|k| (k as f64) > row.bound_eq7)
            );
        }
    }

    #[test]
    fn invalid_range_rejected() {
        assert!(matches!(
            theorem_report(0, 5, 3.71),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            theorem_report(6, 5, 3.71),
            Err(Error::InvalidRange { .. })
        ));
    }

    #[test]
    fn out_of_theorem_parameter_is_report_only() {
        // At a = 2 the map never exceeds its fixed point 1/2, so no row
        // crosses; the sweep still completes and just reports that.
        let report = theorem_report(1, 8, 2.0).unwrap();
        assert_eq!(report.rows.len(), 8);
        for row in &report.rows {
            assert_eq!(row.k_min, None);
            assert!(!row.thm1_holds);
        }
        // n = 1 divides zero by zero; the column is NaN, not a panic.
        assert!(report.rows[0].bound_eq7.is_nan());
        assert!(report.rows[1].bound_eq7.is_infinite());
    }

    proptest! {
        // a in [0, 4] and x in [0, 1] keep the map inside [0, 1].
        #[test]
        fn logistic_preserves_unit_interval(x in 0.0f64..=1.0, a in 0.0f64..=4.0) {
            let y = logistic_step(x, a).unwrap();
            prop_assert!((0.0..=1.0).contains(&y));
        }

        // Entries before the reported crossing never exceed the threshold.
        #[test]
        fn crossing_is_minimal(p in 0.0f64..=1.0, k_max in 0usize..64) {
            let config = AmplifierConfig::new(DEFAULT_LOGISTIC_A, k_max).unwrap();
            let trace = detect(p, &config);
            match trace.crossing() {
                Some(k) => {
                    prop_assert!(trace.detected());
                    prop_assert!(trace.xs()[k] > 0.5);
                    prop_assert!(trace.xs()[..k].iter().all(|&x| x <= 0.5));
                    prop_assert_eq!(trace.xs().len(), k + 1);
                }
                None => {
                    prop_assert!(!trace.detected());
                    prop_assert!(trace.xs().iter().all(|&x| x <= 0.5));
                    prop_assert_eq!(trace.xs().len(), k_max + 1);
                }
            }
        }

        // Consecutive trace entries are exact logistic steps.
        #[test]
        fn trace_entries_are_consecutive_steps(p in 0.0f64..=1.0) {
            let config = AmplifierConfig::for_bits(8);
            let trace = detect(p, &config);
            for w in trace.xs().windows(2) {
                prop_assert_eq!(w[1], step(w[0], config.a()));
            }
        }
    }
}
