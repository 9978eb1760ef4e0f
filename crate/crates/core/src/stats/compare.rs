use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::stats::{format_pm, ratio_uncertainty, summarize, SampleStats, RATIO_WARNING};

/// Attached to every report: why wall-clock time is not one of the measures.
pub const TIMING_NOTE: &str = "execution time is not compared: it depends on the implementation, \
the hardware and the machine's load, so it is neither fair nor repeatable across systems";

/// Significance level of the Welch test that decides whether two means differ.
pub const DEFAULT_SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    FixedBudget,
    FixedAccuracy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Outcome of a comparison. `Marginal` means the means are statistically
/// indistinguishable and only the spread (or, with equal spreads, the raw
/// means) separates the two; [`ComparisonReport::favours`] names the side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "A_better")]
    ABetter,
    #[serde(rename = "B_better")]
    BBetter,
    #[serde(rename = "marginal")]
    Marginal,
    #[serde(rename = "indistinguishable")]
    Indistinguishable,
}

impl Verdict {
    fn better(side: Side) -> Self {
        match side {
            Side::A => Verdict::ABetter,
            Side::B => Verdict::BBetter,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchTest {
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
}

/// Two-sided Welch t-test for a difference of means.
pub fn welch_test(a: &SampleStats, b: &SampleStats) -> Result<WelchTest> {
    for s in [a, b] {
        if s.n < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: s.n });
        }
    }
    let va = a.std * a.std / a.n as f64;
    let vb = b.std * b.std / b.n as f64;
    let se2 = va + vb;
    let diff = a.mean - b.mean;
    if se2 == 0.0 {
        let p = if diff == 0.0 { 1.0 } else { 0.0 };
        let t = if diff == 0.0 { 0.0 } else { diff.signum() * f64::INFINITY };
        return Ok(WelchTest { t, df: f64::INFINITY, p_value: p });
    }
    let t = diff / se2.sqrt();
    let df = se2 * se2 / (va * va / (a.n - 1) as f64 + vb * vb / (b.n - 1) as f64);
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::Domain(e.to_string()))?;
    let p_value = (2.0 * dist.sf(t.abs())).clamp(0.0, 1.0);
    Ok(WelchTest { t, df, p_value })
}

/// The subset of [`SampleStats`] that goes into a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsView {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl From<&SampleStats> for StatsView {
    fn from(s: &SampleStats) -> Self {
        Self {
            mean: s.mean,
            std: s.std,
            n: s.n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub kind: MeasureKind,
    pub a: StatsView,
    pub b: StatsView,
    pub verdict: Verdict,
    /// Side the verdict leans towards, if any.
    pub favours: Option<Side>,
    pub p_value: f64,
    pub significance: f64,
    pub note: String,
    /// Failed runs (target accuracy never reached) for A and B.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failures: Option<(usize, usize)>,
    /// `μ_A/μ_B ± σ_{A/B}`, shown for illustration only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<(f64, f64)>,
    pub warning: String,
    pub timing_note: String,
}

impl ComparisonReport {
    pub fn favours(&self) -> Option<Side> {
        self.favours
    }

    /// Plain-text rendering in `μ ± σ` form.
    pub fn render(&self, label_a: &str, label_b: &str) -> String {
        let kind = match self.kind {
            MeasureKind::FixedBudget => "fixed budget (best value, lower is better)",
            MeasureKind::FixedAccuracy => "fixed accuracy (evaluations to target, lower is better)",
        };
        let verdict = match (self.verdict, self.favours) {
            (Verdict::ABetter, _) => format!("{label_a} better"),
            (Verdict::BBetter, _) => format!("{label_b} better"),
            (Verdict::Marginal, Some(Side::A)) => format!("{label_a} better, marginal"),
            (Verdict::Marginal, Some(Side::B)) => format!("{label_b} better, marginal"),
            (Verdict::Marginal, None) | (Verdict::Indistinguishable, _) => "indistinguishable".to_string(),
        };
        let mut out = String::new();
        out.push_str(&format!("measure: {kind}\n"));
        out.push_str(&format!("{label_a}: {} (n = {})\n", format_pm(self.a.mean, self.a.std), self.a.n));
        out.push_str(&format!("{label_b}: {} (n = {})\n", format_pm(self.b.mean, self.b.std), self.b.n));
        if let Some((fa, fb)) = self.failures {
            out.push_str(&format!("failed runs: {label_a} {fa}, {label_b} {fb}\n"));
        }
        out.push_str(&format!("welch p-value: {:.4} (significance {})\n", self.p_value, self.significance));
        out.push_str(&format!("verdict: {verdict}\n"));
        out.push_str(&format!("note: {}\n", self.note));
        if let Some((r, s)) = self.ratio {
            out.push_str(&format!("ratio {label_a}/{label_b}: {r:.2} ± {s:.2}\n"));
        }
        out.push_str(&format!("warning: {}\n", self.warning));
        out.push_str(&format!("timing: {}\n", self.timing_note));
        out
    }
}

/// Decision rule shared by both measures (lower is better).
pub fn compare_with(kind: MeasureKind, a: &SampleStats, b: &SampleStats, significance: f64) -> Result<ComparisonReport> {
    let welch = welch_test(a, b)?;
    let (verdict, favours, note) = if welch.p_value < significance {
        let side = if a.mean < b.mean { Side::A } else { Side::B };
        (Verdict::better(side), Some(side), "means differ significantly".to_string())
    } else if a.std != b.std {
        let side = if a.std < b.std { Side::A } else { Side::B };
        (
            Verdict::Marginal,
            Some(side),
            "means are statistically indistinguishable; the narrower spread wins".to_string(),
        )
    } else if a.mean != b.mean {
        let side = if a.mean < b.mean { Side::A } else { Side::B };
        (
            Verdict::Marginal,
            Some(side),
            "means are statistically indistinguishable with equal spreads; lower mean noted".to_string(),
        )
    } else {
        (Verdict::Indistinguishable, None, "identical means and spreads".to_string())
    };
    let ratio = ratio_uncertainty(a, b).ok().map(|r| (r.ratio, r.sigma));
    Ok(ComparisonReport {
        kind,
        a: a.into(),
        b: b.into(),
        verdict,
        favours,
        p_value: welch.p_value,
        significance,
        note,
        failures: None,
        ratio,
        warning: RATIO_WARNING.to_string(),
        timing_note: TIMING_NOTE.to_string(),
    })
}

/// Compares best values reached by two algorithms at the same budget.
pub fn compare_fixed_budget(a: &SampleStats, b: &SampleStats) -> Result<ComparisonReport> {
    if let (Some(x), Some(y)) = (a.budget, b.budget) {
        if x != y {
            return Err(Error::MismatchedBudgets { a: x, b: y });
        }
    }
    compare_with(MeasureKind::FixedBudget, a, b, DEFAULT_SIGNIFICANCE)
}

/// Evaluation counts of the runs that reached the target, and how many did not.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AccuracyOutcome {
    pub successes: Vec<f64>,
    pub failures: usize,
}

impl AccuracyOutcome {
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a crate::RunRecord>) -> Self {
        let mut out = Self::default();
        for r in records {
            match r.evals_to_accuracy {
                Some(n) => out.successes.push(n as f64),
                None => out.failures += 1,
            }
        }
        out
    }
}

/// Compares evaluations needed to reach the target accuracy.
///
/// If only one side ever reached the target it wins outright; the failure
/// counts are always reported.
pub fn compare_fixed_accuracy(a: &AccuracyOutcome, b: &AccuracyOutcome) -> Result<ComparisonReport> {
    let failures = Some((a.failures, b.failures));
    let failure_note = |winner: &str| {
        format!(
            "only {winner} reached the target accuracy ({} of {} runs for A, {} of {} for B)",
            a.successes.len(),
            a.successes.len() + a.failures,
            b.successes.len(),
            b.successes.len() + b.failures
        )
    };
    let one_sided = |side: Side, s: &SampleStats| ComparisonReport {
        kind: MeasureKind::FixedAccuracy,
        a: if side == Side::A { s.into() } else { StatsView { mean: f64::NAN, std: f64::NAN, n: 0 } },
        b: if side == Side::B { s.into() } else { StatsView { mean: f64::NAN, std: f64::NAN, n: 0 } },
        verdict: Verdict::better(side),
        favours: Some(side),
        p_value: 0.0,
        significance: DEFAULT_SIGNIFICANCE,
        note: failure_note(if side == Side::A { "A" } else { "B" }),
        failures,
        ratio: None,
        warning: RATIO_WARNING.to_string(),
        timing_note: TIMING_NOTE.to_string(),
    };
    match (a.successes.is_empty(), b.successes.is_empty()) {
        (true, true) => Err(Error::NoSuccesses),
        (false, true) => Ok(one_sided(Side::A, &summarize(&a.successes)?)),
        (true, false) => Ok(one_sided(Side::B, &summarize(&b.successes)?)),
        (false, false) => {
            let sa = summarize(&a.successes)?;
            let sb = summarize(&b.successes)?;
            let mut report = compare_with(MeasureKind::FixedAccuracy, &sa, &sb, DEFAULT_SIGNIFICANCE)?;
            report.failures = failures;
            if a.failures + b.failures > 0 {
                report.note.push_str(&format!(
                    "; failed runs excluded (A: {}, B: {})",
                    a.failures, b.failures
                ));
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use crate::stats::synthetic_sample;
    use proptest::prelude::*;

    fn sample(mean: f64, std: f64, seed: u64) -> SampleStats {
        summarize(&synthetic_sample(mean, std, 100, &mut RngStream::new(seed))).unwrap()
    }

    #[test]
    fn same_mean_narrower_spread_is_marginal() {
        let r = compare_fixed_budget(&sample(0.001, 0.01, 1), &sample(0.001, 0.02, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::Marginal);
        assert_eq!(r.favours(), Some(Side::A));
    }

    #[test]
    fn lower_mean_same_spread_favours_a() {
        // n = 100: t ≈ 0.71, p ≈ 0.48, so the means are not significantly
        // different and the lower mean is only a marginal preference.
        let r = compare_fixed_budget(&sample(0.001, 0.01, 3), &sample(0.002, 0.01, 4)).unwrap();
        assert_eq!(r.favours(), Some(Side::A));
        assert_eq!(r.verdict, Verdict::Marginal);
        assert!((r.p_value - 0.48).abs() < 0.01, "{}", r.p_value);
    }

    #[test]
    fn identical_is_indistinguishable() {
        let s = sample(0.5, 0.1, 5);
        let r = compare_fixed_budget(&s, &s).unwrap();
        assert_eq!(r.verdict, Verdict::Indistinguishable);
        assert_eq!(r.favours(), None);
    }

    #[test]
    fn mismatched_budgets_rejected() {
        let a = sample(0.5, 0.1, 5).with_budget(100);
        let b = sample(0.5, 0.1, 6).with_budget(200);
        assert_eq!(compare_fixed_budget(&a, &b), Err(Error::MismatchedBudgets { a: 100, b: 200 }));
    }

    #[test]
    fn evaluation_counts() {
        let a = AccuracyOutcome { successes: synthetic_sample(1000.0, 300.0, 100, &mut RngStream::new(7)), failures: 0 };
        let b = AccuracyOutcome { successes: synthetic_sample(1400.0, 300.0, 100, &mut RngStream::new(8)), failures: 0 };
        let r = compare_fixed_accuracy(&a, &b).unwrap();
        assert_eq!(r.verdict, Verdict::ABetter);
        assert!(r.p_value < 1e-10);

        let r = compare_fixed_accuracy(&a, &a).unwrap();
        assert_eq!(r.verdict, Verdict::Indistinguishable);
    }

    #[test]
    fn one_sided_success() {
        let a = AccuracyOutcome { successes: vec![900.0, 1100.0, 1000.0], failures: 0 };
        let b = AccuracyOutcome { successes: vec![], failures: 3 };
        let r = compare_fixed_accuracy(&a, &b).unwrap();
        assert_eq!(r.verdict, Verdict::ABetter);
        assert_eq!(r.failures, Some((0, 3)));
        assert!(r.note.contains("only A"));
        let r = compare_fixed_accuracy(&b, &a).unwrap();
        assert_eq!(r.verdict, Verdict::BBetter);
        assert_eq!(compare_fixed_accuracy(&b, &b), Err(Error::NoSuccesses));
    }

    #[test]
    fn report_json_fields() {
        let r = compare_fixed_budget(&sample(0.001, 0.01, 1), &sample(0.001, 0.02, 2)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["kind", "a", "b", "verdict", "p_value", "warning"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["kind"], "fixed_budget");
        assert_eq!(v["verdict"], "marginal");
        assert_eq!(v["favours"], "A");
        assert!(r.render("A", "B").contains("1.00 ± 22.36"));
        assert!(r.render("A", "B").contains("0.001 ± 0.01"));
    }

    fn swapped(v: Verdict) -> Verdict {
        match v {
            Verdict::ABetter => Verdict::BBetter,
            Verdict::BBetter => Verdict::ABetter,
            other => other,
        }
    }

    proptest! {
        #[test]
        fn verdicts_are_antisymmetric(
            ma in -10.0f64..10.0, sa in 0.0f64..5.0, mb in -10.0f64..10.0, sb in 0.0f64..5.0,
            na in 2usize..200, nb in 2usize..200, equal_std in any::<bool>(),
        ) {
            let sb = if equal_std { sa } else { sb };
            let a = SampleStats::from_moments(ma, sa, na);
            let b = SampleStats::from_moments(mb, sb, nb);
            let ab = compare_fixed_budget(&a, &b).unwrap();
            let ba = compare_fixed_budget(&b, &a).unwrap();
            prop_assert_eq!(ba.verdict, swapped(ab.verdict));
            prop_assert_eq!(ba.favours, ab.favours.map(Side::other));
            prop_assert!((ab.p_value - ba.p_value).abs() < 1e-12);
        }
    }
}
