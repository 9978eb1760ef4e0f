//! Performance measures for stochastic optimizers.
//!
//! Two comparisons are supported: best value reached at a fixed evaluation
//! budget, and evaluations needed to reach a fixed accuracy. Ratios of one
//! algorithm's results to another's are available only as a diagnostic; the
//! propagated uncertainty of a ratio of noisy means is usually far larger than
//! either input's, so ratios never produce a verdict.
//!
//! Execution-time comparisons are intentionally absent: timings depend on the
//! implementation, the machine and its background load, and are not
//! repeatable elsewhere.

mod compare;
mod diversity;
mod ratio;
mod summary;

pub use compare::{
    compare_fixed_accuracy, compare_fixed_budget, compare_with, welch_test, AccuracyOutcome, ComparisonReport,
    MeasureKind, Side, StatsView, Verdict, WelchTest, DEFAULT_SIGNIFICANCE, TIMING_NOTE,
};
pub use diversity::{diversity, two_clusters, TwoClusters};
pub use ratio::{ratio_uncertainty, ratio_uncertainty_raw, RatioUncertainty, RATIO_WARNING};
pub use summary::{format_pm, summarize, synthetic_sample, SampleStats};
