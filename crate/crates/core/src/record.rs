use serde::{Deserialize, Serialize};

/// Trace of one independent run.
///
/// `curve` holds `(evaluations, best_so_far)` pairs at sweep boundaries plus
/// the final evaluation. Evaluation counts strictly increase and values never
/// increase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub seed: u64,
    pub budget: u64,
    #[serde(default)]
    pub target_accuracy: Option<f64>,
    pub curve: Vec<(u64, f64)>,
    pub final_best: f64,
    #[serde(default)]
    pub final_best_position: Vec<f64>,
    pub evals_to_accuracy: Option<u64>,
}

impl RunRecord {
    pub fn evaluations(&self) -> u64 {
        self.curve.last().map_or(0, |&(e, _)| e)
    }

    /// Best-so-far value after `evals` evaluations, if the curve has started.
    pub fn best_at(&self, evals: u64) -> Option<f64> {
        let idx = self.curve.partition_point(|&(e, _)| e <= evals);
        idx.checked_sub(1).map(|i| self.curve[i].1)
    }

    /// True when the curve satisfies its ordering invariants.
    pub fn curve_is_monotone(&self) -> bool {
        self.curve
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[1].1 <= w[0].1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("RunRecord is always serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunRecord {
        RunRecord {
            algorithm: "de".into(),
            seed: 4,
            budget: 30,
            target_accuracy: Some(0.5),
            curve: vec![(10, 3.0), (20, 1.0), (30, 0.25)],
            final_best: 0.25,
            final_best_position: vec![0.5],
            evals_to_accuracy: Some(27),
        }
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["algorithm"], "de");
        assert_eq!(v["curve"][1][0], 20);
        assert_eq!(v["curve"][1][1], 1.0);
        assert_eq!(v["final_best"], 0.25);
        assert_eq!(v["evals_to_accuracy"], 27);
        assert_eq!(RunRecord::from_json(&sample().to_json()).unwrap(), sample());
    }

    #[test]
    fn best_at_steps() {
        let r = sample();
        assert_eq!(r.best_at(9), None);
        assert_eq!(r.best_at(10), Some(3.0));
        assert_eq!(r.best_at(25), Some(1.0));
        assert_eq!(r.best_at(1000), Some(0.25));
        assert!(r.curve_is_monotone());
    }
}
