use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selected {
    Candidate,
    Incumbent,
}

/// Greedy pairwise selection for minimization; ties go to the candidate.
pub fn select_greedy(candidate_value: f64, incumbent_value: f64) -> Result<Selected> {
    if candidate_value.is_nan() || incumbent_value.is_nan() {
        return Err(Error::NotANumber);
    }
    Ok(if candidate_value <= incumbent_value {
        Selected::Candidate
    } else {
        Selected::Incumbent
    })
}

/// Indices of the `k` smallest values, best first, lower index on ties.
pub fn select_elitist(values: &[f64], k: usize) -> Result<Vec<usize>> {
    if k > values.len() {
        return Err(Error::config("k", k, "[0, population size]"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::NotANumber);
    }
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    idx.truncate(k);
    Ok(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn greedy_examples() {
        assert_eq!(select_greedy(3.0, 5.0).unwrap(), Selected::Candidate);
        assert_eq!(select_greedy(5.0, 3.0).unwrap(), Selected::Incumbent);
        assert_eq!(select_greedy(4.0, 4.0).unwrap(), Selected::Candidate);
        assert_eq!(select_greedy(f64::NAN, 4.0), Err(Error::NotANumber));
        assert_eq!(select_greedy(1.0, f64::NAN), Err(Error::NotANumber));
    }

    #[test]
    fn elitist_examples() {
        assert_eq!(select_elitist(&[3.0, 1.0, 2.0], 1).unwrap(), vec![1]);
        let mut all = select_elitist(&[3.0, 1.0, 2.0], 3).unwrap();
        assert_eq!(all, vec![1, 2, 0]);
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2]);
        assert_eq!(select_elitist(&[2.0, 2.0, 5.0], 2).unwrap(), vec![0, 1]);
        assert!(select_elitist(&[1.0], 2).is_err());
    }

    proptest! {
        #[test]
        fn greedy_never_worsens_incumbent(c in -1e6f64..1e6, i in -1e6f64..1e6) {
            let kept = match select_greedy(c, i).unwrap() {
                Selected::Candidate => c,
                Selected::Incumbent => i,
            };
            prop_assert!(kept <= i);
        }
    }
}
