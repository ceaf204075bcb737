//! Disagreement mathematics: empirical judgment distributions, Shannon
//! entropy over the binary outcome space, and the minimax ruleset score.
//!
//! Entropy uses base-2 logarithms throughout, so a binary panel tops out at
//! exactly 1.0 bit at the 50/50 split.

use crate::error::{CoreError, Result};
use crate::types::{JudgmentOutcome, Verdict, OUTCOME_COUNT};
use serde::{Deserialize, Serialize};

/// Tolerance for probability vectors summing to 1.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

/// A disagreement entropy value, in bits.
///
/// For the binary outcome space the value lies in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EntropyScore(f64);

impl EntropyScore {
    /// Wrap a value, rejecting negatives and non-finite numbers.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(CoreError::validation(format!(
                "entropy must be a nonnegative finite number, got {value}"
            )));
        }
        Ok(EntropyScore(value))
    }

    /// The entropy in bits.
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for EntropyScore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.4}", self.0)
    }
}

/// Shannon entropy of a probability vector, in bits, with 0·log2(0) = 0.
///
/// The vector must be nonnegative and sum to 1 within
/// [`PROBABILITY_SUM_TOLERANCE`].
pub fn shannon_entropy(probabilities: &[f64]) -> Result<EntropyScore> {
    if probabilities.is_empty() {
        return Err(CoreError::validation("probability vector is empty"));
    }
    let mut sum = 0.0;
    for &p in probabilities {
        if !p.is_finite() || p < 0.0 {
            return Err(CoreError::validation(format!(
                "probability entries must be nonnegative, got {p}"
            )));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
        return Err(CoreError::validation(format!(
            "probabilities sum to {sum}, expected 1 within {PROBABILITY_SUM_TOLERANCE}"
        )));
    }
    let mut h = 0.0;
    for &p in probabilities {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    // -0.0 arises for degenerate vectors; normalize so reports print 0.
    EntropyScore::new(if h == 0.0 { 0.0 } else { h })
}

/// Empirical distribution of verdicts over a set of interpreters.
///
/// `mass` holds verdict counts when built from outcomes, and summed
/// probability mass when built by averaging per-model distributions; either
/// way `probabilities = mass / total` and `total` equals the number of
/// contributing interpreters (or models).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JudgmentDistribution {
    mass: [f64; OUTCOME_COUNT],
    support_size: usize,
}

impl JudgmentDistribution {
    /// Count verdicts into a distribution. Confidence fields are ignored.
    pub fn from_outcomes(outcomes: &[JudgmentOutcome]) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(CoreError::validation(
                "cannot build a judgment distribution from zero records",
            ));
        }
        let mut mass = [0.0; OUTCOME_COUNT];
        for outcome in outcomes {
            mass[outcome.verdict.index()] += 1.0;
        }
        Ok(JudgmentDistribution {
            mass,
            support_size: outcomes.len(),
        })
    }

    /// Count bare verdicts into a distribution.
    pub fn from_verdicts(verdicts: &[Verdict]) -> Result<Self> {
        if verdicts.is_empty() {
            return Err(CoreError::validation(
                "cannot build a judgment distribution from zero verdicts",
            ));
        }
        let mut mass = [0.0; OUTCOME_COUNT];
        for verdict in verdicts {
            mass[verdict.index()] += 1.0;
        }
        Ok(JudgmentDistribution {
            mass,
            support_size: verdicts.len(),
        })
    }

    /// Build from explicit per-outcome counts (compliant, noncompliant).
    pub fn from_counts(compliant: u64, noncompliant: u64) -> Result<Self> {
        let total = compliant + noncompliant;
        if total == 0 {
            return Err(CoreError::validation("judgment distribution needs at least one count"));
        }
        Ok(JudgmentDistribution {
            mass: [compliant as f64, noncompliant as f64],
            support_size: total as usize,
        })
    }

    /// Uniform average of per-model distributions; `support_size` becomes the
    /// number of models averaged.
    pub fn average(per_model: &[JudgmentDistribution]) -> Result<Self> {
        if per_model.is_empty() {
            return Err(CoreError::validation("cannot average zero distributions"));
        }
        let mut mass = [0.0; OUTCOME_COUNT];
        for dist in per_model {
            let probs = dist.probabilities();
            for (slot, p) in mass.iter_mut().zip(probs) {
                *slot += p;
            }
        }
        Ok(JudgmentDistribution {
            mass,
            support_size: per_model.len(),
        })
    }

    /// Probability of each outcome, in [compliant, noncompliant] order.
    pub fn probabilities(&self) -> [f64; OUTCOME_COUNT] {
        let total: f64 = self.mass.iter().sum();
        [self.mass[0] / total, self.mass[1] / total]
    }

    /// Per-outcome mass (counts, or summed probabilities for an average).
    pub fn mass(&self) -> [f64; OUTCOME_COUNT] {
        self.mass
    }

    /// Number of interpreters (or models) that contributed.
    pub fn support_size(&self) -> usize {
        self.support_size
    }

    /// Shannon entropy of the distribution, in bits.
    pub fn entropy(&self) -> EntropyScore {
        shannon_entropy(&self.probabilities()).expect("probabilities derived from mass always sum to 1")
    }
}

/// Empirical distribution over a nonempty list of interpreter outcomes.
pub fn judgment_distribution(records: &[JudgmentOutcome]) -> Result<JudgmentDistribution> {
    JudgmentDistribution::from_outcomes(records)
}

/// Disagreement entropy of a set of interpreter outcomes: the Shannon
/// entropy of their empirical verdict distribution.
pub fn disagreement(records: &[JudgmentOutcome]) -> Result<EntropyScore> {
    Ok(judgment_distribution(records)?.entropy())
}

/// Inter-model distribution: the uniform average of per-model verdict
/// distributions. Its entropy measures cross-model inconsistency.
pub fn inter_model_distribution(per_model: &[JudgmentDistribution]) -> Result<JudgmentDistribution> {
    JudgmentDistribution::average(per_model)
}

/// Score a ruleset candidate by its most challenging scenario plus a
/// weighted regularizer: `max(entropies) + lambda * regularizer_value`.
pub fn minimax_score(entropies: &[f64], regularizer_value: f64, lambda: f64) -> Result<f64> {
    if entropies.is_empty() {
        return Err(CoreError::validation("minimax score needs at least one scenario entropy"));
    }
    if lambda < 0.0 {
        return Err(CoreError::validation(format!("lambda must be nonnegative, got {lambda}")));
    }
    if regularizer_value < 0.0 {
        return Err(CoreError::validation(format!(
            "regularizer value must be nonnegative, got {regularizer_value}"
        )));
    }
    let max = entropies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(max + lambda * regularizer_value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcomes(compliant: usize, noncompliant: usize) -> Vec<JudgmentOutcome> {
        let mut v = vec![JudgmentOutcome::bare(Verdict::Compliant); compliant];
        v.extend(vec![JudgmentOutcome::bare(Verdict::Noncompliant); noncompliant]);
        v
    }

    /// Independent direct evaluation of binary entropy for oracle checks.
    fn binary_entropy_oracle(k: u64, n: u64) -> f64 {
        let mut h = 0.0;
        for count in [k, n - k] {
            if count > 0 {
                let p = count as f64 / n as f64;
                h -= p * p.log2();
            }
        }
        h
    }

    #[test]
    fn uniform_binary_is_one_bit() {
        assert_eq!(shannon_entropy(&[0.5, 0.5]).unwrap().value(), 1.0);
    }

    #[test]
    fn full_agreement_is_zero() {
        let h = shannon_entropy(&[1.0, 0.0]).unwrap().value();
        assert_eq!(h, 0.0);
        assert!(h.is_sign_positive(), "zero entropy must not be -0.0");
    }

    #[test]
    fn forty_sixty_matches_hand_value() {
        let h = shannon_entropy(&[0.4, 0.6]).unwrap().value();
        assert!((h - 0.9710).abs() < 1e-4);
        assert!((h - binary_entropy_oracle(2, 5)).abs() < 1e-12);
    }

    #[test]
    fn malformed_vectors_rejected() {
        assert!(shannon_entropy(&[]).is_err());
        assert!(shannon_entropy(&[-0.1, 1.1]).is_err());
        assert!(shannon_entropy(&[0.5, 0.5 + 1e-6]).is_err());
        // within tolerance is fine
        assert!(shannon_entropy(&[0.5, 0.5 + 1e-12]).is_ok());
    }

    #[test]
    fn distribution_counts_verdicts() {
        let dist = judgment_distribution(&outcomes(5, 0)).unwrap();
        assert_eq!(dist.probabilities(), [1.0, 0.0]);
        assert_eq!(dist.support_size(), 5);

        let dist = judgment_distribution(&outcomes(2, 3)).unwrap();
        assert_eq!(dist.probabilities(), [0.4, 0.6]);

        let dist = judgment_distribution(&outcomes(6, 6)).unwrap();
        assert_eq!(dist.probabilities(), [0.5, 0.5]);
    }

    #[test]
    fn empty_record_list_rejected() {
        assert!(judgment_distribution(&[]).is_err());
        assert!(disagreement(&[]).is_err());
    }

    #[test]
    fn disagreement_examples() {
        let h = disagreement(&outcomes(2, 3)).unwrap().value();
        assert!((h - 0.9710).abs() < 1e-4);

        assert_eq!(disagreement(&outcomes(7, 0)).unwrap().value(), 0.0);

        let h = disagreement(&outcomes(1, 4)).unwrap().value();
        assert!((h - 0.7219).abs() < 1e-4);
        assert!(h < 0.9, "1/4 split sits below the high-entropy threshold");
    }

    #[test]
    fn disagreement_equals_entropy_of_distribution_bit_for_bit() {
        for k in 0..=12u64 {
            let records = outcomes(k as usize, (12 - k) as usize);
            let via_disagreement = disagreement(&records).unwrap().value();
            let via_composition = judgment_distribution(&records).unwrap().entropy().value();
            assert_eq!(via_disagreement.to_bits(), via_composition.to_bits());
        }
    }

    #[test]
    fn entropy_matches_brute_force_over_all_small_splits() {
        for n in 1..=12u64 {
            for k in 0..=n {
                let h = disagreement(&outcomes(k as usize, (n - k) as usize)).unwrap().value();
                assert!(
                    (h - binary_entropy_oracle(k, n)).abs() < 1e-12,
                    "split {k}/{n}"
                );
            }
        }
    }

    #[test]
    fn inter_model_average() {
        let p1 = JudgmentDistribution::from_counts(1, 0).unwrap();
        let p2 = JudgmentDistribution::from_counts(0, 1).unwrap();
        let avg = inter_model_distribution(&[p1.clone(), p2]).unwrap();
        assert_eq!(avg.probabilities(), [0.5, 0.5]);
        assert_eq!(avg.entropy().value(), 1.0);
        assert_eq!(avg.support_size(), 2);

        // averaging identical inputs is idempotent on the probability vector
        let same = inter_model_distribution(&[p1.clone(), p1.clone(), p1.clone()]).unwrap();
        assert_eq!(same.probabilities(), p1.probabilities());

        let p_yes = JudgmentDistribution::from_counts(1, 0).unwrap();
        let p_no = JudgmentDistribution::from_counts(0, 1).unwrap();
        let avg = inter_model_distribution(&[p_yes.clone(), p_yes, p_no]).unwrap();
        let probs = avg.probabilities();
        assert!((probs[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((probs[1] - 1.0 / 3.0).abs() < 1e-15);

        assert!(inter_model_distribution(&[]).is_err());
    }

    #[test]
    fn minimax_examples() {
        assert_eq!(minimax_score(&[0.2, 0.9, 0.5], 0.0, 0.0).unwrap(), 0.9);
        assert_eq!(minimax_score(&[0.0], 0.3, 1.0).unwrap(), 0.3);
        assert!((minimax_score(&[0.5, 0.5], 0.2, 0.5).unwrap() - 0.6).abs() < 1e-15);
        assert!(minimax_score(&[], 0.0, 0.0).is_err());
        assert!(minimax_score(&[0.5], 0.1, -1.0).is_err());
    }
}
