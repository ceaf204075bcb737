//! Domain types shared by every module: rules, scenarios, interpretive
//! strategies, and individual judgment outcomes.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Sentinel strategy name selecting the baseline (no-strategy) judge template.
pub const BASELINE_STRATEGY: &str = "none";

/// Where a rule came from: the shipped catalog or a refinement round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// A rule from the shipped catalog (or loaded verbatim from a rules file).
    Catalog,
    /// A revision produced by the refinement loop.
    Revision {
        /// Rule this revision was generated from.
        parent_id: String,
        /// 1-based refinement round.
        round: u32,
        /// 0-based candidate index within the round.
        candidate: u32,
    },
}

/// A single natural-language rule (principle) to judge responses against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    /// Short stable identifier, unique within a ruleset.
    pub id: String,
    /// Rule sentence(s) in imperative form.
    pub text: String,
    /// Catalog entry or revision lineage.
    #[serde(default = "Provenance::catalog")]
    pub provenance: Provenance,
}

impl Provenance {
    fn catalog() -> Self {
        Provenance::Catalog
    }
}

impl Rule {
    /// Build a catalog rule, validating that id and text are nonempty.
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Result<Self> {
        let rule = Rule {
            id: id.into(),
            text: text.into(),
            provenance: Provenance::Catalog,
        };
        rule.validate()?;
        Ok(rule)
    }

    /// Build a revision of `parent` with the given text.
    pub fn revision(parent: &Rule, text: impl Into<String>, round: u32, candidate: u32) -> Result<Self> {
        let rule = Rule {
            id: format!("{}@r{}c{}", parent.id, round, candidate),
            text: text.into(),
            provenance: Provenance::Revision {
                parent_id: parent.id.clone(),
                round,
                candidate,
            },
        };
        rule.validate()?;
        Ok(rule)
    }

    /// Check the type invariants (nonempty id and text).
    pub fn validate(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(CoreError::validation("rule id must be nonempty"));
        }
        if self.text.trim().is_empty() {
            return Err(CoreError::validation(format!("rule {:?} has empty text", self.id)));
        }
        Ok(())
    }
}

/// Validate a ruleset: every rule valid, ids unique, revisions reference existing parents.
pub fn validate_ruleset(rules: &[Rule]) -> Result<()> {
    let mut seen = HashSet::new();
    for rule in rules {
        rule.validate()?;
        if !seen.insert(rule.id.as_str()) {
            return Err(CoreError::validation(format!("duplicate rule id {:?}", rule.id)));
        }
    }
    for rule in rules {
        if let Provenance::Revision { parent_id, .. } = &rule.provenance {
            if !seen.contains(parent_id.as_str()) {
                return Err(CoreError::validation(format!(
                    "revision {:?} references missing parent {:?}",
                    rule.id, parent_id
                )));
            }
        }
    }
    Ok(())
}

/// One prompt/response pair extracted from a conversation corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    /// Stable identifier, unique within a scenario set.
    pub id: String,
    /// The user turn shown to the judge.
    pub prompt: String,
    /// The assistant turn being judged.
    pub response: String,
    /// Reference back to the corpus record this pair came from.
    #[serde(default)]
    pub source: Option<String>,
}

impl Scenario {
    /// Build a scenario, validating nonempty fields.
    pub fn new(id: impl Into<String>, prompt: impl Into<String>, response: impl Into<String>) -> Result<Self> {
        let scenario = Scenario {
            id: id.into(),
            prompt: prompt.into(),
            response: response.into(),
            source: None,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Check the type invariants.
    pub fn validate(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(CoreError::validation("scenario id must be nonempty"));
        }
        if self.prompt.is_empty() {
            return Err(CoreError::validation(format!("scenario {:?} has empty prompt", self.id)));
        }
        if self.response.is_empty() {
            return Err(CoreError::validation(format!(
                "scenario {:?} has empty response",
                self.id
            )));
        }
        Ok(())
    }
}

/// A named interpretive strategy: an instruction constraining how a rule is read.
///
/// The catalog ships twelve strategies; the [`BASELINE_STRATEGY`] sentinel
/// (`"none"`, empty instruction) selects the baseline judge template instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpretiveStrategy {
    /// Unique strategy name, e.g. `Narrow` or `Negative_Implication`.
    pub name: String,
    /// Full instruction text inserted into the judge prompt; empty for the baseline.
    pub instruction: String,
}

impl InterpretiveStrategy {
    /// Build a non-baseline strategy with a nonempty instruction.
    pub fn new(name: impl Into<String>, instruction: impl Into<String>) -> Result<Self> {
        let strategy = InterpretiveStrategy {
            name: name.into(),
            instruction: instruction.into(),
        };
        strategy.validate()?;
        Ok(strategy)
    }

    /// The baseline sentinel: name `"none"`, empty instruction.
    pub fn baseline() -> Self {
        InterpretiveStrategy {
            name: BASELINE_STRATEGY.to_string(),
            instruction: String::new(),
        }
    }

    /// True for the baseline sentinel.
    pub fn is_baseline(&self) -> bool {
        self.name == BASELINE_STRATEGY
    }

    /// Check the type invariants: the baseline carries an empty instruction,
    /// every other strategy a nonempty one.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(CoreError::validation("strategy name must be nonempty"));
        }
        if self.is_baseline() {
            if !self.instruction.is_empty() {
                return Err(CoreError::validation(
                    "baseline strategy must carry an empty instruction",
                ));
            }
        } else if self.instruction.trim().is_empty() {
            return Err(CoreError::validation(format!(
                "strategy {:?} has empty instruction",
                self.name
            )));
        }
        Ok(())
    }
}

/// Validate a strategy set: every entry valid, names unique.
pub fn validate_strategies(strategies: &[InterpretiveStrategy]) -> Result<()> {
    let mut seen = HashSet::new();
    for strategy in strategies {
        strategy.validate()?;
        if !seen.insert(strategy.name.as_str()) {
            return Err(CoreError::validation(format!(
                "duplicate strategy name {:?}",
                strategy.name
            )));
        }
    }
    Ok(())
}

/// Binary compliance verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The response complies with the rule ("yes").
    Compliant,
    /// The response violates the rule ("no").
    Noncompliant,
}

/// Number of outcomes in the binary judgment space.
pub const OUTCOME_COUNT: usize = 2;

impl Verdict {
    /// Index into per-outcome arrays: compliant = 0, noncompliant = 1.
    pub fn index(self) -> usize {
        match self {
            Verdict::Compliant => 0,
            Verdict::Noncompliant => 1,
        }
    }

    /// The opposite verdict.
    pub fn flipped(self) -> Verdict {
        match self {
            Verdict::Compliant => Verdict::Noncompliant,
            Verdict::Noncompliant => Verdict::Compliant,
        }
    }

    /// Lowercase yes/no token used by the binary judge format.
    pub fn as_yes_no(self) -> &'static str {
        match self {
            Verdict::Compliant => "yes",
            Verdict::Noncompliant => "no",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Compliant => write!(f, "compliant"),
            Verdict::Noncompliant => write!(f, "noncompliant"),
        }
    }
}

/// One interpreter's verdict, with the optional confidence the
/// confidence-bearing template collects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgmentOutcome {
    /// The binary verdict.
    pub verdict: Verdict,
    /// Confidence in [0, 100]; present iff produced by the confidence-bearing template.
    pub confidence: Option<u8>,
}

impl JudgmentOutcome {
    /// Outcome without confidence (binary yes/no format).
    pub fn bare(verdict: Verdict) -> Self {
        JudgmentOutcome {
            verdict,
            confidence: None,
        }
    }

    /// Outcome with a confidence score, validated to [0, 100].
    pub fn with_confidence(verdict: Verdict, confidence: u8) -> Result<Self> {
        if confidence > 100 {
            return Err(CoreError::validation(format!(
                "confidence {confidence} outside [0, 100]"
            )));
        }
        Ok(JudgmentOutcome {
            verdict,
            confidence: Some(confidence),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_validation_rejects_empty_text() {
        assert!(Rule::new("r1", "").is_err());
        assert!(Rule::new("", "text").is_err());
        assert!(Rule::new("r1", "Your response must be kind.").is_ok());
    }

    #[test]
    fn ruleset_rejects_duplicate_ids_and_orphan_revisions() {
        let a = Rule::new("a", "Rule A.").unwrap();
        let b = Rule::new("a", "Rule B.").unwrap();
        assert!(validate_ruleset(&[a.clone(), b]).is_err());

        let rev = Rule::revision(&a, "Rule A, clarified.", 1, 0).unwrap();
        assert!(validate_ruleset(&[a.clone(), rev.clone()]).is_ok());
        assert!(validate_ruleset(&[rev]).is_err());
    }

    #[test]
    fn baseline_strategy_invariants() {
        let base = InterpretiveStrategy::baseline();
        assert!(base.is_baseline());
        assert!(base.validate().is_ok());
        assert!(InterpretiveStrategy::new("none", "instruction").is_err());
        assert!(InterpretiveStrategy::new("Narrow", "").is_err());
    }

    #[test]
    fn confidence_range_checked() {
        assert!(JudgmentOutcome::with_confidence(Verdict::Compliant, 100).is_ok());
        assert!(JudgmentOutcome::with_confidence(Verdict::Compliant, 101).is_err());
    }

    #[test]
    fn verdict_indices_cover_outcome_space() {
        assert_eq!(Verdict::Compliant.index(), 0);
        assert_eq!(Verdict::Noncompliant.index(), 1);
        assert_eq!(Verdict::Compliant.flipped(), Verdict::Noncompliant);
    }
}
