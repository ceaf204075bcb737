//! Prompt templates and judge/refiner output parsing.
//!
//! The four templates ship as versioned text assets so their bytes are
//! auditable; rendering is a pure substitution into named slots. Same
//! inputs always produce identical text.

mod catalog;
mod parse;

pub use catalog::{builtin_rules, builtin_strategies, load_rules, load_strategies};
pub use parse::{parse_binary_judgment, parse_confidence_judgment, parse_revision};

use crate::error::{CoreError, Result};
use crate::hash::sha256_hex;
use crate::types::{InterpretiveStrategy, Rule, Scenario};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Bumped whenever any template's bytes change; part of every cache key.
pub const TEMPLATE_VERSION: &str = "v1";

const BASELINE_JUDGE_TEMPLATE: &str = include_str!("../../assets/templates/baseline_judge.txt");
const STRATEGY_JUDGE_TEMPLATE: &str = include_str!("../../assets/templates/strategy_judge.txt");
const REFINEMENT_JUDGE_TEMPLATE: &str = include_str!("../../assets/templates/refinement_judge.txt");
const REFINER_TEMPLATE: &str = include_str!("../../assets/templates/refiner.txt");

/// Which template a prompt was rendered from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptKind {
    /// Confidence-bearing judge prompt with no interpretive strategy.
    BaselineJudge,
    /// Confidence-bearing judge prompt with an interpretive strategy section.
    StrategyJudge,
    /// Yes/no-only judge prompt used inside the refinement loop.
    RefinementJudge,
    /// Rule-refiner prompt carrying high-disagreement example scenarios.
    Refiner,
}

impl PromptKind {
    /// Stable lowercase name, matching the serialized form.
    pub fn as_str(self) -> &'static str {
        match self {
            PromptKind::BaselineJudge => "baseline_judge",
            PromptKind::StrategyJudge => "strategy_judge",
            PromptKind::RefinementJudge => "refinement_judge",
            PromptKind::Refiner => "refiner",
        }
    }

    /// True for the three judge templates (everything except the refiner).
    pub fn is_judge(self) -> bool {
        !matches!(self, PromptKind::Refiner)
    }
}

impl std::fmt::Display for PromptKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Identifiers of the inputs a prompt was rendered from, carried alongside
/// the text for caching and for deterministic synthetic backends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptMeta {
    /// Rule identifier.
    pub rule_id: String,
    /// SHA-256 of the rule text; revisions never collide with their parents.
    pub rule_text_hash: String,
    /// Scenario identifier; empty for refiner prompts.
    pub scenario_id: String,
    /// Strategy name; `"none"` for the baseline template and refiner prompts.
    pub strategy_name: String,
}

/// A fully rendered prompt: kind, exact text, and the values that were
/// substituted into each slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedPrompt {
    /// Which template produced this prompt.
    pub kind: PromptKind,
    /// The exact prompt text sent to a backend.
    pub text: String,
    /// Slot name → inserted value, for auditability.
    pub placeholders: BTreeMap<String, String>,
    /// Input identifiers for caching and synthetic judging.
    pub meta: PromptMeta,
}

/// Substitute each `{slot}` marker exactly once. Every listed slot must be
/// present in the template; templates are static so this is enforced by the
/// snapshot tests as well.
fn fill(template: &str, slots: &[(&str, &str)]) -> (String, BTreeMap<String, String>) {
    let mut text = template.to_string();
    let mut resolved = BTreeMap::new();
    for (name, value) in slots {
        let marker = format!("{{{name}}}");
        let at = text
            .find(&marker)
            .unwrap_or_else(|| panic!("template is missing slot {marker}"));
        text.replace_range(at..at + marker.len(), value);
        resolved.insert((*name).to_string(), (*value).to_string());
    }
    (text, resolved)
}

fn judge_meta(rule: &Rule, scenario: &Scenario, strategy_name: &str) -> PromptMeta {
    PromptMeta {
        rule_id: rule.id.clone(),
        rule_text_hash: sha256_hex(rule.text.as_bytes()),
        scenario_id: scenario.id.clone(),
        strategy_name: strategy_name.to_string(),
    }
}

/// Render the confidence-bearing judge prompt with no interpretive strategy.
pub fn render_baseline_judge(rule: &Rule, scenario: &Scenario) -> Result<RenderedPrompt> {
    rule.validate()?;
    scenario.validate()?;
    let (text, placeholders) = fill(
        BASELINE_JUDGE_TEMPLATE,
        &[
            ("rule_text", &rule.text),
            ("scenario_prompt", &scenario.prompt),
            ("scenario_response", &scenario.response),
        ],
    );
    Ok(RenderedPrompt {
        kind: PromptKind::BaselineJudge,
        text,
        placeholders,
        meta: judge_meta(rule, scenario, crate::types::BASELINE_STRATEGY),
    })
}

fn require_non_baseline(strategy: &InterpretiveStrategy) -> Result<()> {
    strategy.validate()?;
    if strategy.is_baseline() {
        return Err(CoreError::validation(
            "strategy templates require a non-baseline strategy; use the baseline template instead",
        ));
    }
    Ok(())
}

/// Render the confidence-bearing judge prompt with an interpretive strategy.
pub fn render_strategy_judge(
    rule: &Rule,
    strategy: &InterpretiveStrategy,
    scenario: &Scenario,
) -> Result<RenderedPrompt> {
    rule.validate()?;
    scenario.validate()?;
    require_non_baseline(strategy)?;
    let (text, placeholders) = fill(
        STRATEGY_JUDGE_TEMPLATE,
        &[
            ("rule_text", &rule.text),
            ("strategy_instruction", &strategy.instruction),
            ("scenario_prompt", &scenario.prompt),
            ("scenario_response", &scenario.response),
        ],
    );
    Ok(RenderedPrompt {
        kind: PromptKind::StrategyJudge,
        text,
        placeholders,
        meta: judge_meta(rule, scenario, &strategy.name),
    })
}

/// Render the yes/no-only judge prompt used for candidate evaluation in the
/// refinement loop.
pub fn render_refinement_judge(
    rule: &Rule,
    strategy: &InterpretiveStrategy,
    scenario: &Scenario,
) -> Result<RenderedPrompt> {
    rule.validate()?;
    scenario.validate()?;
    require_non_baseline(strategy)?;
    let (text, placeholders) = fill(
        REFINEMENT_JUDGE_TEMPLATE,
        &[
            ("rule_text", &rule.text),
            ("strategy_instruction", &strategy.instruction),
            ("scenario_prompt", &scenario.prompt),
            ("scenario_response", &scenario.response),
        ],
    );
    Ok(RenderedPrompt {
        kind: PromptKind::RefinementJudge,
        text,
        placeholders,
        meta: judge_meta(rule, scenario, &strategy.name),
    })
}

/// Render the rule-refiner prompt, embedding the `k` highest-disagreement
/// example scenarios in descending score order with 1-based labels.
pub fn render_refiner(
    rule: &Rule,
    examples: &[(Scenario, f64)],
    k: usize,
) -> Result<RenderedPrompt> {
    rule.validate()?;
    if examples.is_empty() {
        return Err(CoreError::validation("refiner prompt needs at least one example scenario"));
    }
    if k == 0 || k > examples.len() {
        return Err(CoreError::validation(format!(
            "k = {k} must be in [1, {}]",
            examples.len()
        )));
    }
    for (scenario, score) in examples {
        scenario.validate()?;
        if !(0.0..=1.0).contains(score) {
            return Err(CoreError::validation(format!(
                "disagreement score {score} for scenario {:?} outside [0, 1]",
                scenario.id
            )));
        }
    }

    let mut ranked: Vec<&(Scenario, f64)> = examples.iter().collect();
    // descending by disagreement, scenario id as the deterministic tie-break
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("scores validated finite")
            .then_with(|| a.0.id.cmp(&b.0.id))
    });
    ranked.truncate(k);

    let mut block = String::new();
    for (i, (scenario, score)) in ranked.iter().enumerate() {
        if i > 0 {
            block.push_str("\n\n");
        }
        block.push_str(&format!(
            "Example {n}:\n\n    Prompt: {prompt}\n\n    Response: {response}\n\n    Disagreement Score: {score:.4}",
            n = i + 1,
            prompt = scenario.prompt,
            response = scenario.response,
        ));
    }

    let (text, placeholders) = fill(
        REFINER_TEMPLATE,
        &[("rule_text", &rule.text), ("examples_block", &block)],
    );
    Ok(RenderedPrompt {
        kind: PromptKind::Refiner,
        text,
        placeholders,
        meta: PromptMeta {
            rule_id: rule.id.clone(),
            rule_text_hash: sha256_hex(rule.text.as_bytes()),
            scenario_id: String::new(),
            strategy_name: crate::types::BASELINE_STRATEGY.to_string(),
        },
    })
}
