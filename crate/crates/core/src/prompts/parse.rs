//! Parsers for the two judge output formats and the refiner output format.
//!
//! Parsing is lenient on case and surrounding whitespace but strict on
//! markers: a missing marker or an ambiguous verdict is a parse error, never
//! a guess.

use crate::error::{CoreError, Result};
use crate::types::{JudgmentOutcome, Verdict};

/// Parse `Judgment: <Yes/No>, Confidence: <0-100>` output.
///
/// Scans case-insensitively for the first `Judgment:` marker, reads the
/// verdict token, then requires a `Confidence:` marker with an integer in
/// [0, 100].
pub fn parse_confidence_judgment(raw: &str) -> Result<JudgmentOutcome> {
    let lower = raw.to_lowercase();
    let at = lower
        .find("judgment:")
        .ok_or_else(|| CoreError::parse("no \"Judgment:\" marker", raw))?;
    let after = &lower[at + "judgment:".len()..];
    let verdict = match first_word(after) {
        Some("yes") => Verdict::Compliant,
        Some("no") => Verdict::Noncompliant,
        Some(other) => {
            return Err(CoreError::parse(
                format!("unrecognized verdict token {other:?}"),
                raw,
            ))
        }
        None => return Err(CoreError::parse("no verdict after \"Judgment:\"", raw)),
    };

    let conf_at = after
        .find("confidence:")
        .ok_or_else(|| CoreError::parse("no \"Confidence:\" marker", raw))?;
    let conf_str: String = after[conf_at + "confidence:".len()..]
        .trim_start()
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .collect();
    if conf_str.is_empty() {
        return Err(CoreError::parse("no integer after \"Confidence:\"", raw));
    }
    let confidence: u32 = conf_str
        .parse()
        .map_err(|_| CoreError::parse("confidence is not an integer", raw))?;
    if confidence > 100 {
        return Err(CoreError::parse(
            format!("confidence {confidence} outside [0, 100]"),
            raw,
        ));
    }
    Ok(JudgmentOutcome {
        verdict,
        confidence: Some(confidence as u8),
    })
}

/// First run of alphabetic characters, skipping leading non-alphabetic ones
/// on the same line.
fn first_word(s: &str) -> Option<&str> {
    let s = s.trim_start_matches(|c: char| c.is_whitespace() || c == '*' || c == '"');
    let end = s.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(s.len());
    if end == 0 {
        None
    } else {
        Some(&s[..end])
    }
}

/// Parse the yes/no-only judge format: after trimming whitespace and
/// punctuation, the entire output must be exactly `yes` or `no`
/// (case-insensitive). Anything else is ambiguous and rejected.
pub fn parse_binary_judgment(raw: &str) -> Result<JudgmentOutcome> {
    let token = raw
        .trim()
        .trim_matches(|c: char| c.is_ascii_punctuation() || c.is_whitespace())
        .to_lowercase();
    match token.as_str() {
        "yes" => Ok(JudgmentOutcome::bare(Verdict::Compliant)),
        "no" => Ok(JudgmentOutcome::bare(Verdict::Noncompliant)),
        _ => Err(CoreError::parse("expected exactly \"yes\" or \"no\"", raw)),
    }
}

/// Extract the revised rule text after the first `REVISED RULE:` marker,
/// up to the end of its paragraph (a blank line or end of output).
pub fn parse_revision(raw: &str) -> Result<String> {
    const MARKER: &str = "revised rule:";
    let lower = raw.to_lowercase();
    let at = lower
        .find(MARKER)
        .ok_or_else(|| CoreError::parse("no \"REVISED RULE:\" marker", raw))?;
    let after = &raw[at + MARKER.len()..];
    let block = match after.find("\n\n") {
        Some(end) => &after[..end],
        None => after,
    };
    let text = block
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    if text.is_empty() {
        return Err(CoreError::parse("empty revision after \"REVISED RULE:\"", raw));
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn confidence_format_examples() {
        let out = parse_confidence_judgment("Judgment: Yes, Confidence: 90").unwrap();
        assert_eq!((out.verdict, out.confidence), (Verdict::Compliant, Some(90)));

        let out = parse_confidence_judgment("judgment: no, confidence: 0").unwrap();
        assert_eq!((out.verdict, out.confidence), (Verdict::Noncompliant, Some(0)));

        assert!(parse_confidence_judgment("I believe it complies.").is_err());
        assert!(parse_confidence_judgment("Judgment: Maybe, Confidence: 50").is_err());
        assert!(parse_confidence_judgment("Judgment: Yes, Confidence: 101").is_err());
        assert!(parse_confidence_judgment("Judgment: Yes").is_err());
    }

    #[test]
    fn confidence_format_tolerates_chatter_before_marker() {
        let out = parse_confidence_judgment("Sure. Judgment: No, Confidence: 75\n").unwrap();
        assert_eq!((out.verdict, out.confidence), (Verdict::Noncompliant, Some(75)));
    }

    #[test]
    fn binary_format_examples() {
        assert_eq!(parse_binary_judgment("yes").unwrap().verdict, Verdict::Compliant);
        assert_eq!(parse_binary_judgment("  No.").unwrap().verdict, Verdict::Noncompliant);
        assert_eq!(parse_binary_judgment("YES\n").unwrap().verdict, Verdict::Compliant);
        assert!(parse_binary_judgment("yes and no").is_err());
        assert!(parse_binary_judgment("maybe").is_err());
        assert!(parse_binary_judgment("").is_err());
        assert!(parse_binary_judgment("yes").unwrap().confidence.is_none());
    }

    #[test]
    fn revision_extraction() {
        assert_eq!(
            parse_revision("REVISED RULE: Your response must X.").unwrap(),
            "Your response must X."
        );
        assert_eq!(
            parse_revision("Here you go.\nREVISED RULE: Your response must Y.\n\nHope that helps.").unwrap(),
            "Your response must Y."
        );
        assert!(parse_revision("I cannot revise this rule.").is_err());
        assert!(parse_revision("REVISED RULE:   \n\nnothing").is_err());
    }
}
