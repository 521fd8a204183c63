//! Motive-spec documents and argument resolution.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tensor_periods::catalog;
use tensor_periods::hodge::{validate, HodgeType, MiddleSplit, PureHodgeData, RawMotive};

/// On-disk description of a pure motive by its Hodge numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveSpecDoc {
    pub label: String,
    pub weight: i64,
    pub hodge: Vec<HodgeType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle_split: Option<MiddleSplit>,
}

impl MotiveSpecDoc {
    pub fn to_raw(&self) -> RawMotive {
        RawMotive {
            label: self.label.clone(),
            weight: self.weight,
            types: self.hodge.iter().map(|t| (t.p, t.q, t.h)).collect(),
            middle_split: self.middle_split.map(|s| (s.plus, s.minus)),
        }
    }
}

/// Parse or validation failure with a `source:line:column` position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.source, self.line, self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

/// One-based line and column of the first occurrence of `needle`, or `1:1`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let Some(at) = text.find(needle) else { return (1, 1) };
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_motive(text: &str, source: &str) -> Result<PureHodgeData, SpecError> {
    let doc: MotiveSpecDoc = serde_json::from_str(text).map_err(|e| SpecError {
        source: source.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(&doc.to_raw()).map_err(|e| {
        let (line, column) = locate(text, "\"hodge\"");
        SpecError { source: source.to_string(), line, column, message: e.to_string() }
    })
}

/// Resolves a motive argument: an existing file first, then a catalog label
/// (`H_sym` is accepted for `H_sym+`).
pub fn resolve(arg: &str) -> Result<PureHodgeData, SpecError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| SpecError {
            source: arg.to_string(),
            line: 1,
            column: 1,
            message: e.to_string(),
        })?;
        return parse_motive(&text, arg);
    }
    catalog::by_label(arg).or_else(|| catalog::by_label(&format!("{arg}+"))).ok_or_else(|| SpecError {
        source: arg.to_string(),
        line: 1,
        column: 1,
        message: "no such file and no catalog motive with this label".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_syntax_errors() {
        let e = parse_motive("{\n  \"label\": \"x\",\n  \"weight\": 1,\n  \"hodge\": [\n", "t.json").unwrap_err();
        assert_eq!(e.source, "t.json");
        assert!(e.line >= 4, "{e}");
    }

    #[test]
    fn positions_validation_errors_at_hodge_list() {
        let text = "{\n  \"label\": \"x\",\n  \"weight\": 1,\n  \"hodge\": [{\"p\": 1, \"q\": 0, \"h\": 2}, {\"p\": 0, \"q\": 1, \"h\": 1}]\n}";
        let e = parse_motive(text, "t.json").unwrap_err();
        assert_eq!((e.line, e.column), (4, 3));
        assert!(e.message.contains("h^(1,0) = 2"), "{e}");
    }

    #[test]
    fn rejects_unknown_fields() {
        let e = parse_motive(r#"{"label":"x","weight":0,"hodge":[],"extra":1}"#, "t").unwrap_err();
        assert!(e.message.contains("extra"));
    }

    #[test]
    fn catalog_round_trip() {
        for h in catalog::all() {
            let doc = MotiveSpecDoc {
                label: h.label().to_string(),
                weight: h.weight(),
                hodge: h.types().to_vec(),
                middle_split: h.middle_split(),
            };
            let text = serde_json::to_string(&doc).unwrap();
            assert_eq!(parse_motive(&text, "mem").unwrap(), h);
        }
    }

    #[test]
    fn resolves_labels() {
        assert_eq!(resolve("H_sym").unwrap().label(), "H_sym+");
        assert_eq!(resolve("H_artin-").unwrap().label(), "H_artin-");
        assert!(resolve("H_nothing").is_err());
    }
}
