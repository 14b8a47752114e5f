//! JSON file format for posets (optionally with an up-set or a linear
//! extension) and DOT export of Hasse diagrams.
//!
//! The JSON stores the full strict relation. Loading never computes a
//! closure, so a missing forced pair is reported rather than repaired.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::generic::{LinearOrder, Structure};
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("relation is not a strict partial order: {0}")]
    Axiom(PosetError),
    #[error("invalid {field}: {message}")]
    Role { field: &'static str, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub lt: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upset: Option<Vec<usize>>,
    /// Elements from ≺-least to ≺-greatest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<Vec<usize>>,
}

impl PosetFile {
    pub fn from_structure(s: &Structure) -> Self {
        PosetFile {
            n: s.len(),
            lt: s.poset.strict_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            upset: s.upset.as_ref().map(Bits::to_vec),
            prec: s.order.as_ref().map(|o| o.sequence().to_vec()),
        }
    }

    pub fn from_poset(p: &FinitePoset) -> Self {
        Self::from_structure(&Structure::plain(p.clone()))
    }

    pub fn to_structure(&self) -> Result<Structure, FormatError> {
        let poset = FinitePoset::from_full_relation(self.n, self.lt.iter().map(|&[i, j]| (i, j)))
            .map_err(FormatError::Axiom)?;
        let upset = match &self.upset {
            None => None,
            Some(members) => {
                if let Some(&m) = members.iter().find(|&&m| m >= self.n) {
                    return Err(FormatError::Role {
                        field: "upset",
                        message: format!("element {m} out of range"),
                    });
                }
                let set = Bits::from_indices(self.n, members.iter().copied());
                if let Some((x, y)) = set.iter().find_map(|x| {
                    poset.strictly_above(x).iter().find(|&y| !set.contains(y)).map(|y| (x, y))
                }) {
                    return Err(FormatError::Role {
                        field: "upset",
                        message: format!("{x} is in it but {y} above it is not"),
                    });
                }
                Some(set)
            }
        };
        let order = match &self.prec {
            None => None,
            Some(seq) => {
                if seq.len() != self.n {
                    return Err(FormatError::Role {
                        field: "prec",
                        message: format!("lists {} elements, expected {}", seq.len(), self.n),
                    });
                }
                let order = LinearOrder::from_sequence(seq.clone())
                    .map_err(|e| FormatError::Role { field: "prec", message: e.to_string() })?;
                if let Some((a, b)) = poset.strict_pairs().into_iter().find(|&(a, b)| !order.precedes(a, b)) {
                    return Err(FormatError::Role {
                        field: "prec",
                        message: format!("{a} < {b} but {b} precedes {a}"),
                    });
                }
                Some(order)
            }
        };
        Ok(Structure { poset, upset, order })
    }
}

pub fn parse_structure(json: &str) -> Result<Structure, FormatError> {
    serde_json::from_str::<PosetFile>(json)?.to_structure()
}

pub fn parse_poset(json: &str) -> Result<FinitePoset, FormatError> {
    parse_structure(json).map(|s| s.poset)
}

pub fn structure_to_json(s: &Structure) -> String {
    serde_json::to_string_pretty(&PosetFile::from_structure(s)).expect("serializable")
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    structure_to_json(&Structure::plain(p.clone()))
}

/// Hasse diagram as a DOT digraph, drawn bottom to top.
pub fn to_dot(p: &FinitePoset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for i in 0..p.len() {
        writeln!(out, "  {i};").unwrap();
    }
    for (a, b) in p.hasse() {
        writeln!(out, "  {a} -> {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{family, AxiomViolation, FamilyKind, FamilySpec};

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poset(r#"{"n":2,"lt":[[0,1]]}"#).unwrap(), FinitePoset::chain(2));
        assert!(matches!(
            parse_poset(r#"{"n":2,"lt":[[0,1],[1,0]]}"#),
            Err(FormatError::Axiom(PosetError::Axiom(AxiomViolation::Antisymmetric { a: 0, b: 1 })))
        ));
        let err = parse_poset(r#"{"n":3,"lt":[[0,1],[1,2]]}"#).unwrap_err();
        assert!(err.to_string().contains("[0,2]"), "{err}");
        assert!(matches!(parse_poset("{"), Err(FormatError::Parse(_))));
    }

    #[test]
    fn parse_roles() {
        assert!(parse_structure(r#"{"n":2,"lt":[[0,1]],"upset":[0]}"#).is_err());
        assert!(parse_structure(r#"{"n":2,"lt":[[0,1]],"upset":[1]}"#).is_ok());
        assert!(parse_structure(r#"{"n":2,"lt":[[0,1]],"prec":[1,0]}"#).is_err());
        assert!(parse_structure(r#"{"n":2,"lt":[[0,1]],"prec":[0,1]}"#).is_ok());
    }

    #[test]
    fn dot_examples() {
        assert_eq!(to_dot(&FinitePoset::chain(2)), "digraph hasse {\n  rankdir=BT;\n  0;\n  1;\n  0 -> 1;\n}\n");
        assert!(!to_dot(&FinitePoset::antichain(3)).contains("->"));
        let s = family(FamilySpec::new(FamilyKind::S, 4, 2)).unwrap();
        assert_eq!(to_dot(&s).matches("->").count(), 3);
    }
}
