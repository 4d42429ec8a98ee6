//! Canonical JSON interchange form of classes.
//!
//! `{"spec": {...}, "terms": [{"exp": [eX, eY1, .., eL], "coef": "..."}]}` with
//! terms in ascending lexicographic order of their exponent tuples.

use serde::{Deserialize, Serialize};

use crate::class::ClassPoly;
use crate::coeff::Coeff;
use crate::error::{RingError, RingResult};
use crate::spec::RingSpec;

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    spec: RingSpec,
    terms: Vec<TermJson>,
}

impl<C: Coeff> ClassPoly<C> {
    fn to_doc(&self) -> ClassJson {
        ClassJson {
            spec: *self.spec(),
            terms: self
                .term_list()
                .into_iter()
                .map(|(exp, c)| TermJson { exp, coef: c.to_text() })
                .collect(),
        }
    }

    /// The JSON value (object keys in `serde_json`'s map order).
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("class JSON is always serialisable")
    }

    /// The canonical JSON text: compact, fields in declaration order, byte-stable.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("class JSON is always serialisable")
    }

    /// Parses the canonical JSON form.
    pub fn from_json_value(v: &serde_json::Value) -> RingResult<Self> {
        let doc: ClassJson = serde_json::from_value(v.clone()).map_err(|e| RingError::Parse(e.to_string()))?;
        let terms = doc
            .terms
            .into_iter()
            .map(|t| Ok((t.exp, C::parse_text(&t.coef)?)))
            .collect::<RingResult<Vec<_>>>()?;
        ClassPoly::from_terms(doc.spec, terms)
    }

    /// Parses canonical JSON text.
    pub fn from_json(text: &str) -> RingResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| RingError::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }
}
