//! Structure interchange format.
//!
//! ```json
//! {"name": "Q2", "elements": ["0", "1", "-1"], "zero": "0", "one": "1",
//!  "neg": {"0": "0", "1": "-1", "-1": "1"},
//!  "add": {"1|-1": ["0", "1", "-1"], ...}, "mul": {"1|1": ["1"], ...}}
//! ```
//!
//! Cells are keyed `"a|b"`. A missing cell is taken from `"b|a"`; a cell
//! missing in both orders is rejected. The optional `"kind"` names the kind
//! verified on load.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::structure::{DeclaredKind, Structure};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub neg: BTreeMap<String, String>,
    pub add: BTreeMap<String, Vec<String>>,
    pub mul: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<DeclaredKind>,
}

/// Cells with `a ≤ b` by carrier index.
pub fn to_json(s: &Structure) -> StructureJson {
    let names = |set: &ElemSet| set.iter().map(|x| s.name_of(x).to_string()).collect();
    let mut add = BTreeMap::new();
    let mut mul = BTreeMap::new();
    for a in s.elements() {
        for b in a..s.size() {
            let key = format!("{}|{}", s.name_of(a), s.name_of(b));
            add.insert(key.clone(), names(s.add(a, b)));
            mul.insert(key, names(s.mul(a, b)));
        }
    }
    StructureJson {
        name: s.name.clone(),
        elements: s.names().to_vec(),
        zero: s.name_of(s.zero()).to_string(),
        one: s.name_of(s.one()).to_string(),
        neg: s
            .elements()
            .map(|a| (s.name_of(a).to_string(), s.name_of(s.neg(a)).to_string()))
            .collect(),
        add,
        mul,
        kind: Some(s.kind),
    }
}

pub fn from_json(j: &StructureJson) -> Result<Structure> {
    let n = j.elements.len();
    let mut index = HashMap::new();
    for (i, e) in j.elements.iter().enumerate() {
        if e.contains('|') {
            return Err(Error::Parse(format!("element name `{e}` contains `|`")));
        }
        if index.insert(e.as_str(), i).is_some() {
            return Err(Error::Parse(format!("duplicate element `{e}`")));
        }
    }
    let lookup = |e: &str| {
        index
            .get(e)
            .copied()
            .ok_or_else(|| Error::UnknownElement(e.to_string()))
    };
    for key in j.add.keys().chain(j.mul.keys()) {
        let (a, b) = key
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("cell key `{key}` is not `a|b`")))?;
        lookup(a)?;
        lookup(b)?;
    }
    let table = |cells: &BTreeMap<String, Vec<String>>| -> Result<Vec<ElemSet>> {
        let mut t = Vec::with_capacity(n * n);
        for a in &j.elements {
            for b in &j.elements {
                let cell = cells
                    .get(&format!("{a}|{b}"))
                    .or_else(|| cells.get(&format!("{b}|{a}")));
                let mut set = ElemSet::new();
                for x in cell.into_iter().flatten() {
                    set.insert(lookup(x)?);
                }
                t.push(set);
            }
        }
        Ok(t)
    };
    let neg = j
        .elements
        .iter()
        .map(|e| {
            j.neg
                .get(e)
                .ok_or_else(|| Error::Parse(format!("no negation for `{e}`")))
                .and_then(|x| lookup(x))
        })
        .collect::<Result<Vec<_>>>()?;
    Structure::from_tables(
        j.name.clone(),
        j.elements.clone(),
        table(&j.add)?,
        table(&j.mul)?,
        neg,
        lookup(&j.zero)?,
        lookup(&j.one)?,
        j.kind.unwrap_or(DeclaredKind::Superring),
    )
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let j: StructureJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(&j)
}

pub fn emit_structure(s: &Structure) -> String {
    serde_json::to_string_pretty(&to_json(s)).expect("structure JSON serializes")
}
