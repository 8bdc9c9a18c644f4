//! JSON circuit documents.
//!
//! ```json
//! {"num_vars": 2,
//!  "gates": [{"id": 0, "kind": "lit", "var": 1, "neg": false},
//!            {"id": 1, "kind": "lit", "var": 2, "neg": true},
//!            {"id": 2, "kind": "and", "children": [0, 1]}],
//!  "output": 2}
//! ```
//!
//! `var` is 1-based. Ids are arbitrary but unique, and a gate may only
//! reference gates listed before it. `meta` is free-form.

use std::collections::HashMap;

use hazardkit_core::{Circuit, Literal, Node};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitDocument {
    pub num_vars: usize,
    pub gates: Vec<Gate>,
    pub output: u64,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub meta: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub id: u64,
    #[serde(flatten)]
    pub op: GateOp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GateOp {
    Lit { var: usize, neg: bool },
    And { children: Vec<u64> },
    Or { children: Vec<u64> },
    Not { children: Vec<u64> },
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed circuit document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("gate id {0} is used twice")]
    DuplicateId(u64),
    #[error("gate {gate} references {child}, which is not an earlier gate")]
    UnknownChild { gate: u64, child: u64 },
    #[error("output {0} is not a gate")]
    UnknownOutput(u64),
    #[error("NOT gate {0} must have exactly one child")]
    NotArity(u64),
    #[error("gate {gate} uses x{var}; variables run from x1 to x{num_vars}")]
    VarOutOfRange {
        gate: u64,
        var: usize,
        num_vars: usize,
    },
    #[error("{0}")]
    Invalid(#[from] hazardkit_core::Error),
}

impl CircuitDocument {
    pub fn from_circuit(c: &Circuit) -> Self {
        let gates = c
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, node)| {
                let ids = |ch: &[usize]| ch.iter().map(|&i| i as u64).collect();
                let op = match node {
                    Node::Input(l) => GateOp::Lit {
                        var: l.var + 1,
                        neg: l.negated,
                    },
                    Node::And(ch) => GateOp::And { children: ids(ch) },
                    Node::Or(ch) => GateOp::Or { children: ids(ch) },
                    Node::Not(ch) => GateOp::Not {
                        children: vec![*ch as u64],
                    },
                };
                Gate { id: id as u64, op }
            })
            .collect();
        CircuitDocument {
            num_vars: c.num_vars(),
            gates,
            output: c.output() as u64,
            meta: Map::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn to_circuit(&self) -> Result<Circuit, DocumentError> {
        let mut index: HashMap<u64, usize> = HashMap::with_capacity(self.gates.len());
        let mut nodes = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let resolve = |ch: &[u64]| {
                ch.iter()
                    .map(|c| {
                        index.get(c).copied().ok_or(DocumentError::UnknownChild {
                            gate: gate.id,
                            child: *c,
                        })
                    })
                    .collect::<Result<Vec<usize>, _>>()
            };
            let node = match &gate.op {
                GateOp::Lit { var, neg } => {
                    if *var == 0 || *var > self.num_vars {
                        return Err(DocumentError::VarOutOfRange {
                            gate: gate.id,
                            var: *var,
                            num_vars: self.num_vars,
                        });
                    }
                    Node::Input(Literal::new(var - 1, *neg))
                }
                GateOp::And { children } => Node::And(resolve(children)?),
                GateOp::Or { children } => Node::Or(resolve(children)?),
                GateOp::Not { children } => match resolve(children)?.as_slice() {
                    [c] => Node::Not(*c),
                    _ => return Err(DocumentError::NotArity(gate.id)),
                },
            };
            if index.insert(gate.id, nodes.len()).is_some() {
                return Err(DocumentError::DuplicateId(gate.id));
            }
            nodes.push(node);
        }
        let out = *index
            .get(&self.output)
            .ok_or(DocumentError::UnknownOutput(self.output))?;
        Ok(Circuit::new(self.num_vars, nodes, out)?)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
