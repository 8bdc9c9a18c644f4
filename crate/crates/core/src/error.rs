use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable x{} out of range for {num_vars} variables", .var + 1)]
    VarOutOfRange { var: usize, num_vars: usize },

    #[error("{what} over {n} variables exceeds the bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        n: usize,
        bound: usize,
    },

    #[error("term contains a variable in both polarities")]
    ContradictoryTerm,

    #[error("circuit is not a formula")]
    NotAFormula,

    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),

    #[error("invalid partial assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid CM specification: s = {0} (need s >= 3 and s divisible by 3)")]
    InvalidCmSpec(usize),

    #[error("group index {group} out of range for {groups} groups")]
    GroupOutOfRange { group: usize, groups: usize },

    #[error("term {0} is not a minterm of the function")]
    NotAMinterm(String),

    #[error("minterm {0} fixes every variable, so no splitting variable exists")]
    FullSizeMinterm(String),

    #[error("hazard selection is empty")]
    EmptySelection,

    #[error("2^{r} assignments do not fit into the {available} minterms of CM on {s} variables")]
    BetaTooSmall {
        r: usize,
        s: usize,
        available: usize,
    },

    #[error("invalid minterm correspondence: {0}")]
    InvalidBeta(String),

    #[error("group width r must be at least 1")]
    ZeroGroupWidth,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
