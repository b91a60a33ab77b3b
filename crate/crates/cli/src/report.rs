//! The JSON document every command prints on stdout.

use sepcheck_core::{PureState, Tolerances};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandEcho,
    pub input: Option<InputDigest>,
    pub tolerances: Tolerances,
    pub result: Value,
    pub verify: Option<Verification>,
    pub counters: Value,
    pub timing_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub n: usize,
    pub norm: f64,
    pub popcount: usize,
}

impl InputDigest {
    pub fn of(state: &PureState, tol_zero: f64) -> Self {
        Self {
            n: state.n(),
            norm: state.norm_sqr().sqrt(),
            popcount: state
                .amplitudes()
                .iter()
                .filter(|a| a.norm() > tol_zero)
                .count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub oracle_separable: bool,
    pub agrees: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Moves a `counters` member out of a serialized result.
pub fn split_counters(mut result: Value) -> (Value, Value) {
    let counters = result
        .as_object_mut()
        .and_then(|m| m.remove("counters"))
        .unwrap_or(Value::Null);
    (result, counters)
}
