use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The JSON Schema every `--json` report validates against.
pub const SCHEMA: &str = include_str!("../schema/run-report.schema.json");

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Certified,
    Failed,
    /// Usage or budget error; nothing was decided.
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Certified => 0,
            Outcome::Failed => 1,
            Outcome::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specialization: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Remaining command arguments.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub args: BTreeMap<String, Value>,
}

impl Inputs {
    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.args.insert(key.to_owned(), value.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub command: String,
    pub inputs: Inputs,
    pub outcome: Outcome,
    /// The first counterexample or error message when not certified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Inputs) -> Self {
        RunReport {
            version: REPORT_VERSION,
            command: command.to_owned(),
            inputs,
            outcome: Outcome::Certified,
            failure: None,
            payload: Value::Null,
            wall_ms: None,
        }
    }

    pub fn certified(mut self, payload: Value) -> Self {
        self.outcome = Outcome::Certified;
        self.payload = payload;
        self
    }

    pub fn failed(mut self, failure: impl ToString, payload: Value) -> Self {
        self.outcome = Outcome::Failed;
        self.failure = Some(failure.to_string());
        self.payload = payload;
        self
    }

    pub fn error(mut self, failure: impl ToString) -> Self {
        self.outcome = Outcome::Error;
        self.failure = Some(failure.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
