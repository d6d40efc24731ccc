//! Report envelope shared by every command.

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field of [`Report`] or a command's `result` object
/// changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The property holds or the construction succeeded.
    Ok,
    /// The property fails; a witness is attached.
    Fails,
    /// The input was malformed or violated a precondition.
    InputError,
    /// Checks that must agree did not.
    InvariantViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fails => 1,
            Status::InputError => 2,
            Status::InvariantViolation => 3,
        }
    }

    pub fn from_verdict(holds: bool) -> Self {
        if holds {
            Status::Ok
        } else {
            Status::Fails
        }
    }
}

/// What a command produced: a status, human-readable text and the JSON
/// `result` object.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub result: Value,
}

impl Outcome {
    pub fn new(status: Status, text: String, result: Value) -> Self {
        Self { status, text, result }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub schema_version: u32,
    pub command: &'a str,
    pub status: Status,
    pub exit_code: i32,
    pub result: &'a Value,
}

impl<'a> Report<'a> {
    pub fn new(command: &'a str, outcome: &'a Outcome) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            status: outcome.status,
            exit_code: outcome.status.exit_code(),
            result: &outcome.result,
        }
    }
}
