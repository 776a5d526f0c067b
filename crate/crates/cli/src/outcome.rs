use serde_json::Value;
use singcurve_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

/// What a subcommand produced: text for people, JSON for machines, and the
/// process exit code.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

/// A failure that aborts a subcommand before any report is produced.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, kind: "input".into(), message: message.into() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Arity { .. } | Error::InvalidCharExponents(_) | Error::InvalidCurve(_) => EXIT_INPUT,
        Error::DegenerateFactor(_) => EXIT_INPUT,
        Error::Precision(_) | Error::Margin(_) => EXIT_PRECISION,
        Error::MalformedGraph(_)
        | Error::NotCofinite(_)
        | Error::Inconsistent(_)
        | Error::NotDivisible(_)
        | Error::NonPolynomial(_)
        | Error::Synthesis(_) => EXIT_INCONSISTENT,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), kind: e.kind().into(), message: e.to_string() }
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
