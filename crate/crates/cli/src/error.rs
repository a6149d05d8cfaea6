use serde_json::json;

use pgcl_core::group::SCHEMA;

use crate::parse::ExprError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pgcl_core::Error),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("golden mismatch: {0}")]
    GoldenMismatch(String),
    #[error("prediction disagrees with the oracle for {0} group(s)")]
    T7Mismatch(usize),
    #[error("{0} acceptance check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::T7Mismatch(_) => 2,
            CliError::GoldenMismatch(_) => 3,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "core",
            CliError::Expr(ExprError::Parse(_)) => "parse",
            CliError::Expr(ExprError::Semantic(_)) => "semantic",
            CliError::Manifest(_) => "manifest",
            CliError::Io(_) => "io",
            CliError::GoldenMismatch(_) => "golden-mismatch",
            CliError::T7Mismatch(_) => "t7-mismatch",
            CliError::ChecksFailed(_) => "checks-failed",
        }
    }

    /// Machine-readable form printed on failure.
    pub fn to_json(&self) -> String {
        let mut err = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Expr(ExprError::Parse(p)) = self {
            err["position"] = json!(p.position);
        }
        json!({ "schema": SCHEMA, "error": err }).to_string()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
