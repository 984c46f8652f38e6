use super::ast::Span;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    /// E001
    Syntax,
    /// E002
    UnknownIdentifier,
    /// E003
    Arity,
    /// E004
    TypeMismatch,
    /// E005
    DuplicateBinding,
    /// E006
    NonConstantDivisor,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E001",
            ErrorCode::UnknownIdentifier => "E002",
            ErrorCode::Arity => "E003",
            ErrorCode::TypeMismatch => "E004",
            ErrorCode::DuplicateBinding => "E005",
            ErrorCode::NonConstantDivisor => "E006",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located DSL diagnostic, displayed as `error[E002] at 1:7: ...`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("error[{code}] at {}:{}: {message}", span.line, span.col)]
pub struct DslError {
    pub code: ErrorCode,
    pub span: Span,
    pub message: String,
}

impl DslError {
    pub fn new(code: ErrorCode, span: Span, message: impl Into<String>) -> Self {
        Self {
            code,
            span,
            message: message.into(),
        }
    }
}
