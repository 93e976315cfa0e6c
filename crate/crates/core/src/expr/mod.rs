//! A small language for building expressions out of the derived operations.
//!
//! ```text
//! let f: deg 2 = [1, 0, 3, 4, 0, 0, 1, 2];
//! let g: deg 1;
//! cup(f, g) - 2 * comp(f, g, 1)
//! ```

mod ast;
mod eval;
mod parse;
mod typecheck;

pub use ast::{Decl, Expr, ExprKind, Literal, Script, Span};
pub use eval::{eval_script, EvalConfig, EvalOutput};
pub use parse::parse;
pub use typecheck::typecheck;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("{line}:{col}: syntax error, expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("{}:{}: degree error in {node}: expected {expected}, found {found}", span.line, span.col)]
    Degree {
        span: Span,
        node: String,
        expected: String,
        found: usize,
    },
    #[error("{}:{}: composition index {index} out of range for degree {degree}", span.line, span.col)]
    Index {
        span: Span,
        index: usize,
        degree: usize,
    },
    #[error("{}:{}: unbound symbol `{name}`", span.line, span.col)]
    UnboundSymbol { span: Span, name: String },
    #[error("{}:{}: `{name}` declared twice", span.line, span.col)]
    DuplicateSymbol { span: Span, name: String },
    #[error("{}:{}: bad literal for `{name}`: {reason}", span.line, span.col)]
    Literal {
        span: Span,
        name: String,
        reason: String,
    },
}
