//! Einstein-summation index expressions: parsing, validation into a
//! contraction plan, pairwise scheduling and evaluation.
//!
//! Grammar (whitespace is insignificant between tokens):
//!
//! ```text
//! stmt   := [ factor '=' ] expr
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [real '*'] factor+
//! factor := name ('_' group | '^' group)+
//! group  := index | '{' index+ '}'
//! index  := 'a'..'z' | '1'..'9'
//! ```
//!
//! A digit in an index group pins that slot to a fixed 1-based value, so
//! `e_{rst} x^r_1 x^s_2 x^t_3` reads columns 1, 2 and 3 of `x`.

mod exec;
mod parser;
mod plan;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::TensorError;
use crate::tensor::{TensorObject, Variance};

pub use exec::{execute, Bindings};
pub use parser::parse;
pub use plan::{order_contractions, validate, ContractionPlan, ContractionStep, Mode, Signature, TermPlan};

/// A single index position in a factor: a summation/free letter or a fixed
/// numeric value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexLabel {
    Letter(char),
    Fixed(usize),
}

impl fmt::Display for IndexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexLabel::Letter(c) => write!(f, "{c}"),
            IndexLabel::Fixed(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSpec {
    pub label: IndexLabel,
    pub variance: Variance,
}

/// A named tensor with its written index layout, e.g. `x^r_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorRef {
    pub name: String,
    pub indices: Vec<IndexSpec>,
    /// Character offset of the name in the source text.
    pub position: usize,
}

impl fmt::Display for FactorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for ix in &self.indices {
            let mark = match ix.variance {
                Variance::Up => '^',
                Variance::Down => '_',
            };
            write!(f, "{mark}{}", ix.label)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coefficient: f64,
    pub factors: Vec<FactorRef>,
}

/// Parsed expression, before any semantic checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub target: Option<FactorRef>,
    pub terms: Vec<Term>,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.target {
            write!(f, "{t} = ")?;
        }
        for (k, term) in self.terms.iter().enumerate() {
            let c = term.coefficient;
            if k > 0 {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            if c.abs() != 1.0 {
                write!(f, "{:?}*", c.abs())?;
            }
            let parts: Vec<String> = term.factors.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Coarse classification of einsum failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EinsumErrorKind {
    Syntax,
    TripleIndex,
    VarianceClash,
    FreeIndexMismatch,
    TargetLayout,
    WeightMismatch,
    Binding,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EinsumError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid index character {found:?} at position {position}: indices are a..z or 1..9")]
    BadIndex { position: usize, found: char },

    #[error("index `{letter}` appears {count} times in term {term}; at most twice is allowed")]
    TripleIndex { letter: char, count: usize, term: usize },

    #[error("variance clash on index `{letter}` in term {term}: {detail}")]
    VarianceClash {
        letter: char,
        term: usize,
        detail: String,
    },

    #[error("free indices differ between terms: term 0 has {{{first}}}, term {term} has {{{other}}}")]
    FreeIndexMismatch {
        term: usize,
        first: String,
        other: String,
    },

    #[error("target layout: {0}")]
    TargetLayout(String),

    #[error("weight mismatch: term 0 has weight {first}, term {term} has weight {other}")]
    WeightMismatch { term: usize, first: i32, other: i32 },

    #[error("unbound name `{0}`")]
    Unbound(String),

    #[error("binding `{name}`: {detail}")]
    Binding { name: String, detail: String },

    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl EinsumError {
    pub fn kind(&self) -> EinsumErrorKind {
        match self {
            EinsumError::Syntax { .. } | EinsumError::BadIndex { .. } => EinsumErrorKind::Syntax,
            EinsumError::TripleIndex { .. } => EinsumErrorKind::TripleIndex,
            EinsumError::VarianceClash { .. } => EinsumErrorKind::VarianceClash,
            EinsumError::FreeIndexMismatch { .. } => EinsumErrorKind::FreeIndexMismatch,
            EinsumError::TargetLayout(_) => EinsumErrorKind::TargetLayout,
            EinsumError::WeightMismatch { .. } => EinsumErrorKind::WeightMismatch,
            EinsumError::Unbound(_) | EinsumError::Binding { .. } | EinsumError::Tensor(_) => {
                EinsumErrorKind::Binding
            }
        }
    }
}

/// Parses, validates against the bound signatures, schedules and executes
/// in one call.
pub fn evaluate(text: &str, bindings: &impl Bindings, mode: Mode) -> Result<TensorObject, EinsumError> {
    let statement = parse(text)?;
    let mut signatures = BTreeMap::new();
    for factor in statement.terms.iter().flat_map(|t| &t.factors) {
        let t = bindings
            .lookup(&factor.name)
            .ok_or_else(|| EinsumError::Unbound(factor.name.clone()))?;
        signatures.insert(factor.name.clone(), Signature::of(t));
    }
    let plan = validate(&statement, &signatures, mode)?;
    execute(&order_contractions(&plan), bindings)
}
