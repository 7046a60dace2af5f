use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside an operation's domain (mismatched fields, sizes, self-loops, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive search or enumeration would exceed its guard.
    #[error("budget exceeded: {what} needs {required} but the limit is {limit}")]
    Budget {
        what: String,
        required: u128,
        limit: u128,
    },

    /// A text file did not match its format; `line` is 1-based.
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    /// A code fails to satisfy a receiver.
    #[error("vertex {vertex} is not satisfied{}", budget_suffix(*.queries))]
    Unsatisfied { vertex: usize, queries: Option<usize> },

    /// A proven inequality failed; this always indicates a solver bug.
    #[error("property violated: {0}")]
    Violation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn budget_suffix(queries: Option<usize>) -> String {
    match queries {
        Some(q) => format!(" with at most {q} queries"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, required: u128, limit: u128) -> Self {
        Error::Budget {
            what: what.into(),
            required,
            limit,
        }
    }

    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
