use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group load error: {0}")]
    Load(String),
    #[error("capacity exceeded: {what} has order {order}, bound is {bound} (set BURNSIDE_MAX_ORDER to raise it)")]
    Capacity {
        what: String,
        order: usize,
        bound: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("classification error: {0}")]
    Classification(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("system closure error: {0}")]
    SystemClosure(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
