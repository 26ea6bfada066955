//! The five verification suites. Each suite splits into independent cells.

pub mod guillemin;
pub mod index;
pub mod resolution;
pub mod theorem1;
pub mod unbounded;

use crate::report::Row;

/// Result of one cell; errors carry a message and are located by the runner.
pub type CellResult = Result<Vec<Row>, String>;

/// An independent unit of work with a stable identifier.
pub struct Cell<'a> {
    pub id: String,
    pub work: Box<dyn FnOnce() -> CellResult + Send + 'a>,
}

impl<'a> Cell<'a> {
    pub fn new(id: impl Into<String>, work: impl FnOnce() -> CellResult + Send + 'a) -> Self {
        Self {
            id: id.into(),
            work: Box::new(work),
        }
    }
}

pub(crate) fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}
