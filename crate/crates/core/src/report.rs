//! Residual reports produced by the identity checkers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactnum::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub indices: Vec<i64>,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub residual: LaurentPoly,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Cell {
    /// Compares both sides exactly; the residual is `lhs - rhs`.
    pub fn compare(indices: Vec<i64>, lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        // equal canonical forms skip the subtraction, which matters for
        // rationals with very large denominators
        let residual = if lhs == rhs { LaurentPoly::zero() } else { &lhs - &rhs };
        let pass = residual.is_zero();
        Cell { indices, lhs, rhs, residual, pass, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub cells: Vec<Cell>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(identity: impl Into<String>) -> Self {
        Report { identity: identity.into(), params: BTreeMap::new(), cells: Vec::new(), notes: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, cell: Cell) {
        self.cells.push(cell);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.cells.extend(other.cells);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }
}
