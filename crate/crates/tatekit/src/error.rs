use thiserror::Error;

/// Errors across the whole library. Guard variants (`SizeGuard`, `OpGuard`)
/// are the refusals the CLI maps to exit code 2; everything else is exit 1.
#[derive(Debug, Error)]
pub enum TateError {
    #[error("group table must be {order}x{order}: row {row} has {len} entries")]
    TableShape { order: usize, row: usize, len: usize },
    #[error("group table entry {value} at [{row}][{col}] is out of range for order {order}")]
    TableEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("element 0 is not an identity (fails at element {at})")]
    BrokenIdentity { at: usize },
    #[error("group table is not a Latin square: {axis} {index} repeats element {value}")]
    NotLatin {
        axis: &'static str,
        index: usize,
        value: usize,
    },
    #[error("associativity fails at triple ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element index {index} out of range for group of order {order}")]
    ElementRange { index: usize, order: usize },
    #[error("a product group needs at least one factor")]
    EmptyProduct,

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    Dimension {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("column {col} of the inner lattice is not contained in the outer lattice")]
    Containment { col: usize },

    #[error("module {name}: {law}")]
    ModuleLaw { name: String, law: String },
    #[error("module mismatch in {context}")]
    ModuleMismatch { context: &'static str },
    #[error("group mismatch in {context}")]
    GroupMismatch { context: &'static str },
    #[error("coordinate vector length {got} does not match module rank {rank}")]
    CoordLength { got: usize, rank: usize },

    #[error("degree {degree} outside the supported range |n| <= {bound}")]
    DegreeRange { degree: i64, bound: i64 },
    #[error("cochain is not a cocycle in {context}")]
    NotCocycle { context: &'static str },
    #[error("homogeneous table breaks equivariance at g={g}, tuple {tuple:?}")]
    NotEquivariant { g: usize, tuple: Vec<usize> },

    #[error("size guard: {what} needs {needed}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("operation guard: estimated {estimated} elementary operations exceed the limit {limit}")]
    OpGuard { estimated: u128, limit: u128 },

    #[error("group is not cyclic")]
    NotCyclic,
    #[error("element {index} does not generate the group")]
    NotGenerator { index: usize },
    #[error("module has relations where a free lattice is required")]
    NotFree,
    #[error("chosen element is not fixed by the group action")]
    NotInvariant,
    #[error("norm condition violated: the norm of the chosen element is nonzero")]
    NormNonzero,
    #[error("short exact sequence invalid: {context}")]
    BadSequence { context: String },
    #[error("pullback through the injection failed (sequence is not exact in the middle)")]
    PullbackFailed,

    #[error("problem spec: {context}")]
    Spec { context: String },
    #[error("TOML parse error: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("serialized integer outside the i64 range")]
    ValueRange,

    #[error("internal invariant violated: {context}")]
    Internal { context: &'static str },
}

pub type Result<T> = std::result::Result<T, TateError>;

impl TateError {
    /// True for refusals that are about problem size, not invalid input.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, TateError::SizeGuard { .. } | TateError::OpGuard { .. })
    }
}
