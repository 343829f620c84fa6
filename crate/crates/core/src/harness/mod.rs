//! Bounded-exhaustive checks of inference schemas and closure preservation
//! for conditionals, and reproduction of the summary tables.
//!
//! Verdicts are relative to a finite formula pool: `consistent-bounded`
//! means no counterexample exists among the checked instances, nothing more.

mod pool;
mod preservation;
mod schema;
mod tables;

pub use pool::{default_connectives, enumerate_pool, Pool, PoolEntry, PoolSignature, DEFAULT_POOL_CAP};
pub use preservation::{
    check_preservation, check_preservation_with, PreservationCounterexample, PreservationMode, PreservationReport,
};
pub use schema::{
    check_inference_schema, Role, RoleFilter, SchemaCounterexample, SchemaKind, SchemaReport, Sequent, Verdict,
};
pub use tables::{
    reproduce_tables, CellCounterexample, CellKind, CheckResult, Table, TableConfig, TableReport, TableRow,
    CLOSURE_COLUMNS, INFERENTIAL_COLUMNS, TABLE_CONDITIONALS,
};
