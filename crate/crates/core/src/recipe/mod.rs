//! JSON recipes and their execution.

pub mod exec;
pub mod parse;
pub mod spec;
pub mod verify;

pub use exec::{run_recipe, Part, RunOptions};
pub use spec::{Builder, CheckKind, Construction, GroupOp, Recipe, Search, RECIPE_VERSION};
pub use verify::{verify_report, VerifyOutcome};
