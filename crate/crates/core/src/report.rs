//! Run reports: deterministic JSON with every clock-dependent value under
//! the `timestamp` key.

use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use crate::error::Error;

pub const REPORT_VERSION: &str = "cubic-jordan.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    RecipeError,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::RecipeError => 2,
            Status::BudgetExceeded => 3,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RecipeError => "recipe-error",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        [Status::Pass, Status::Fail, Status::RecipeError, Status::BudgetExceeded].into_iter().find(|st| st.as_str() == s)
    }

    /// Budget errors exit with 3; failed verifications and contradictions
    /// with 1; malformed input and violated preconditions with 2.
    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::BudgetExceeded(_) | Error::TooLarge(_) => Status::BudgetExceeded,
            Error::Inconsistent(_)
            | Error::AxiomFailure(_)
            | Error::CompatibilityViolation(_)
            | Error::ConventionFailure(_)
            | Error::Exhausted(_) => Status::Fail,
            _ => Status::RecipeError,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub value: Value,
}

impl Report {
    pub fn new(
        recipe: Value,
        options: Value,
        body: Map<String, Value>,
        status: Status,
        first_failure: Option<String>,
        timings: Map<String, Value>,
    ) -> Report {
        let mut v = Map::new();
        v.insert("version".into(), json!(REPORT_VERSION));
        v.insert("tool".into(), json!({"name": "cubic-jordan", "version": env!("CARGO_PKG_VERSION")}));
        v.insert("recipe".into(), recipe);
        v.insert("options".into(), options);
        v.extend(body);
        v.insert("status".into(), json!(status.as_str()));
        v.insert("exit_code".into(), json!(status.exit_code()));
        v.insert("first_failure".into(), json!(first_failure));
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        v.insert("timestamp".into(), json!({"unix_seconds": now, "timings_ms": timings}));
        Report { status, value: Value::Object(v) }
    }

    /// A report for input that never reached execution.
    pub fn error(recipe: Value, options: Value, err: &Error) -> Report {
        Report::new(recipe, options, Map::new(), Status::of_error(err), Some(err.to_string()), Map::new())
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("reports serialize") + "\n"
    }

    /// The report without its `timestamp` key.
    pub fn deterministic(&self) -> Value {
        strip_timestamp(&self.value)
    }
}

pub fn strip_timestamp(v: &Value) -> Value {
    let mut v = v.clone();
    if let Some(m) = v.as_object_mut() {
        m.remove("timestamp");
    }
    v
}
