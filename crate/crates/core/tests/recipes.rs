use serde_json::{json, Value};

use cubic_jordan::recipe::{run_recipe, verify_report, Part, Recipe, RunOptions};
use cubic_jordan::report::{Report, Status};
use cubic_jordan::Error;

fn recipe(v: Value) -> Recipe {
    Recipe::from_value(&v).unwrap()
}

fn run(v: Value) -> Report {
    run_recipe(&recipe(v), &RunOptions::default(), Part::All)
}

#[test]
fn version_and_clauses_are_validated() {
    let bad_version = json!({"version": "cubic-jordan.recipe/0", "field": "GF(5)", "construction": {"her3": "zorn"}});
    assert!(matches!(Recipe::from_value(&bad_version), Err(Error::InvalidInput(_))));
    let none = json!({"version": "cubic-jordan.recipe/1", "field": "GF(5)"});
    assert!(Recipe::from_value(&none).is_err());
    let two = json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(5)",
        "construction": {"her3": "zorn"},
        "search": {"kind": "spliet", "u0": [0, 1, 2]}
    });
    assert!(Recipe::from_value(&two).is_err());
    let checks_alone = json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(2)", "checks": ["nonsingular"],
        "search": {"kind": "spliet", "u0": [0, 1, 2]}
    });
    assert!(Recipe::from_value(&checks_alone).is_err());
    let unknown = json!({"version": "cubic-jordan.recipe/1", "field": "GF(5)", "construction": {"her3": "zorn"}, "extra": 1});
    assert!(Recipe::from_value(&unknown).is_err());
    assert!(Recipe::parse("{not json").is_err());
}

#[test]
fn composition_alias() {
    let r = run(json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(3)",
        "construction": {"her3": {"comp": "split-quaternion", "gamma": [1, 2, 1]}},
        "checks": ["cns-axioms", "nonsingular"]
    }));
    assert_eq!(r.status, Status::Pass, "{}", r.to_pretty());
    assert_eq!(r.value["construction"]["dim"], json!(15));
}

#[test]
fn zero_gamma_is_a_recipe_error() {
    let r = run(json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(5)",
        "construction": {"her3": {"composition": "zorn", "gamma": [1, 0, 1]}},
        "checks": ["nonsingular"]
    }));
    assert_eq!(r.status, Status::RecipeError);
    assert_eq!(r.value["exit_code"], json!(2));
    assert!(r.value["first_failure"].is_string());
}

#[test]
fn budget_exceeded_maps_to_exit_3() {
    let r = run(json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(17)",
        "search": {"kind": "norm-membership", "E": "split", "L": "split", "w": [1, 1, 1]}
    }));
    assert_eq!(r.status, Status::BudgetExceeded);
    assert_eq!(r.value["exit_code"], json!(3));
}

#[test]
fn status_mapping() {
    let cases = [
        (Error::BudgetExceeded("x".into()), 3),
        (Error::TooLarge("x".into()), 3),
        (Error::Inconsistent("x".into()), 1),
        (Error::AxiomFailure("x".into()), 1),
        (Error::InvalidGamma, 2),
        (Error::InvalidInput("x".into()), 2),
        (Error::PreconditionViolation("x".into()), 2),
    ];
    for (e, code) in cases {
        assert_eq!(Status::of_error(&e).exit_code(), code, "{e}");
    }
    for s in [Status::Pass, Status::Fail, Status::RecipeError, Status::BudgetExceeded] {
        assert_eq!(Status::parse(s.as_str()), Some(s));
    }
}

#[test]
fn wrong_part_is_a_recipe_error() {
    let r = recipe(json!({"version": "cubic-jordan.recipe/1", "field": "GF(5)", "construction": {"her3": "zorn"}}));
    assert_eq!(run_recipe(&r, &RunOptions::default(), Part::Search).status, Status::RecipeError);
}

#[test]
fn reports_are_deterministic_and_verifiable() {
    let v = json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(2)",
        "construction": {"etale_tits": {"E": "x^3+x+1", "L": "x^2+x+1", "u": "1", "b": "1"}},
        "checks": ["cns-axioms", "trace-formula", "initial-summand"]
    });
    let a = run(v.clone());
    let b = run(v);
    assert_eq!(a.status, Status::Pass, "{}", a.to_pretty());
    assert_eq!(a.deterministic(), b.deterministic());
    assert!(a.deterministic().get("timestamp").is_none());
    assert!(a.value["timestamp"]["timings_ms"].is_object());
    let out = verify_report(&a.value).unwrap();
    assert!(out.passed(), "{:?}", out.failures);
}

#[test]
fn verify_catches_a_forged_status() {
    let r = run(json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(2)",
        "search": {"kind": "norm-membership", "E": "x^3+x+1", "L": "x^2+x+1", "w": "t"}
    }));
    assert_eq!(r.status, Status::Pass, "{}", r.to_pretty());
    let mut forged = r.value.clone();
    let text = serde_json::to_string(&forged).unwrap();
    assert!(text.contains("witness"));
    forged["status"] = json!("fail");
    forged["exit_code"] = json!(1);
    assert!(!verify_report(&forged).unwrap().passed());
    let mut not_a_report = r.value.clone();
    not_a_report["version"] = json!("something else");
    assert!(verify_report(&not_a_report).is_err());
}

#[test]
fn spliet_over_q() {
    let r = run(json!({
        "version": "cubic-jordan.recipe/1", "field": "Q",
        "search": {"kind": "spliet", "u0": [0, 1, 2]}
    }));
    assert_eq!(r.status, Status::Pass, "{}", r.to_pretty());
    assert!(verify_report(&r.value).unwrap().passed());
}

#[test]
fn seed_in_recipe_overrides_options() {
    let r = run(json!({
        "version": "cubic-jordan.recipe/1", "field": "GF(5)",
        "construction": {"her3": "zorn"}, "checks": ["nonsingular"], "seed": 42
    }));
    assert_eq!(r.value["options"]["seed"], json!(42));
}
