//! Recipe documents. Unknown keys are rejected during deserialization.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const RECIPE_VERSION: &str = "cubic-jordan.recipe/1";

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    pub version: String,
    pub field: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<Search>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupOp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    CnsAxioms,
    JordanAxioms,
    FundamentalFormula,
    Nonsingular,
    TraceFormula,
    InitialSummand,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::CnsAxioms => "cns-axioms",
            CheckKind::JordanAxioms => "jordan-axioms",
            CheckKind::FundamentalFormula => "fundamental-formula",
            CheckKind::Nonsingular => "nonsingular",
            CheckKind::TraceFormula => "trace-formula",
            CheckKind::InitialSummand => "initial-summand",
        }
    }
}

/// A composition algebra: a preset name or `{"cayley_dickson": ...}` data.
pub type CompositionSpec = Value;

/// `"split"`, a polynomial string such as `"x^3+x+1"`, or `{"poly": [c0, c1, c2]}`.
pub type EtaleSpec = Value;

/// Coordinates, or an expression in the generator (`t` for F[t]/(f),
/// `e1`, `e2`, `e3` for split E, `s` for L).
pub type ElemSpec = Value;

/// `"zorn"` is shorthand for `{"composition": "zorn"}` with Γ = 1.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Her3Spec {
    Preset(String),
    Full(Her3Full),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Her3Full {
    #[serde(alias = "comp")]
    pub composition: CompositionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Value>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AssocSpec {
    Mat3,
    Etale(EtaleSpec),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EtalePair {
    #[serde(rename = "E")]
    pub e: EtaleSpec,
    #[serde(rename = "L")]
    pub l: EtaleSpec,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DatumSpec {
    Etale(EtalePair),
    Mat3Unitary {
        #[serde(rename = "L")]
        l: EtaleSpec,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Her3(Her3Spec),
    FirstTits {
        algebra: AssocSpec,
        mu: Value,
    },
    SecondTits {
        datum: DatumSpec,
        u: Vec<Value>,
        mu: ElemSpec,
    },
    EtaleTits {
        #[serde(rename = "E")]
        e: EtaleSpec,
        #[serde(rename = "L")]
        l: EtaleSpec,
        u: ElemSpec,
        b: ElemSpec,
    },
    Aplus {
        algebra: AssocSpec,
    },
    HBTau {
        datum: DatumSpec,
    },
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::Her3(_) => "her3",
            Construction::FirstTits { .. } => "first_tits",
            Construction::SecondTits { .. } => "second_tits",
            Construction::EtaleTits { .. } => "etale_tits",
            Construction::Aplus { .. } => "aplus",
            Construction::HBTau { .. } => "h_b_tau",
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Builder {
    Setis,
    Unet,
    Imcri,
    Iscri,
}

impl Builder {
    pub fn as_str(&self) -> &'static str {
        match self {
            Builder::Setis => "setis",
            Builder::Unet => "unet",
            Builder::Imcri => "imcri",
            Builder::Iscri => "iscri",
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Search {
    NormMembership {
        #[serde(rename = "E")]
        e: EtaleSpec,
        #[serde(rename = "L")]
        l: EtaleSpec,
        w: ElemSpec,
    },
    /// Without `y`, every y ∈ (E⊗L)ˣ with n_L(N_E(y)) = 1 is handled.
    Nornor {
        #[serde(rename = "E")]
        e: EtaleSpec,
        #[serde(rename = "L")]
        l: EtaleSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y: Option<Vec<Value>>,
    },
    Extri {
        #[serde(rename = "E")]
        e: EtaleSpec,
        #[serde(rename = "L")]
        l: EtaleSpec,
    },
    Etfim {
        #[serde(rename = "E")]
        e: EtaleSpec,
        alpha: Value,
        alpha2: Value,
    },
    #[serde(alias = "spliet-alpha")]
    Spliet {
        u0: ElemSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limit: Option<u64>,
    },
    Sweep {
        #[serde(rename = "E")]
        e: EtaleSpec,
        #[serde(rename = "L")]
        l: EtaleSpec,
        builders: Vec<Builder>,
    },
    /// The initial-summand embedding i: E → J(E, L, u, b) against i ∘ R_w,
    /// related through `matrix` (the identity when absent).
    WeakEquivalence {
        #[serde(rename = "E")]
        e: EtaleSpec,
        #[serde(rename = "L")]
        l: EtaleSpec,
        u: ElemSpec,
        b: ElemSpec,
        w: ElemSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Value>,
    },
}

impl Search {
    pub fn name(&self) -> &'static str {
        match self {
            Search::NormMembership { .. } => "norm-membership",
            Search::Nornor { .. } => "nornor",
            Search::Extri { .. } => "extri",
            Search::Etfim { .. } => "etfim",
            Search::Spliet { .. } => "spliet",
            Search::Sweep { .. } => "sweep",
            Search::WeakEquivalence { .. } => "weak-equivalence",
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Sym3Spec {
    #[serde(default = "default_composition")]
    pub composition: CompositionSpec,
    /// Images of 1, 2, 3.
    pub sigma: [usize; 3],
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct UwSpec {
    #[serde(default = "default_composition")]
    pub composition: CompositionSpec,
    pub w: Vec<Value>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OuterSpec {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Value>>,
    /// `"transpose"` or a d²×d² matrix on row-major coordinates.
    #[serde(default = "default_psi")]
    pub psi: Value,
}

fn default_composition() -> Value {
    Value::String("zorn".into())
}

fn default_psi() -> Value {
    Value::String("transpose".into())
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupOp {
    Sym3(Sym3Spec),
    Uw(UwSpec),
    OuterCheck(OuterSpec),
}

impl GroupOp {
    pub fn name(&self) -> &'static str {
        match self {
            GroupOp::Sym3(_) => "sym3",
            GroupOp::Uw(_) => "uw",
            GroupOp::OuterCheck(_) => "outer-check",
        }
    }
}

impl Recipe {
    pub fn from_value(v: &Value) -> Result<Recipe> {
        let r: Recipe = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("recipe: {e}")))?;
        r.validate()?;
        Ok(r)
    }

    pub fn parse(s: &str) -> Result<Recipe> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("recipe is not JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != RECIPE_VERSION {
            return Err(Error::InvalidInput(format!("unsupported recipe version '{}', expected '{RECIPE_VERSION}'", self.version)));
        }
        let clauses = [self.construction.is_some(), self.search.is_some(), self.group.is_some()];
        if clauses.iter().filter(|c| **c).count() != 1 {
            return Err(Error::InvalidInput("a recipe needs exactly one of construction, search, group".into()));
        }
        if !self.checks.is_empty() && self.construction.is_none() {
            return Err(Error::InvalidInput("checks need a construction".into()));
        }
        Ok(())
    }
}
