//! The versioned JSON input schema (`"schema": 1`).
//!
//! ```text
//! {"schema":1,"kind":"numerical","generators":[2,3]}
//! {"schema":1,"kind":"generators","primes":["p","q"],"gens":[[1,1]]}
//! {"schema":1,"kind":"block","cyclic_orders":[3],"subset":[[1],[2]]}
//! {"schema":1,"kind":"periodic","primes":["p","q"],"alpha":1,"modulus":1,
//!  "accept":[[[0,0],[0,0]],[[1,0],[1,0]],...]}
//! ```
//!
//! `schema` may be omitted on input and defaults to 1. Block elements of a
//! cyclic group may be written as bare integers. Output is always the
//! canonical form with `schema` present and residues as arrays.

use serde::{Deserialize, Serialize};

use super::spec::{BlockSpec, GeneratorSpec, NumericalSpec, PeriodicSpec, Profile};
use super::{ExponentVector, MonoidSpec};
use crate::error::SpecError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupElement {
    Scalar(u32),
    Residues(Vec<u32>),
}

#[derive(Deserialize)]
struct RawNumerical {
    schema: Option<u32>,
    generators: Vec<u32>,
}

#[derive(Deserialize)]
struct RawGenerators {
    schema: Option<u32>,
    primes: Vec<String>,
    gens: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawBlock {
    schema: Option<u32>,
    cyclic_orders: Vec<u32>,
    subset: Vec<GroupElement>,
}

#[derive(Deserialize)]
struct RawPeriodic {
    schema: Option<u32>,
    primes: Vec<String>,
    alpha: u32,
    modulus: u32,
    accept: Vec<Vec<(u32, u32)>>,
}

fn decode<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, SpecError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        SpecError::new(path, e.into_inner().to_string())
    })
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum OutSpec<'a> {
    Numerical {
        schema: u32,
        generators: &'a [u32],
    },
    Generators {
        schema: u32,
        primes: &'a [String],
        gens: &'a [ExponentVector],
    },
    Block {
        schema: u32,
        cyclic_orders: &'a [u32],
        subset: &'a [Vec<u32>],
    },
    Periodic {
        schema: u32,
        primes: &'a [String],
        alpha: u32,
        modulus: u32,
        accept: Vec<&'a Profile>,
    },
}

fn check_schema(schema: Option<u32>) -> Result<(), SpecError> {
    match schema {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(SpecError::new(
            "schema",
            format!("unsupported schema version {v}, expected {SCHEMA_VERSION}"),
        )),
    }
}

/// Parses and validates a JSON presentation.
pub fn parse_spec(document: &str) -> Result<MonoidSpec, SpecError> {
    let value: serde_json::Value = serde_json::from_str(document).map_err(|e| SpecError::new(".", e.to_string()))?;
    if !value.is_object() {
        return Err(SpecError::new(".", "expected a JSON object"));
    }
    let kind = match value.get("kind") {
        Some(serde_json::Value::String(k)) => k.clone(),
        Some(_) => return Err(SpecError::new("kind", "expected a string")),
        None => return Err(SpecError::new("kind", "missing field")),
    };
    match kind.as_str() {
        "numerical" => {
            let raw: RawNumerical = decode(value)?;
            check_schema(raw.schema)?;
            NumericalSpec::new(&raw.generators).map(MonoidSpec::Numerical)
        }
        "generators" => {
            let raw: RawGenerators = decode(value)?;
            check_schema(raw.schema)?;
            GeneratorSpec::new(raw.primes, raw.gens.into_iter().map(ExponentVector::new).collect())
                .map(MonoidSpec::Generators)
        }
        "block" => {
            let raw: RawBlock = decode(value)?;
            check_schema(raw.schema)?;
            let subset = raw
                .subset
                .into_iter()
                .map(|g| match g {
                    GroupElement::Scalar(r) => vec![r],
                    GroupElement::Residues(v) => v,
                })
                .collect();
            BlockSpec::new(raw.cyclic_orders, subset).map(MonoidSpec::Block)
        }
        "periodic" => {
            let raw: RawPeriodic = decode(value)?;
            check_schema(raw.schema)?;
            PeriodicSpec::new(raw.primes, raw.alpha, raw.modulus, raw.accept).map(MonoidSpec::Periodic)
        }
        other => Err(SpecError::new(
            "kind",
            format!("unknown kind `{other}`, expected numerical, generators, block or periodic"),
        )),
    }
}

impl MonoidSpec {
    /// Canonical JSON form; `parse_spec` inverts it.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.out()).expect("spec serialization")
    }

    /// Canonical JSON text with fields in schema order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.out()).expect("spec serialization")
    }

    fn out(&self) -> OutSpec<'_> {
        match self {
            MonoidSpec::Numerical(n) => OutSpec::Numerical {
                schema: SCHEMA_VERSION,
                generators: n.generators(),
            },
            MonoidSpec::Generators(g) => OutSpec::Generators {
                schema: SCHEMA_VERSION,
                primes: g.primes(),
                gens: g.gens(),
            },
            MonoidSpec::Block(b) => OutSpec::Block {
                schema: SCHEMA_VERSION,
                cyclic_orders: b.cyclic_orders(),
                subset: b.subset(),
            },
            MonoidSpec::Periodic(p) => OutSpec::Periodic {
                schema: SCHEMA_VERSION,
                primes: p.primes(),
                alpha: p.alpha(),
                modulus: p.modulus(),
                accept: p.accept().iter().collect(),
            },
        }
    }
}
