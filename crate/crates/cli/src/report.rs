use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use contig_core::distance::DistanceResult;
use contig_core::maps::SimplicialMap;
use contig_core::verify::VerifyReport;
use contig_core::Error;

use crate::GlobalArgs;

/// The run report. With `--deterministic`, identical inputs and flags yield
/// byte-identical reports (timing is omitted). All numbers are integers.
#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub deterministic: bool,
    pub threads: usize,
    pub inputs: Vec<InputRecord>,
    pub lines: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<ResultPayload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub exit: u8,
}

#[derive(Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultPayload {
    Info {
        vertices: usize,
        facets: usize,
        dim: usize,
        connected: bool,
    },
    Core {
        core_vertices: usize,
        core_facets: usize,
        eliminations: usize,
    },
    Decision {
        answer: bool,
    },
    SameClass {
        same: Option<bool>,
        explored: usize,
    },
    Distance {
        value: usize,
        exact: bool,
        witness: Vec<Vec<usize>>,
        undecided: Vec<Vec<usize>>,
    },
    Verify(VerifyReport),
}

impl Report {
    pub fn new(global: &GlobalArgs) -> Self {
        Report {
            schema: 1,
            deterministic: global.deterministic,
            threads: global.threads.max(1),
            inputs: Vec::new(),
            lines: Vec::new(),
            result: None,
            error: None,
            elapsed_ms: None,
            exit: 0,
        }
    }

    pub fn record_input(&mut self, path: &Path) -> Result<(), Error> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(InputRecord {
            path: path.display().to_string(),
            sha256: hex,
        });
        Ok(())
    }
}

/// JSON form of a contiguity chain: one name-level assignment per step.
pub fn chain_json(chain: &[SimplicialMap]) -> serde_json::Value {
    let steps: Vec<BTreeMap<String, String>> = chain
        .iter()
        .map(|map| {
            map.assignment()
                .iter()
                .enumerate()
                .map(|(v, &w)| {
                    (
                        map.domain().name(v as u32).to_string(),
                        map.codomain().name(w).to_string(),
                    )
                })
                .collect()
        })
        .collect();
    serde_json::json!({ "schema": 1, "chain": steps })
}

/// JSON form of a distance witness: masks as facet-index arrays plus the
/// per-piece certificates.
pub fn witness_json(res: &DistanceResult) -> serde_json::Value {
    let certificates: Vec<serde_json::Value> = res
        .certificates
        .iter()
        .map(|c| {
            serde_json::json!({
                "facets": c.facets,
                "chain": chain_json(&c.chain)["chain"],
            })
        })
        .collect();
    serde_json::json!({
        "schema": 1,
        "value": res.value,
        "exact": res.exact,
        "witness": res.witness,
        "undecided": res.undecided,
        "certificates": certificates,
    })
}
