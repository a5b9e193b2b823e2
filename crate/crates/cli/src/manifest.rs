use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Command, Opts};

#[derive(Serialize)]
pub struct Bounds {
    #[serde(rename = "box")]
    search_box: u32,
    probe: u32,
    k: [u32; 2],
    budget: usize,
    power_bound: u32,
    d: Option<u32>,
    set: Option<Vec<i64>>,
    target: Option<Vec<u32>>,
    workers: Option<usize>,
}

/// Everything needed to reproduce a result file.
#[derive(Serialize)]
pub struct RunManifest {
    input_sha256: Option<String>,
    schema: u32,
    operation: &'static str,
    bounds: Bounds,
    tool_version: &'static str,
    wall_time_ms: u128,
}

impl RunManifest {
    pub fn new(command: Command, opts: &Opts, input: Option<&str>, elapsed: Duration) -> Self {
        RunManifest {
            input_sha256: input.map(|s| hex::encode(Sha256::digest(s.as_bytes()))),
            schema: monarith::monoid::SCHEMA_VERSION,
            operation: command.name(),
            bounds: Bounds {
                search_box: opts.search_box,
                probe: opts.probe,
                k: [opts.k.0, opts.k.1],
                budget: opts.budget,
                power_bound: opts.power_bound,
                d: opts.d,
                set: opts.set.clone(),
                target: opts.target.clone(),
                workers: opts.workers,
            },
            tool_version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: elapsed.as_millis(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialization");
        s.push('\n');
        s
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
