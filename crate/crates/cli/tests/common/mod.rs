#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const EXAMPLES: &[&str] = &[
    "blockZ2",
    "blockZ3",
    "blockZ4",
    "blockZ5",
    "blockZ6",
    "blockZ7",
    "ns23",
    "ns25",
    "ns37",
    "pq-pattern",
    "single-gen-pq",
    "sym-pq",
];

pub fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn example(name: &str) -> PathBuf {
    examples_dir().join(format!("{name}.json"))
}

pub fn read_spec(name: &str) -> monarith::MonoidSpec {
    monarith::monoid::parse_spec(&std::fs::read_to_string(example(name)).unwrap()).unwrap()
}

/// One golden-file run: a name and the argument list.
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

fn target_for(name: &str) -> String {
    let spec = read_spec(name);
    if spec.dim() == 1 {
        "12".into()
    } else {
        vec!["2"; spec.dim()].join(",")
    }
}

pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for ex in EXAMPLES {
        let input = example(ex).display().to_string();
        let target = target_for(ex);
        let runs: Vec<(&str, Vec<String>)> = vec![
            ("atoms.txt", vec!["atoms".into()]),
            ("atoms.csv", vec!["atoms".into(), "--format".into(), "csv".into()]),
            (
                "factorize.json",
                vec![
                    "factorize".into(),
                    "--target".into(),
                    target.clone(),
                    "--format".into(),
                    "json".into(),
                ],
            ),
            ("lengths.txt", vec!["lengths".into(), "--target".into(), target.clone()]),
            ("delta.txt", vec!["delta".into(), "--budget".into(), "20000".into()]),
            ("elasticity.txt", vec!["elasticity".into()]),
            (
                "elasticity.json",
                vec!["elasticity".into(), "--format".into(), "json".into()],
            ),
            (
                "unions.csv",
                vec![
                    "unions".into(),
                    "--k".into(),
                    "1..6".into(),
                    "--budget".into(),
                    "200000".into(),
                    "--format".into(),
                    "csv".into(),
                ],
            ),
            ("class-table.txt", vec!["class-table".into()]),
            (
                "class-table.csv",
                vec![
                    "class-table".into(),
                    "--box".into(),
                    "8".into(),
                    "--probe".into(),
                    "8".into(),
                    "--format".into(),
                    "csv".into(),
                ],
            ),
            (
                "essential.json",
                vec![
                    "essential".into(),
                    "--box".into(),
                    "8".into(),
                    "--format".into(),
                    "json".into(),
                ],
            ),
            ("transfer.txt", vec!["transfer".into()]),
            (
                "report.csv",
                vec![
                    "report".into(),
                    "--box".into(),
                    "8".into(),
                    "--k".into(),
                    "2..8".into(),
                    "--budget".into(),
                    "200000".into(),
                    "--format".into(),
                    "csv".into(),
                ],
            ),
            (
                "report.txt",
                vec![
                    "report".into(),
                    "--box".into(),
                    "8".into(),
                    "--k".into(),
                    "2..8".into(),
                    "--budget".into(),
                    "200000".into(),
                ],
            ),
        ];
        for (suffix, mut args) in runs {
            args.extend(["--input".to_string(), input.clone()]);
            out.push(Case {
                name: format!("{ex}.{suffix}"),
                args,
            });
        }
    }
    for (name, args) in [
        ("aap-3578-d1.txt", vec!["aap", "--set", "3,5,7,8", "--d", "1"]),
        ("aap-024.json", vec!["aap", "--set", "0,2,4", "--format", "json"]),
        ("aap-7.txt", vec!["aap", "--set", "7"]),
    ] {
        out.push(Case {
            name: name.into(),
            args: args.into_iter().map(String::from).collect(),
        });
    }
    out
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Run {
    /// Stdout, followed by the exit status and stderr when the run did not succeed.
    pub fn transcript(&self) -> Vec<u8> {
        let mut out = self.stdout.clone();
        if self.code != 0 {
            out.extend(format!("[exit {}]\n{}", self.code, self.stderr).into_bytes());
        }
        out
    }
}

pub fn run(args: &[String], workers: Option<usize>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_monarith"));
    cmd.args(args);
    if let Some(w) = workers {
        cmd.args(["--workers".to_string(), w.to_string()]);
    }
    let out = cmd.output().expect("run monarith");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}
