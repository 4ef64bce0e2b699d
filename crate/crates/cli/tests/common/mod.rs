#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Every file in the corpus directory, by name.
pub fn corpus_inputs() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(workspace_root().join("corpus"))
        .expect("corpus directory")
        .map(|e| {
            e.expect("dir entry")
                .file_name()
                .into_string()
                .expect("utf-8 name")
        })
        .collect();
    names.sort();
    names
}

/// The invocations recorded for each corpus input, keyed by a short label.
pub fn invocations(input: &str) -> Vec<(&'static str, Vec<String>)> {
    let path = format!("corpus/{input}");
    let with = |args: &[&str]| -> Vec<String> {
        let mut v = vec![args[0].to_string(), path.clone()];
        v.extend(args[1..].iter().map(|s| s.to_string()));
        v
    };
    vec![
        ("validate", with(&["validate"])),
        ("validate.json", with(&["validate", "--format", "json"])),
        ("check", with(&["check"])),
        ("check.json", with(&["check", "--format", "json"])),
        ("poset.json", with(&["export", "--json", "poset"])),
        ("border.json", with(&["export", "--json", "border"])),
        ("omega.json", with(&["export", "--json", "omega"])),
        ("hasse.dot", with(&["export", "--dot", "hasse"])),
    ]
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Run {
    /// Exit code and both streams in one byte string.
    pub fn transcript(&self) -> Vec<u8> {
        let mut out = format!("exit: {}\n--- stdout\n", self.code).into_bytes();
        out.extend_from_slice(&self.stdout);
        out.extend_from_slice(b"--- stderr\n");
        out.extend_from_slice(&self.stderr);
        out
    }
}

pub fn run(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_inccalc"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("spawn inccalc");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

pub fn golden_path(input: &str, label: &str) -> PathBuf {
    golden_dir().join(format!("{input}.{label}"))
}
