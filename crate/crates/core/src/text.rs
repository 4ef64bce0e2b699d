//! Line-oriented input formats. `#` starts a comment; blank lines are
//! ignored.
//!
//! * posets: `element <name>` and `cover <lower> <upper>`, in any order;
//! * complexes: `vertex <name>` (declaration order is the sign order),
//!   `simplex <v> …` for generators, closed downward on load, and
//!   `face <v> …` for a simplex taken exactly as written;
//! * Greechie diagrams: `block <atom> <atom> …`;
//! * vertex orders: whitespace-separated names.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_poset(text: &str, cap: usize) -> Result<Poset> {
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for (line, words) in lines(text) {
        match words.as_slice() {
            ["element", name] => elements.push(name.to_string()),
            ["cover", lower, upper] => covers.push((lower.to_string(), upper.to_string())),
            ["element", ..] => return Err(parse_error(line, "expected `element <name>`")),
            ["cover", ..] => return Err(parse_error(line, "expected `cover <lower> <upper>`")),
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    Poset::from_covers_capped(elements, covers, cap)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut vertices: Vec<String> = Vec::new();
    let mut generators: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<String>> = Vec::new();
    for (line, words) in lines(text) {
        match words.as_slice() {
            ["vertex", name] => vertices.push(name.to_string()),
            ["vertex", ..] => return Err(parse_error(line, "expected `vertex <name>`")),
            ["simplex", rest @ ..] | ["face", rest @ ..] if rest.is_empty() => {
                return Err(parse_error(line, "empty simplex"))
            }
            ["simplex", rest @ ..] => generators.push(rest.iter().map(|s| s.to_string()).collect()),
            ["face", rest @ ..] => faces.push(rest.iter().map(|s| s.to_string()).collect()),
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    if vertices.is_empty() {
        let all: BTreeSet<&String> = generators.iter().chain(&faces).flatten().collect();
        vertices = all.into_iter().cloned().collect();
    }
    let closed = SimplicialComplex::close_downward(&vertices, &generators)?;
    if faces.is_empty() {
        return Ok(closed);
    }
    let mut family: Vec<Vec<String>> = closed
        .simplices()
        .map(|s| s.iter().map(|&v| vertices[v].clone()).collect())
        .collect();
    family.extend(faces);
    SimplicialComplex::new(&vertices, &family)
}

pub fn parse_greechie(text: &str) -> Result<Vec<Vec<String>>> {
    let mut blocks = Vec::new();
    for (line, words) in lines(text) {
        match words.as_slice() {
            ["block", atoms @ ..] if !atoms.is_empty() => {
                blocks.push(atoms.iter().map(|s| s.to_string()).collect())
            }
            ["block"] => return Err(parse_error(line, "block without atoms")),
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    Ok(blocks)
}

pub fn parse_vertex_order(text: &str) -> Vec<String> {
    lines(text)
        .flat_map(|(_, words)| words.into_iter().map(str::to_string))
        .collect()
}
