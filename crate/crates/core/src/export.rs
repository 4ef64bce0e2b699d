//! JSON and DOT renderings. Every list is emitted in a fixed order so output
//! is byte-identical across runs.

use std::fmt::{Display, Write as _};

use serde_json::{json, Value};

use crate::chain::LinearOperator;
use crate::greechie::ProperPoset;
use crate::incidence;
use crate::poset::Poset;
use crate::scalar::Scalar;
use crate::simplicial::FacePoset;

/// Integers become JSON numbers; anything else is kept verbatim as a string.
pub fn coeff_json<T: Display>(c: &T) -> Value {
    let s = c.to_string();
    match s.parse::<i64>() {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(s),
    }
}

fn covers_json(poset: &Poset) -> Value {
    poset
        .cover_pairs()
        .map(|(p, q)| json!([poset.name(p), poset.name(q)]))
        .collect()
}

/// `{"elements": [name, …], "covers": [[lower, upper], …]}`.
pub fn poset_json(poset: &Poset) -> Value {
    json!({
        "elements": poset.elements(),
        "covers": covers_json(poset),
    })
}

/// Face poset with the vertex list and dimension of each simplex.
pub fn face_poset_json(fp: &FacePoset) -> Value {
    let poset = fp.poset();
    let vertices = fp.complex().vertices();
    let elements: Vec<Value> = (0..poset.len())
        .map(|ix| {
            let s = fp.simplex(ix);
            json!({
                "name": poset.name(ix),
                "vertices": s.iter().map(|&v| vertices[v].as_str()).collect::<Vec<_>>(),
                "dim": s.len() - 1,
            })
        })
        .collect();
    json!({
        "vertex_order": vertices,
        "elements": elements,
        "covers": covers_json(poset),
    })
}

/// Proper-element poset with every block representation of each element.
pub fn proper_poset_json(pp: &ProperPoset) -> Value {
    let poset = pp.poset();
    let atoms = pp.logic().atoms();
    let elements: Vec<Value> = pp
        .elements()
        .iter()
        .map(|e| {
            let reps: Vec<Value> = e
                .representations
                .iter()
                .map(|(b, s)| {
                    json!({
                        "block": b,
                        "atoms": s.iter().map(|&a| atoms[a].as_str()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "name": e.id, "representations": reps })
        })
        .collect();
    let blocks: Vec<Vec<&str>> = (0..pp.logic().blocks().len())
        .map(|i| pp.logic().block_atoms(i))
        .collect();
    json!({
        "atoms": atoms,
        "blocks": blocks,
        "elements": elements,
        "covers": covers_json(poset),
    })
}

/// Nonzero columns `{"element": p, "image": [{"element": s, "coeff": c}, …]}`.
pub fn operator_json<T: Scalar>(poset: &Poset, op: &LinearOperator<T>) -> Value {
    let columns: Vec<Value> = op
        .columns()
        .iter()
        .enumerate()
        .filter(|(_, col)| !col.is_zero())
        .map(|(p, col)| {
            let image: Vec<Value> = col
                .iter()
                .map(|(&s, c)| json!({ "element": poset.name(s), "coeff": coeff_json(c) }))
                .collect();
            json!({ "element": poset.name(p), "image": image })
        })
        .collect();
    json!({ "dimension": poset.len(), "columns": columns })
}

/// The incidence basis with grades (`null` when the poset is not
/// Jordan–Hölder).
pub fn omega_json(poset: &Poset) -> Value {
    let basis: Vec<Value> = incidence::basis(poset)
        .into_iter()
        .map(|b| {
            let grade = incidence::grade(poset, b).ok();
            json!({
                "ket": poset.name(b.ket),
                "bra": poset.name(b.bra),
                "grade": grade,
            })
        })
        .collect();
    json!({
        "jordan_holder": poset.is_jordan_holder(),
        "basis_size": basis.len(),
        "basis": basis,
    })
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in Graphviz DOT, edges pointing from lower to upper.
pub fn hasse_dot(poset: &Poset, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_quote(name));
    out.push_str("  rankdir=BT;\n");
    for e in poset.elements() {
        let _ = writeln!(out, "  {};", dot_quote(e.as_str()));
    }
    for (p, q) in poset.cover_pairs() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            dot_quote(poset.name(p).as_str()),
            dot_quote(poset.name(q).as_str())
        );
    }
    out.push_str("}\n");
    out
}
