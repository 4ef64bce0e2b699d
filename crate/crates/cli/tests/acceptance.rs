//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

mod common;

use std::collections::HashMap;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use incidence_calculus::incidence::{basis, grade};
use incidence_calculus::text::{parse_complex, parse_greechie, parse_poset};
use incidence_calculus::{
    BasisPair, Error, GreechieLogic, IntElement, IntOperator, IntStructure, Poset,
    SimplicialComplex, DEFAULT_ELEMENT_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TIME_BUDGET: Duration = Duration::from_secs(10);
const SAMPLED_COMPLEXES: usize = 240;
const GREECHIE: &[&str] = &[
    "single_2",
    "single_3",
    "single_4",
    "single_5",
    "two_blocks",
    "chain3",
    "loop4",
    "loop5",
    "wide_pair",
];
const COMPLEXES: &[&str] = &["triangle", "tetrahedron", "mixed"];
const POSETS: &[&str] = &["diamond", "skewed"];

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.pass = false;
        self.notes.push(note.into());
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.fail(note());
        }
    }
}

fn corpus_text(file: &str) -> String {
    fs::read_to_string(common::workspace_root().join("corpus").join(file)).expect("corpus file")
}

fn logic(name: &str) -> GreechieLogic {
    GreechieLogic::validate_logic(parse_greechie(&corpus_text(&format!("{name}.gdl"))).unwrap())
        .unwrap()
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

fn full_simplex(n: usize) -> SimplicialComplex {
    let names = vertex_names(n);
    SimplicialComplex::close_downward(&names, [&names]).unwrap()
}

fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.gen_range(1..=6);
    let names = vertex_names(n);
    let gens: Vec<Vec<String>> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mask = rng.gen_range(1u32..(1 << n));
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| names[i].clone())
                .collect()
        })
        .collect();
    SimplicialComplex::close_downward(&names, &gens).unwrap()
}

/// Every structure with a border: (label, poset, border).
fn bordered_corpus() -> Vec<(String, Poset, IntOperator)> {
    let mut out = Vec::new();
    for name in GREECHIE {
        let pp = logic(name).proper_poset().unwrap();
        out.push((name.to_string(), pp.poset().clone(), pp.border()));
    }
    for name in COMPLEXES {
        let fp = parse_complex(&corpus_text(&format!("{name}.cx")))
            .unwrap()
            .face_poset()
            .unwrap();
        out.push((name.to_string(), fp.poset().clone(), fp.border()));
    }
    for n in 1..=6 {
        let fp = full_simplex(n).face_poset().unwrap();
        out.push((
            format!("{}-simplex", n - 1),
            fp.poset().clone(),
            fp.border(),
        ));
    }
    out
}

fn certify(out: &mut Outcome, label: &str, poset: &Poset, border: IntOperator) {
    match IntStructure::new(poset, border) {
        Ok(s) => {
            let report = s.verify();
            out.check(report.all_pass(), || {
                format!("{label}: {:?}", report.counterexamples.first())
            });
        }
        Err(e) => out.fail(format!("{label}: {e}")),
    }
}

fn simplicial_family() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51_3D1C);
    for i in 0..SAMPLED_COMPLEXES {
        let fp = random_complex(&mut rng).face_poset().unwrap();
        certify(&mut out, &format!("sample {i}"), fp.poset(), fp.border());
    }
    for n in 1..=6 {
        let fp = full_simplex(n).face_poset().unwrap();
        certify(
            &mut out,
            &format!("{}-simplex", n - 1),
            fp.poset(),
            fp.border(),
        );
    }
    let elapsed = start.elapsed();
    out.check(elapsed < TIME_BUDGET, || format!("took {elapsed:?}"));
    out.note(format!(
        "{SAMPLED_COMPLEXES} sampled + 6 full simplices in {elapsed:.2?}"
    ));
    out
}

fn greechie_family() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for name in GREECHIE {
        let pp = logic(name).proper_poset().unwrap();
        certify(&mut out, name, pp.poset(), pp.border());
    }
    let elapsed = start.elapsed();
    out.check(elapsed < TIME_BUDGET, || format!("took {elapsed:?}"));
    out.note(format!("{} logics in {elapsed:.2?}", GREECHIE.len()));
    out
}

fn degree_cross_validation() -> Outcome {
    let mut out = Outcome::new();
    for name in GREECHIE {
        let pp = logic(name).proper_poset().unwrap();
        let p = pp.poset();
        out.check(p.is_jordan_holder(), || {
            format!("{name}: not Jordan-Hölder")
        });
        for a in 0..p.len() {
            for b in 0..p.len() {
                if !p.leq_ix(a, b) {
                    continue;
                }
                let block = pp.block_degree(a, b).unwrap();
                let chain = p.chain_degree_ix(a, b).unwrap();
                out.check(block == chain, || {
                    format!(
                        "{name}: {} ≤ {}: block {block}, chain {chain}",
                        p.name(a),
                        p.name(b)
                    )
                });
            }
        }
    }
    out
}

fn worked_example() -> Outcome {
    let mut out = Outcome::new();
    let pp = logic("two_blocks").proper_poset().unwrap();
    let p = pp.poset();
    let names: Vec<&str> = p.elements().iter().map(|e| e.as_str()).collect();
    let want = ["a", "a∨c", "b", "b∨c", "c", "c'", "c∨d", "c∨e", "d", "e"];
    out.check(names == want, || format!("elements {names:?}"));
    for e in pp.elements() {
        let n = pp.preimages(p.index_of(e.id.as_str()).unwrap()).len();
        let expected = if e.id.as_str() == "c'" { 2 } else { 1 };
        out.check(n == expected, || format!("{} has {n} preimages", e.id));
    }
    let d = pp.border::<i64>();
    let c = p.index_of("c'").unwrap();
    let dc: Vec<(&str, i64)> = d
        .column(c)
        .iter()
        .map(|(&i, &v)| (p.name(i).as_str(), v))
        .collect();
    let want_dc = [("a", -1), ("b", 1), ("d", -1), ("e", 1)];
    out.check(dc == want_dc, || format!("d|c'⟩ = {dc:?}"));
    let s = IntStructure::new(p, d).unwrap();
    let da = s.cartan_d_pair(BasisPair::new(p, "a", "a").unwrap());
    let want_da = IntElement::from_terms(p, [("a", "a∨c", 1), ("a", "c'", 1)]).unwrap();
    out.check(da == want_da, || format!("D(|a⟩⟨a|) = {}", da.display(p)));
    out
}

/// Products of basis pairs through the library, as a table of basis indices.
fn product_table(p: &Poset, b: &[BasisPair], out: &mut Outcome, label: &str) -> Vec<u32> {
    const ZERO: u32 = u32::MAX;
    let index: HashMap<BasisPair, u32> =
        b.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let elems: Vec<IntElement> = b.iter().map(|&x| IntElement::from_pair(p, x)).collect();
    let mut table = vec![ZERO; b.len() * b.len()];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let xy = x.multiply(y).unwrap();
            // Oracle: |p⟩⟨q| |r⟩⟨s| = δ_qr |p⟩⟨s|.
            let want = (b[i].bra == b[j].ket).then(|| BasisPair {
                ket: b[i].ket,
                bra: b[j].bra,
            });
            let got: Vec<(BasisPair, i64)> = xy.terms().map(|(k, &v)| (k, v)).collect();
            match want {
                None if got.is_empty() => {}
                Some(w) if got == [(w, 1)] => table[i * b.len() + j] = index[&w],
                _ => out.fail(format!("{label}: product of basis {i} and {j} is {got:?}")),
            }
        }
    }
    table
}

fn algebra_laws() -> Outcome {
    const ZERO: u32 = u32::MAX;
    let mut out = Outcome::new();
    let mut posets: Vec<(String, Poset)> = bordered_corpus()
        .into_iter()
        .map(|(name, p, _)| (name, p))
        .collect();
    for name in POSETS {
        let p = parse_poset(&corpus_text(&format!("{name}.poset")), DEFAULT_ELEMENT_CAP).unwrap();
        posets.push((name.to_string(), p));
    }
    let mut triples = 0usize;
    for (label, p) in posets.iter().filter(|(_, p)| p.len() <= 64) {
        let b = basis(p);
        let n = b.len();
        let t = product_table(p, &b, &mut out, label);
        let mul = |i: u32, j: u32| {
            if i == ZERO || j == ZERO {
                ZERO
            } else {
                t[i as usize * n + j as usize]
            }
        };
        for i in 0..n as u32 {
            for j in 0..n as u32 {
                let ij = mul(i, j);
                for k in 0..n as u32 {
                    if mul(ij, k) != mul(i, mul(j, k)) {
                        out.fail(format!("{label}: associativity at basis ({i},{j},{k})"));
                    }
                }
            }
        }
        triples += n * n * n;
        let scalars: Vec<u32> = (0..n as u32)
            .filter(|&i| b[i as usize].is_diagonal())
            .collect();
        for &a in &scalars {
            for w in (0..n as u32).filter(|&i| !b[i as usize].is_diagonal()) {
                for &c in &scalars {
                    if mul(mul(a, w), c) != mul(a, mul(w, c)) {
                        out.fail(format!("{label}: bimodule at basis ({a},{w},{c})"));
                    }
                }
            }
        }
        if p.is_jordan_holder() {
            for i in 0..n {
                for j in 0..n {
                    let k = t[i * n + j];
                    if k != ZERO {
                        let g = |x: usize| grade(p, b[x]).unwrap();
                        out.check(g(k as usize) == g(i) + g(j), || {
                            format!("{label}: grade of product {i}·{j}")
                        });
                    }
                }
            }
        }
    }
    out.note(format!("{} posets, {triples} basis triples", posets.len()));
    out
}

/// Flip each nonzero border entry in turn and record whether `verify` flags it.
fn mutation_runs() -> Vec<(String, Vec<(bool, bool)>)> {
    bordered_corpus()
        .into_iter()
        .map(|(label, p, d)| {
            let mut flips = Vec::new();
            for col in 0..p.len() {
                for &row in d.column(col).keys() {
                    // The entry composes with another: col has a coface or row has a face.
                    let composable = !d.row(col).is_empty() || !d.column(row).is_empty();
                    let mutated = d.with_negated_entry(col, row).unwrap();
                    let report = IntStructure::new(&p, mutated).unwrap().verify();
                    let detected = !report.axioms_pass() && !report.counterexamples.is_empty();
                    flips.push((detected, composable));
                }
            }
            (label, flips)
        })
        .collect()
}

fn mutation_sensitivity(runs: &[(String, Vec<(bool, bool)>)]) -> Outcome {
    let mut out = Outcome::new();
    for (label, flips) in runs.iter().filter(|(_, f)| !f.is_empty()) {
        let caught = flips.iter().filter(|(d, _)| *d).count();
        out.check(caught > 0, || {
            format!(
                "{label}: none of {} single-entry sign flips detected",
                flips.len()
            )
        });
    }
    out
}

fn mutation_characterization(runs: &[(String, Vec<(bool, bool)>)]) -> Outcome {
    let mut out = Outcome::new();
    let mut total = 0;
    for (label, flips) in runs {
        let wrong = flips.iter().filter(|(d, c)| d != c).count();
        out.check(wrong == 0, || format!("{label}: {wrong} flips disagree"));
        total += flips.len();
    }
    out.note(format!(
        "{total} flips: detected exactly when the entry composes with another border entry"
    ));
    out
}

fn validation_diagnostics() -> Outcome {
    let mut out = Outcome::new();
    match GreechieLogic::validate_logic(parse_greechie(&corpus_text("bad.gdl")).unwrap()) {
        Err(Error::PastingViolation {
            first,
            second,
            shared,
        }) => out.check((first, second) == (0, 1) && shared == ["a", "b"], || {
            format!("blocks {first},{second} share {shared:?}")
        }),
        other => out.fail(format!("bad.gdl: {other:?}")),
    }
    match parse_complex(&corpus_text("missing_face.cx")).and_then(|c| c.face_poset()) {
        Err(Error::MissingFace(face)) => out.check(face == "{a,b}", || format!("face {face}")),
        other => out.fail(format!(
            "missing_face.cx: {:?}",
            other.map(|fp| fp.poset().len())
        )),
    }
    for (file, key) in [("bad.gdl", "shared_atoms"), ("missing_face.cx", "face")] {
        let run = common::run(&[
            "validate".into(),
            format!("corpus/{file}"),
            "--format".into(),
            "json".into(),
        ]);
        let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap_or_default();
        out.check(run.code == 2 && !v["error"][key].is_null(), || {
            format!("{file}: exit {} output {v}", run.code)
        });
    }
    out
}

fn cli_determinism() -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0;
    for input in common::corpus_inputs() {
        for (label, args) in common::invocations(&input) {
            let first = common::run(&args).transcript();
            let second = common::run(&args).transcript();
            out.check(first == second, || format!("{input} {label}: runs differ"));
            let golden = fs::read(common::golden_path(&input, label)).unwrap_or_default();
            out.check(first == golden, || {
                format!("{input} {label}: golden differs")
            });
            count += 1;
        }
    }
    out.note(format!("{count} invocations"));
    out
}

fn main() -> ExitCode {
    let runs = mutation_runs();
    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "simplicial family certifies all axioms",
            simplicial_family(),
        ),
        ("Greechie corpus certifies all axioms", greechie_family()),
        (
            "block degree equals chain degree",
            degree_cross_validation(),
        ),
        ("worked pasted example golden values", worked_example()),
        (
            "algebra associativity, bimodule and grading laws",
            algebra_laws(),
        ),
        (
            "each bordered structure catches some sign flip",
            mutation_sensitivity(&runs),
        ),
        (
            "sign flip detected iff the entry composes in d²",
            mutation_characterization(&runs),
        ),
        (
            "invalid inputs named in diagnostics",
            validation_diagnostics(),
        ),
        ("CLI output deterministic and golden", cli_determinism()),
    ];
    let mut failed = 0;
    for (name, outcome) in &criteria {
        println!("[{}] {name}", if outcome.pass { "PASS" } else { "FAIL" });
        for note in &outcome.notes {
            println!("       {note}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
