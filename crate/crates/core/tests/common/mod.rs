#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;

use zeroone::circuit::{Circuit, CircuitBuilder, GateId, GateKind, Literal};
use zeroone::logic::{Atom, Formula, Sentence, Vocabulary};
use zeroone::models::OrderedGraph;

pub const VARS: [&str; 8] = ["x", "y", "z", "u", "v", "w", "a1", "b_2"];

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn graph_fixtures() -> Vec<OrderedGraph> {
    (0..3)
        .map(|k| OrderedGraph::from_dump(&fixture(&format!("graph_m7_{k}.txt"))).unwrap())
        .collect()
}

fn var(pool: usize) -> impl Strategy<Value = String> {
    prop::sample::select(&VARS[..pool]).prop_map(str::to_string)
}

pub fn atom(vocabulary: Vocabulary, pool: usize) -> BoxedStrategy<Formula> {
    match vocabulary {
        Vocabulary::GraphOrder => prop_oneof![
            (var(pool), var(pool)).prop_map(|(a, b)| Formula::Atom(Atom::Eq(a, b))),
            (var(pool), var(pool)).prop_map(|(a, b)| Formula::Atom(Atom::Less(a, b))),
            (var(pool), var(pool)).prop_map(|(a, b)| Formula::Atom(Atom::Adj(a, b))),
        ]
        .boxed(),
        Vocabulary::BinaryFunction => prop_oneof![
            (var(pool), var(pool)).prop_map(|(a, b)| Formula::Atom(Atom::Eq(a, b))),
            (var(pool), var(pool), var(pool)).prop_map(|(a, b, c)| Formula::Atom(Atom::FEq(a, b, c))),
        ]
        .boxed(),
    }
}

/// Formulas of nesting depth at most `depth` over the first `pool` names.
pub fn formula(vocabulary: Vocabulary, pool: usize, depth: u32) -> BoxedStrategy<Formula> {
    atom(vocabulary, pool)
        .prop_recursive(depth, 48, 3, move |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
                (var(pool), inner.clone()).prop_map(|(v, b)| Formula::exists(v, b)),
                (var(pool), inner).prop_map(|(v, b)| Formula::forall(v, b)),
            ]
        })
        .boxed()
}

/// Closes a formula by binding its free variables, outermost first, with
/// quantifiers chosen by `universal`.
pub fn close(f: Formula, universal: &[bool]) -> Formula {
    let free: Vec<String> = f.free_vars().into_iter().collect();
    free.into_iter().enumerate().rev().fold(f, |body, (k, v)| {
        if universal[k % universal.len()] {
            Formula::forall(v, body)
        } else {
            Formula::exists(v, body)
        }
    })
}

pub fn sentence(vocabulary: Vocabulary, pool: usize, depth: u32) -> impl Strategy<Value = Sentence> {
    (formula(vocabulary, pool, depth), prop::collection::vec(any::<bool>(), 1..4))
        .prop_map(move |(f, q)| Sentence::new(close(f, &q), vocabulary).unwrap())
}

/// Unsimplified random NNF circuit: literals, occasional constants, then
/// `gates` AND/OR gates over 1..=4 earlier gates.
pub fn random_circuit<R: Rng>(m: usize, gates: usize, rng: &mut R) -> Circuit {
    let mut b = CircuitBuilder::new(m);
    let mut pool: Vec<GateId> = (0..m)
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .filter(|_| rng.gen_bool(0.8))
        .map(|l| b.literal(l))
        .collect();
    if pool.is_empty() || rng.gen_bool(0.1) {
        pool.push(b.constant(rng.gen()));
    }
    for _ in 0..gates {
        let kind = if rng.gen() { GateKind::And } else { GateKind::Or };
        let kids: Vec<GateId> = (0..rng.gen_range(1..=4)).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        pool.push(b.node(kind, kids));
    }
    let out = *pool.last().unwrap();
    b.finish(out)
}

pub fn assignments(m: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << m).map(move |s| (0..m).map(|v| s >> v & 1 == 1).collect())
}

/// Pearson chi-square goodness-of-fit p-value of `observed` against cell
/// probabilities `expected` (which must sum to one).
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    assert_eq!(observed.len(), expected.len());
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = (observed.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

/// `C(n, k)` as a float, via exact integer arithmetic.
pub fn choose(n: usize, k: usize) -> f64 {
    zeroone::circuit::binomial(n as u64, k as u64) as f64
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn zeroone(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_zeroone"))
        .args(args)
        .output()
        .expect("spawn zeroone")
}

/// One cheap invocation per subcommand, all seeded.
pub fn cli_invocations() -> Vec<Vec<String>> {
    let graph = fixture_path("graph_m7_0.txt");
    let func = fixture_path("function_m5.txt");
    let tri = "exists x. exists y. exists z. x ~ y & y ~ z & x ~ z";
    let inv = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        inv(&["check", "--sentence", tri, "--model-file", &graph, "--subset", "1,2,5,7"]),
        inv(&["check", "--sentence", "forall x. exists y. F(x,y) = x", "--model", "func", "--model-file", &func]),
        inv(&["compile", "--sentence", tri, "--model-file", &graph, "--levelled"]),
        inv(&["prob", "--sentence", tri, "--m", "9", "--i", "4", "--seed", "3", "--trials", "500"]),
        inv(&["prob", "--sentence", tri, "--model-file", &graph, "--i", "4", "--exact"]),
        inv(&["restrict", "--sentence", "forall x. exists y. x ~ y", "--m", "11", "--trials", "5", "--seed", "9"]),
        inv(&["couple", "--sentence", "exists x. exists y. x ~ y", "--n", "3", "--trials", "60", "--seed", "4"]),
        inv(&[
            "couple", "--sentence", "forall x. F(x,x) = x", "--model", "func", "--n", "3", "--trials", "40",
            "--mode", "mc", "--subset-trials", "20", "--seed", "5",
        ]),
        inv(&["scan", "--sentence", tri, "--n-min", "3", "--n-max", "7", "--n-step", "2", "--trials", "300", "--seed", "6"]),
    ]
}
