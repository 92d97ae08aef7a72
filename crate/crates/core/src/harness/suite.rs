//! Fixed sentence batteries used by the experiments and tests.

use crate::logic::{parse_sentence, Sentence, Vocabulary};

pub const GRAPH_SUITE: &[&str] = &[
    "exists x. x = x",
    "exists x. x < x",
    "forall x. exists y. x ~ y",
    "exists x. exists y. exists z. (x ~ y & y ~ z & x ~ z)",
    "exists x. forall y. (x = y | x ~ y)",
    "exists x. exists y. (x < y & !x ~ y)",
    "forall x. ((exists y. x < y) -> exists y. (x < y & x ~ y))",
    "exists x. ((forall y. !y < x) & exists z. x ~ z)",
    "forall x. forall y. (x ~ y -> exists z. (z ~ x & z ~ y))",
    "exists x. exists y. (x < y & x ~ y & forall z. ((x < z & z < y) -> !z ~ x))",
    "!(exists x. forall y. (x = y | x ~ y)) -> exists x. x = x",
    "forall x. exists y. (x = y | (y < x & !x ~ y) | (x < y & x ~ y))",
];

pub const FUNCTION_SUITE: &[&str] = &[
    "exists x. x = x",
    "forall x. exists y. F(x,y) = x",
    "forall x. F(x,x) = x",
    "exists x. F(x,x) = x",
    "forall x. forall y. exists z. F(x,z) = y",
    "exists x. exists y. (F(x,y) = x & F(y,x) = y & !x = y)",
    "forall x. exists y. F(y,y) = x",
    "exists x. forall y. (F(x,y) = y | F(y,x) = y)",
];

pub fn graph_suite() -> Vec<Sentence> {
    parse_all(GRAPH_SUITE, Vocabulary::GraphOrder)
}

pub fn function_suite() -> Vec<Sentence> {
    parse_all(FUNCTION_SUITE, Vocabulary::BinaryFunction)
}

fn parse_all(texts: &[&str], v: Vocabulary) -> Vec<Sentence> {
    texts
        .iter()
        .map(|t| parse_sentence(t, v).unwrap_or_else(|e| panic!("suite sentence `{t}`: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        assert!(graph_suite().len() >= 10);
        assert!(function_suite().len() >= 5);
        assert!(graph_suite().iter().all(|s| s.depth() <= 3));
    }
}
