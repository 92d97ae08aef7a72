mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{assignments, random_circuit};
use zeroone::circuit::{
    apply_restriction, compile_function_sentence, compile_graph_sentence, exact_weight_probability,
    exact_weight_probability_restricted, mc_weight_probability, to_levelled, CircuitError,
};
use zeroone::logic::{desugar, parse_formula, Vocabulary};
use zeroone::models::{sample_graph, sample_ternary_function, OrderedGraph, Restriction, SubsetSelection};
use zeroone::rng::Stream;
use zeroone::semantics::{eval_function_sentence, eval_graph_sentence};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_restriction(m: usize, stars: f64, rng: &mut ChaCha8Rng) -> Restriction {
    Restriction::from_values(
        (0..m)
            .map(|_| if rng.gen_bool(stars) { None } else { Some(rng.gen()) })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(
        f in prop_oneof![
            common::formula(Vocabulary::GraphOrder, 8, 6),
            common::formula(Vocabulary::BinaryFunction, 8, 6),
        ]
    ) {
        let text = f.to_string();
        let back = parse_formula(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, f, "{}", text);
    }

    #[test]
    fn desugaring_keeps_depth_and_verdict(
        s in common::sentence(Vocabulary::GraphOrder, 3, 5),
        size in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let g = sample_graph(size, 0.5, &mut rng(seed));
        let d = s.desugared();
        prop_assert!(d.formula().is_desugared());
        prop_assert_eq!(desugar(s.formula()).quantifier_depth(), s.depth());
        prop_assert_eq!(eval_graph_sentence(&g, &s).unwrap(), eval_graph_sentence(&g, &d).unwrap());
    }

    #[test]
    fn graph_circuit_agrees_with_oracle(
        s in common::sentence(Vocabulary::GraphOrder, 3, 4),
        m in 1usize..=6,
        seed in any::<u64>(),
    ) {
        let g = sample_graph(m, 0.5, &mut rng(seed));
        let c = compile_graph_sentence(&g, &s).unwrap();
        for mask in 1..1u64 << m {
            let sub = SubsetSelection::from_mask(m, mask);
            let expected = eval_graph_sentence(&g.induced_substructure(&sub), &s).unwrap();
            prop_assert_eq!(c.eval(&sub.indicator()), expected, "mask {:b}", mask);
        }
    }

    #[test]
    fn function_circuit_agrees_with_oracle(
        s in common::sentence(Vocabulary::BinaryFunction, 3, 3),
        m in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let f = sample_ternary_function(m, &mut rng(seed));
        let c = compile_function_sentence(&f, &s).unwrap();
        for mask in 1..1u64 << m {
            let sub = SubsetSelection::from_mask(m, mask);
            if let Some(total) = f.project(&sub).to_total() {
                let expected = eval_function_sentence(&total, &s).unwrap();
                prop_assert_eq!(c.eval(&sub.indicator()), expected, "mask {:b}", mask);
            }
        }
    }

    #[test]
    fn restrictions_compose(m in 1usize..=12, gates in 1usize..40, seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_circuit(m, gates, &mut r);
        let first = random_restriction(m, 0.6, &mut r);
        let second = random_restriction(m, 0.5, &mut r);
        let merged = first.merge(&second);
        prop_assert!(merged.extends(&first));
        let twice = apply_restriction(&apply_restriction(&c, &first), &second);
        let once = apply_restriction(&c, &merged);
        for _ in 0..64 {
            let bits: Vec<bool> = (0..m).map(|v| merged.get(v).unwrap_or_else(|| r.gen())).collect();
            prop_assert_eq!(twice.eval(&bits), once.eval(&bits));
            prop_assert_eq!(once.eval(&bits), c.eval(&bits));
        }
        prop_assert!(once.support().iter().all(|&v| merged.get(v).is_none()));
    }

    #[test]
    fn extension_never_overwrites(m in 1usize..=16, seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = random_restriction(m, 0.5, &mut r);
        let later = random_restriction(m, 0.3, &mut r);
        let merged = base.merge(&later);
        for v in 0..m {
            if let Some(b) = base.get(v) {
                prop_assert_eq!(merged.get(v), Some(b));
            } else {
                prop_assert_eq!(merged.get(v), later.get(v));
            }
        }
    }

    #[test]
    fn levelling_preserves_weight_probabilities(m in 1usize..=10, gates in 1usize..30, seed in any::<u64>()) {
        let c = random_circuit(m, gates, &mut rng(seed));
        let lc = to_levelled(&c);
        prop_assert!(lc.validate().is_ok());
        prop_assert!(lc.depth() <= 2 * c.depth() + 1, "{} -> {}", c.depth(), lc.depth());
        for i in 0..=m {
            prop_assert_eq!(
                exact_weight_probability(lc.circuit(), i).unwrap(),
                exact_weight_probability(&c, i).unwrap()
            );
        }
    }

    #[test]
    fn restricted_probability_matches_enumeration(
        m in 1usize..=10,
        gates in 1usize..30,
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let c = random_circuit(m, gates, &mut r);
        let rho = random_restriction(m, 0.5, &mut r);
        for i in 0..=m {
            let (mut hits, mut total) = (0u64, 0u64);
            for bits in assignments(m) {
                let consistent = (0..m).all(|v| rho.get(v).is_none_or(|b| b == bits[v]));
                if consistent && bits.iter().filter(|b| **b).count() == i {
                    total += 1;
                    hits += c.eval(&bits) as u64;
                }
            }
            match exact_weight_probability_restricted(&c, &rho, i) {
                Ok(p) => {
                    prop_assert!(total > 0);
                    prop_assert_eq!(p, BigRational::new(BigInt::from(hits), BigInt::from(total)));
                }
                Err(CircuitError::InvalidWeight { .. }) => prop_assert_eq!(total, 0),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn induced_substructures_compose(m in 1usize..=10, outer in any::<u64>(), inner in any::<u64>(), seed in any::<u64>()) {
        let g = sample_graph(m, 0.5, &mut rng(seed));
        let s = SubsetSelection::from_mask(m, outer & ((1 << m) - 1));
        let t = SubsetSelection::from_mask(s.len(), inner & ((1u64 << s.len()) - 1));
        let lhs: OrderedGraph = g.induced_substructure(&s).induced_substructure(&t);
        prop_assert_eq!(lhs, g.induced_substructure(&s.compose(&t)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monte_carlo_brackets_exact(gates in 5usize..40, i in 0usize..=15, seed in any::<u64>()) {
        let c = random_circuit(15, gates, &mut rng(seed));
        let exact = exact_weight_probability(&c, i).unwrap();
        let p = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        let est = mc_weight_probability(&c, i, 10_000, &Stream::new(seed)).unwrap();
        let sigma = (p * (1.0 - p) / 10_000.0).sqrt();
        // 4σ per case keeps the family-wise false alarm rate negligible
        prop_assert!((est.estimate - p).abs() <= 4.0 * sigma + 1e-12, "exact {} mc {}", p, est.estimate);
    }
}
