use rand::Rng;

use crate::circuit::{apply_restriction, to_levelled, Circuit, CircuitBuilder, Gate, GateId, LayeredCircuit};
use crate::models::Restriction;
use crate::rng::Stream;

use super::config::RestrictionConfig;
use super::sampler::{extend_to_default, sample_balanced_restriction};
use super::survey::{level1_fanin_survey, FaninSurvey};
use super::tree::{invert, DepthTwo};
use super::SwitchingError;

/// Stars up to which equivalence is checked on every completion.
pub const EXHAUSTIVE_STARS: usize = 20;
/// Random completions checked above that.
pub const SAMPLED_COMPLETIONS: u64 = 10_000;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwitchCounts {
    /// Level-2 gates considered.
    pub blocks: usize,
    pub switched: usize,
    pub depth_failures: usize,
    pub fanin_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub completions: u64,
    pub mismatches: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub m: usize,
    pub config: RestrictionConfig,
    pub original_depth: usize,
    pub levelled_depth: usize,
    pub first_stage: Restriction,
    /// Level 1 of the levelled circuit under the first-stage restriction.
    pub survey: FaninSurvey,
    pub second_stage: Restriction,
    /// Depth of the releveled circuit after both restrictions.
    pub restricted_depth: usize,
    pub counts: SwitchCounts,
    pub result: Circuit,
    pub final_depth: usize,
    pub check: EquivalenceCheck,
}

/// Inverts every level-2 block through its canonical decision tree and
/// merges the inverted block into the level above. Blocks whose bottom
/// fan-in exceeds `max_fanin` or whose tree is deeper than `max_depth`
/// are kept as they are.
pub fn switch_level_two(lc: &LayeredCircuit, max_fanin: usize, max_depth: usize) -> Result<(Circuit, SwitchCounts), SwitchingError> {
    let c = lc.circuit();
    let mut counts = SwitchCounts::default();
    if lc.depth() < 2 {
        return Ok((c.clone(), counts));
    }
    let reach = c.reachable();
    let mut b = CircuitBuilder::new(c.inputs());
    let mut map: Vec<Option<GateId>> = vec![None; c.len()];
    for (k, gate) in c.gates().iter().enumerate() {
        if !reach[k] {
            continue;
        }
        let id = GateId::from_index(k);
        let new = match gate {
            Gate::Const(v) => b.constant(*v),
            Gate::Lit(l) => b.literal(*l),
            Gate::And(cs) | Gate::Or(cs) => {
                let kind = gate.kind().unwrap();
                let mut switched = None;
                if lc.level(id) == 2 {
                    counts.blocks += 1;
                    match DepthTwo::from_gate(c, id, max_fanin) {
                        Ok(f) => match invert(&f, max_depth)? {
                            Some(dual) => {
                                counts.switched += 1;
                                switched = Some(dual.build_into(&mut b));
                            }
                            None => counts.depth_failures += 1,
                        },
                        Err(SwitchingError::Fanin { .. }) => counts.fanin_failures += 1,
                        Err(e) => return Err(e),
                    }
                }
                match switched {
                    Some(root) => root,
                    None => {
                        // splice children of the same kind, which merges an inverted block upward
                        let mut kids = Vec::new();
                        for ch in cs {
                            let nc = map[ch.index()].unwrap();
                            match b.gate(nc).kind() {
                                Some(k2) if k2 == kind => kids.extend_from_slice(b.gate(nc).children()),
                                _ => kids.push(nc),
                            }
                        }
                        b.fold(kind, kids)
                    }
                }
            }
        };
        map[k] = Some(new);
    }
    let out = map[c.output().index()].unwrap();
    Ok((b.finish(out), counts))
}

fn check_equivalence(original: &Circuit, result: &Circuit, rho: &Restriction, stream: &Stream) -> EquivalenceCheck {
    let stars = rho.stars();
    let base: Vec<bool> = (0..rho.host()).map(|v| rho.get(v) == Some(true)).collect();
    let mut check = EquivalenceCheck {
        completions: 0,
        mismatches: 0,
        exhaustive: stars.len() <= EXHAUSTIVE_STARS,
    };
    let mut assignment = base;
    let compare = |assignment: &Vec<bool>, check: &mut EquivalenceCheck| {
        check.completions += 1;
        if original.eval(assignment) != result.eval(assignment) {
            check.mismatches += 1;
        }
    };
    if check.exhaustive {
        for s in 0..1u64 << stars.len() {
            for (j, &v) in stars.iter().enumerate() {
                assignment[v] = s >> j & 1 == 1;
            }
            compare(&assignment, &mut check);
        }
    } else {
        let mut rng = stream.rng();
        for _ in 0..SAMPLED_COMPLETIONS {
            for &v in &stars {
                assignment[v] = rng.gen();
            }
            compare(&assignment, &mut check);
        }
    }
    check
}

/// Levels `c`, applies a first-stage and a second-stage restriction, and
/// inverts the level-2 blocks of what remains. The result is compared with
/// `c` on completions of the final restriction.
pub fn run_pipeline(c: &Circuit, config: &RestrictionConfig, stream: &Stream) -> Result<PipelineReport, SwitchingError> {
    let m = c.inputs();
    let levelled = to_levelled(c);
    let first = sample_balanced_restriction(m, &mut stream.branch_named("first").rng())?.restriction;
    let survey = level1_fanin_survey(levelled.circuit(), &first)?;
    let n = (m - 1) / 2;
    let (second, _) = extend_to_default(&first, config.star_target(n), &mut stream.branch_named("second").rng())?;
    let restricted = to_levelled(&apply_restriction(levelled.circuit(), &second));
    let (result, counts) = switch_level_two(&restricted, config.k, config.k)?;
    let check = check_equivalence(c, &result, &second, &stream.branch_named("check"));
    Ok(PipelineReport {
        m,
        config: config.clone(),
        original_depth: c.depth(),
        levelled_depth: levelled.depth(),
        first_stage: first,
        survey,
        second_stage: second,
        restricted_depth: restricted.depth(),
        counts,
        final_depth: result.depth(),
        result,
        check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{compile_graph_sentence, GateKind, Literal};
    use crate::logic::{parse_sentence, Vocabulary};
    use crate::models::sample_graph;

    #[test]
    fn inverting_level_two_lowers_depth() {
        // AND over two ORs of ANDs over disjoint literal pairs
        let mut b = CircuitBuilder::new(8);
        let z: Vec<_> = (0..8).map(|v| b.literal(Literal::pos(v))).collect();
        let a0 = b.and([z[0], z[1]]);
        let a1 = b.and([z[2], z[3]]);
        let a2 = b.and([z[4], z[5]]);
        let a3 = b.and([z[6], z[7]]);
        let o0 = b.or([a0, a1]);
        let o1 = b.or([a2, a3]);
        let top = b.and([o0, o1]);
        let c = b.finish(top);
        let lc = to_levelled(&c);
        assert_eq!((lc.depth(), lc.bottom_kind()), (3, GateKind::And));
        let (out, counts) = switch_level_two(&lc, 2, 4).unwrap();
        assert_eq!(counts.switched, 2);
        assert_eq!(out.depth(), 2);
        for s in 0..256u32 {
            let bits: Vec<bool> = (0..8).map(|v| s >> v & 1 == 1).collect();
            assert_eq!(out.eval(&bits), c.eval(&bits));
        }
        let (_, counts) = switch_level_two(&lc, 2, 3).unwrap();
        assert_eq!(counts.depth_failures, 2);
        let (_, counts) = switch_level_two(&lc, 1, 4).unwrap();
        assert_eq!(counts.fanin_failures, 2);
    }

    #[test]
    fn pipeline_preserves_semantics() {
        let s = parse_sentence("forall x. exists y. (x < y & x ~ y)", Vocabulary::GraphOrder).unwrap();
        let g = sample_graph(21, 0.5, &mut Stream::new(3).rng());
        let c = compile_graph_sentence(&g, &s).unwrap();
        let config = RestrictionConfig::for_size(c.len(), 10);
        for seed in 0..5 {
            let r = run_pipeline(&c, &config, &Stream::new(seed)).unwrap();
            assert!(r.second_stage.extends(&r.first_stage));
            assert!(r.second_stage.is_balanced());
            assert_eq!(r.second_stage.star_count(), 7);
            assert!(r.check.exhaustive);
            assert_eq!(r.check.completions, 128);
            assert_eq!(r.check.mismatches, 0);
        }
    }
}
