//! Lowering a sentence over a fixed host on `[m]` to a circuit over the
//! membership bits `z_x = [x ∈ S]`, so that the circuit at the indicator of
//! `S` is the truth value of the sentence in the substructure on `S`.
//!
//! `exists x. W` becomes `OR_x (z_x AND W*(x))` and `forall x. W` becomes
//! `AND_x (!z_x OR W*(x))`. Negations are pushed to the literals while
//! lowering, so the output is in negation normal form.

use crate::logic::{Atom, Formula, Sentence, Vocabulary};
use crate::models::{OrderedGraph, TernaryFunction};

use super::ir::{Circuit, CircuitBuilder, GateId, GateKind, Literal};
use super::CircuitError;

/// Interpretation of atoms under a binding of host elements.
trait Host {
    fn size(&self) -> usize;
    fn lower_atom(&self, b: &mut CircuitBuilder, atom: &Atom, env: &Bindings, positive: bool) -> GateId;
}

#[derive(Default)]
struct Bindings<'a> {
    stack: Vec<(&'a str, usize)>,
}

impl Bindings<'_> {
    fn get(&self, name: &str) -> usize {
        self.stack
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .expect("closed sentence")
    }
}

struct GraphHost<'g>(&'g OrderedGraph);

impl Host for GraphHost<'_> {
    fn size(&self) -> usize {
        self.0.size()
    }

    fn lower_atom(&self, b: &mut CircuitBuilder, atom: &Atom, env: &Bindings, positive: bool) -> GateId {
        // order and adjacency survive restriction, so atoms are constants
        let holds = match atom {
            Atom::Eq(x, y) => env.get(x) == env.get(y),
            Atom::Less(x, y) => env.get(x) < env.get(y),
            Atom::Adj(x, y) => self.0.adjacent(env.get(x), env.get(y)),
            Atom::FEq(..) => unreachable!("vocabulary checked"),
        };
        b.constant(holds == positive)
    }
}

struct FunctionHost<'f>(&'f TernaryFunction);

impl Host for FunctionHost<'_> {
    fn size(&self) -> usize {
        self.0.size()
    }

    fn lower_atom(&self, b: &mut CircuitBuilder, atom: &Atom, env: &Bindings, positive: bool) -> GateId {
        match atom {
            Atom::Eq(x, y) => b.constant((env.get(x) == env.get(y)) == positive),
            Atom::FEq(x, y, z) => {
                let (a, c, target) = (env.get(x), env.get(y), env.get(z));
                let f = self.0;
                // F*_S(a,c) = target iff for some d with F(a,c,d) = target,
                // no earlier F(a,c,y) lies in S and target does
                let witnesses: Vec<usize> =
                    (0..f.size()).filter(|&d| f.get(a, c, d) == target).collect();
                let mut terms = Vec::with_capacity(witnesses.len());
                for d in witnesses {
                    let mut lits = Vec::with_capacity(d + 1);
                    for earlier in 0..d {
                        let v = f.get(a, c, earlier);
                        lits.push(b.literal(if positive { Literal::neg(v) } else { Literal::pos(v) }));
                    }
                    lits.push(b.literal(if positive {
                        Literal::pos(target)
                    } else {
                        Literal::neg(target)
                    }));
                    terms.push(if positive { b.and(lits) } else { b.or(lits) });
                }
                if positive {
                    b.or(terms)
                } else {
                    b.and(terms)
                }
            }
            Atom::Less(..) | Atom::Adj(..) => unreachable!("vocabulary checked"),
        }
    }
}

struct Lowering<'a, H> {
    host: H,
    b: CircuitBuilder,
    env: Bindings<'a>,
}

impl<'a, H: Host> Lowering<'a, H> {
    fn combine(&mut self, kind: GateKind, positive: bool, parts: Vec<GateId>) -> GateId {
        let kind = if positive { kind } else { kind.dual() };
        self.b.fold(kind, parts)
    }

    fn lower(&mut self, f: &'a Formula, positive: bool) -> GateId {
        match f {
            Formula::Atom(a) => self.host.lower_atom(&mut self.b, a, &self.env, positive),
            Formula::Not(g) => self.lower(g, !positive),
            Formula::And(gs) => {
                let parts = gs.iter().map(|g| self.lower(g, positive)).collect();
                self.combine(GateKind::And, positive, parts)
            }
            Formula::Or(gs) => {
                let parts = gs.iter().map(|g| self.lower(g, positive)).collect();
                self.combine(GateKind::Or, positive, parts)
            }
            Formula::Implies(l, r) => {
                let parts = vec![self.lower(l, !positive), self.lower(r, positive)];
                self.combine(GateKind::Or, positive, parts)
            }
            Formula::Iff(l, r) => {
                // (!l | r) & (!r | l)
                let first = vec![self.lower(l, !positive), self.lower(r, positive)];
                let first = self.combine(GateKind::Or, positive, first);
                let second = vec![self.lower(r, !positive), self.lower(l, positive)];
                let second = self.combine(GateKind::Or, positive, second);
                self.combine(GateKind::And, positive, vec![first, second])
            }
            Formula::Exists(v, body) => self.quantifier(v, body, true, positive),
            Formula::Forall(v, body) => self.quantifier(v, body, false, positive),
        }
    }

    fn quantifier(&mut self, var: &'a str, body: &'a Formula, existential: bool, positive: bool) -> GateId {
        // under negation, exists becomes forall of the negated body and vice versa
        let existential = existential == positive;
        let mut parts = Vec::with_capacity(self.host.size());
        for x in 0..self.host.size() {
            self.env.stack.push((var, x));
            let inner = self.lower(body, positive);
            self.env.stack.pop();
            let part = if existential {
                let z = self.b.literal(Literal::pos(x));
                self.b.and([z, inner])
            } else {
                let nz = self.b.literal(Literal::neg(x));
                self.b.or([nz, inner])
            };
            parts.push(part);
        }
        if existential {
            self.b.or(parts)
        } else {
            self.b.and(parts)
        }
    }
}

fn lower_with<H: Host>(host: H, s: &Sentence) -> Circuit {
    let inputs = host.size();
    let mut l = Lowering {
        host,
        b: CircuitBuilder::new(inputs),
        env: Bindings::default(),
    };
    let out = l.lower(s.formula(), true);
    l.b.finish(out)
}

pub fn compile_graph_sentence(g: &OrderedGraph, s: &Sentence) -> Result<Circuit, CircuitError> {
    if s.vocabulary() != Vocabulary::GraphOrder {
        return Err(CircuitError::Vocabulary {
            expected: Vocabulary::GraphOrder,
            found: s.vocabulary(),
        });
    }
    Ok(lower_with(GraphHost(g), s))
}

/// The atom `F(a,b) = c` is false whenever the projection is undefined at
/// `(a,b)`.
pub fn compile_function_sentence(f: &TernaryFunction, s: &Sentence) -> Result<Circuit, CircuitError> {
    if s.vocabulary() != Vocabulary::BinaryFunction {
        return Err(CircuitError::Vocabulary {
            expected: Vocabulary::BinaryFunction,
            found: s.vocabulary(),
        });
    }
    Ok(lower_with(FunctionHost(f), s))
}

/// Circuit that holds exactly when the projection onto `S` is total.
pub fn compile_definedness(f: &TernaryFunction) -> Circuit {
    let s = crate::logic::parse_sentence(
        "forall x. forall y. exists w. F(x,y) = w",
        Vocabulary::BinaryFunction,
    )
    .expect("static sentence");
    lower_with(FunctionHost(f), &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::ir::Gate;
    use crate::logic::parse_sentence;
    use crate::models::{sample_graph, sample_ternary_function, SubsetSelection};
    use crate::semantics::{eval_graph_sentence, eval_partial_function_sentence};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph(text: &str) -> Sentence {
        parse_sentence(text, Vocabulary::GraphOrder).unwrap()
    }

    #[test]
    fn exists_self_equal_is_plain_or() {
        let c = compile_graph_sentence(&OrderedGraph::empty(3), &graph("exists x. x = x")).unwrap();
        assert_eq!(
            c.to_dump(),
            "g0 = LIT + 1\ng1 = LIT + 2\ng2 = LIT + 3\ng3 = OR g0 g1 g2\nOUTPUT g3\n"
        );
    }

    #[test]
    fn contradictory_primitive_folds_to_false() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = sample_graph(6, 0.5, &mut rng);
        let c = compile_graph_sentence(&g, &graph("exists x. x < x")).unwrap();
        assert_eq!(c.as_constant(), Some(false));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn no_isolated_vertices_shape() {
        // AND_x [ !z_x OR OR_{y ~ x} z_y ]
        let g = OrderedGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = compile_graph_sentence(&g, &graph("forall x. exists y. x ~ y")).unwrap();
        let Gate::And(top) = c.gate(c.output()) else { panic!("top is not AND") };
        assert_eq!(top.len(), 4);
        let neighbours = |x: usize| -> Vec<usize> { (0..4).filter(|&y| g.adjacent(x, y)).collect() };
        for (x, &part) in top.iter().enumerate() {
            let want = neighbours(x);
            if want.is_empty() {
                // OR(!z_x, false) folds to the literal
                assert_eq!(*c.gate(part), Gate::Lit(Literal::neg(x)));
                continue;
            }
            let Gate::Or(cs) = c.gate(part) else { panic!() };
            assert_eq!(*c.gate(cs[0]), Gate::Lit(Literal::neg(x)));
            let inner: Vec<usize> = match c.gate(cs[1]) {
                Gate::Or(ys) => ys
                    .iter()
                    .map(|y| match c.gate(*y) {
                        Gate::Lit(l) if l.positive => l.var,
                        g => panic!("{g:?}"),
                    })
                    .collect(),
                Gate::Lit(l) => vec![l.var],
                g => panic!("{g:?}"),
            };
            assert_eq!(inner, want);
        }
    }

    #[test]
    fn graph_compile_matches_oracle_on_every_subset() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sentences = [
            "forall x. exists y. x ~ y",
            "exists x. exists y. x < y & !x ~ y",
            "!(exists x. forall y. (x = y | x ~ y)) -> exists x. x = x",
            "(exists x. exists y. x ~ y) <-> forall z. exists w. z < w",
        ];
        for text in sentences {
            let s = graph(text);
            for _ in 0..5 {
                let g = sample_graph(6, 0.5, &mut rng);
                let c = compile_graph_sentence(&g, &s).unwrap();
                for mask in 0..64u64 {
                    let sub = SubsetSelection::from_mask(6, mask);
                    let want = eval_graph_sentence(&g.induced_substructure(&sub), &s).unwrap();
                    assert_eq!(c.eval(&sub.indicator()), want, "{text} mask {mask:b}");
                }
            }
        }
    }

    #[test]
    fn function_atom_single_point() {
        let f = TernaryFunction::constant(1, 0);
        let s = parse_sentence("forall x. F(x,x) = x", Vocabulary::BinaryFunction).unwrap();
        let c = compile_function_sentence(&f, &s).unwrap();
        // AND over x of (!z_x | z_x) folds to true; the atom itself is z_1
        assert_eq!(c.as_constant(), Some(true));
        let s = parse_sentence("exists x. F(x,x) = x", Vocabulary::BinaryFunction).unwrap();
        let c = compile_function_sentence(&f, &s).unwrap();
        assert_eq!(*c.gate(c.output()), Gate::Lit(Literal::pos(0)));
    }

    #[test]
    fn function_atom_without_witness_is_false() {
        let f = TernaryFunction::constant(3, 2);
        let s = parse_sentence("exists x. F(x,x) = x & x < x", Vocabulary::BinaryFunction);
        assert!(s.is_err());
        let s = parse_sentence("exists x. exists y. !x = y & F(x,x) = y & y = x", Vocabulary::BinaryFunction)
            .unwrap();
        assert_eq!(compile_function_sentence(&f, &s).unwrap().as_constant(), Some(false));
    }

    #[test]
    fn function_compile_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sentences = [
            "forall x. exists y. F(x,y) = x",
            "forall x. F(x,x) = x",
            "exists x. exists y. exists z. F(x,y) = z & !F(y,x) = z",
            "forall x. forall y. (F(x,y) = y -> exists z. F(z,z) = x)",
        ];
        for text in sentences {
            let s = parse_sentence(text, Vocabulary::BinaryFunction).unwrap();
            for _ in 0..4 {
                let f = sample_ternary_function(5, &mut rng);
                let c = compile_function_sentence(&f, &s).unwrap();
                let def = compile_definedness(&f);
                for mask in 0..32u64 {
                    let sub = SubsetSelection::from_mask(5, mask);
                    let proj = f.project(&sub);
                    assert_eq!(def.eval(&sub.indicator()), proj.totally_defined());
                    if proj.totally_defined() {
                        let want = eval_partial_function_sentence(&proj, &s).unwrap();
                        assert_eq!(c.eval(&sub.indicator()), want, "{text} mask {mask:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn vocabulary_checked() {
        let s = parse_sentence("exists x. x = x", Vocabulary::BinaryFunction).unwrap();
        assert!(compile_graph_sentence(&OrderedGraph::empty(2), &s).is_err());
        let s = graph("exists x. x = x");
        assert!(compile_function_sentence(&TernaryFunction::constant(2, 0), &s).is_err());
    }
}
