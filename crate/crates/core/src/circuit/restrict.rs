use crate::models::Restriction;

use super::ir::{Circuit, CircuitBuilder, Gate, GateId};

/// `C` restricted by `ρ`: fixed literals become constants, and constants are
/// propagated upward. The result only mentions starred inputs and agrees with
/// `C` on every completion of the stars.
pub fn apply_restriction(c: &Circuit, rho: &Restriction) -> Circuit {
    assert_eq!(rho.host(), c.inputs(), "restriction host size");
    let reach = c.reachable();
    let mut b = CircuitBuilder::new(c.inputs());
    let mut map: Vec<Option<GateId>> = vec![None; c.len()];
    for (k, gate) in c.gates().iter().enumerate() {
        if !reach[k] {
            continue;
        }
        let id = match gate {
            Gate::Const(v) => b.constant(*v),
            Gate::Lit(l) => match rho.get(l.var) {
                Some(value) => b.constant(l.eval(value)),
                None => b.literal(*l),
            },
            Gate::And(cs) => {
                let kids: Vec<GateId> = cs.iter().map(|c| map[c.index()].unwrap()).collect();
                b.and(kids)
            }
            Gate::Or(cs) => {
                let kids: Vec<GateId> = cs.iter().map(|c| map[c.index()].unwrap()).collect();
                b.or(kids)
            }
        };
        map[k] = Some(id);
    }
    b.finish(map[c.output().index()].unwrap())
}
