//! Surface-syntax printer. Output re-parses to the same AST.

use std::fmt;

use super::ast::{Atom, Formula};

const QUANT: u8 = 0;
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => QUANT,
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(_) => OR,
        Formula::And(_) => AND,
        Formula::Not(_) | Formula::Atom(_) => UNARY,
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Less(a, b) => write!(f, "{a} < {b}"),
            Atom::Adj(a, b) => write!(f, "{a} ~ {b}"),
            Atom::FEq(a, b, c) => write!(f, "F({a},{b}) = {c}"),
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, formula: &Formula, ctx: u8) -> fmt::Result {
    // quantifier bodies extend to the right, so any quantifier used as an
    // operand is bracketed
    let paren = prec(formula) < ctx;
    if paren {
        f.write_str("(")?;
    }
    match formula {
        Formula::Atom(a) => write!(f, "{a}")?,
        Formula::Not(g) => {
            f.write_str("!")?;
            write_at(f, g, UNARY)?;
        }
        Formula::And(gs) => write_joined(f, gs, " & ", AND + 1)?,
        Formula::Or(gs) => write_joined(f, gs, " | ", OR + 1)?,
        Formula::Implies(l, r) => {
            write_at(f, l, IMP + 1)?;
            f.write_str(" -> ")?;
            write_at(f, r, IMP)?;
        }
        Formula::Iff(l, r) => {
            write_at(f, l, IFF)?;
            f.write_str(" <-> ")?;
            write_at(f, r, IFF + 1)?;
        }
        Formula::Exists(v, b) => {
            write!(f, "exists {v}. ")?;
            write_at(f, b, QUANT)?;
        }
        Formula::Forall(v, b) => {
            write!(f, "forall {v}. ")?;
            write_at(f, b, QUANT)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

fn write_joined(f: &mut fmt::Formatter<'_>, gs: &[Formula], sep: &str, ctx: u8) -> fmt::Result {
    for (k, g) in gs.iter().enumerate() {
        if k > 0 {
            f.write_str(sep)?;
        }
        write_at(f, g, ctx)?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, QUANT)
    }
}
