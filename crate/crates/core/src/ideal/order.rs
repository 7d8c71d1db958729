use std::cmp::Ordering;
use std::fmt;

use crate::algebra::Monomial;

/// Monomial orders used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic, first variable largest.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Total degree in the first `split` variables, ties broken by grevlex
    /// on all variables. Eliminates the first block and induces grevlex on
    /// the rest.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(split) => {
                let da: u32 = a.0[..split].iter().sum();
                let db: u32 = b.0[..split].iter().sum();
                da.cmp(&db).then_with(|| grevlex(&a.0, &b.0))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block(s) => write!(f, "block({s})"),
        }
    }
}
