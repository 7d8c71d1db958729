//! Ideal membership by linear algebra on a truncated Macaulay matrix.

use std::collections::BTreeMap;

use expfield::algebra::{Monomial, Polynomial, Rational, Ring};
use expfield::linalg;
use num_traits::Zero;

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// `p` lies in the span of `m·g` over all products of degree at most `d`.
pub fn macaulay_member(ring: &Ring, gens: &[Polynomial], p: &Polynomial, d: u32) -> bool {
    let n = ring.nvars();
    let cols: BTreeMap<Monomial, usize> = monomials_up_to(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let row_of = |q: &Polynomial| {
        let mut row = vec![Rational::zero(); cols.len()];
        for (m, c) in q.terms() {
            row[cols[m]] = c.clone();
        }
        row
    };
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap_or(0);
        if dg > d {
            continue;
        }
        for m in monomials_up_to(n, d - dg) {
            rows.push(row_of(&g.mul_monomial(&m, &Rational::from_integer(1.into()))));
        }
    }
    if rows.is_empty() {
        return p.is_zero();
    }
    linalg::in_span(&rows, &row_of(p))
}
