//! Varieties and points for checking the preimage tower and the action
//! of roots of unity.

use expfield::algebra::CycloElement;
use expfield::ideal::Ideal;
use expfield::pairs::{point_in, unity_action, VarietyPair};

use super::{pair, q};

pub fn test_varieties() -> Vec<VarietyPair> {
    vec![
        pair(1, &[], &["y1 - 1"]),
        pair(2, &[], &[]),
        pair(2, &[], &["y2 - y1^2"]),
        pair(2, &[], &["y1*y2 - 1"]),
        pair(2, &[], &["y1^2*y2 - 1"]),
        pair(2, &[], &["y2 - y1 - 1"]),
    ]
}

/// Twists of `point` by every `ξ ∈ μ_l^n`.
pub fn twists(point: &[CycloElement], l: u64) -> Vec<Vec<CycloElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..point.len() {
        out = out
            .into_iter()
            .flat_map(|xi: Vec<CycloElement>| {
                (0..l as i64).map(move |j| [xi.clone(), vec![CycloElement::zeta_pow(l, j)]].concat())
            })
            .collect();
    }
    out.iter().map(|xi| unity_action(point, xi, l).unwrap()).collect()
}

/// Rational candidate points lying on `V(i)`.
pub fn base_points(p: &VarietyPair, i: &Ideal, level: u64) -> Vec<Vec<CycloElement>> {
    let r = |a: i64, b: i64| CycloElement::from_rational(level, q(a, b));
    let candidates: Vec<Vec<CycloElement>> = match p.n() {
        1 => vec![vec![r(1, 1)], vec![r(2, 1)]],
        _ => [(2, 1), (1, 2), (-3, 1)]
            .iter()
            .flat_map(|&(a, b)| {
                let t = q(a, b);
                [vec![t.clone(), t.clone() * t.clone()], vec![t.clone(), t.recip()], vec![t.clone(), (t.clone() * t.clone()).recip()], vec![t.clone(), t.clone() + q(1, 1)]]
            })
            .map(|v| v.into_iter().map(|c| CycloElement::from_rational(level, c)).collect())
            .collect(),
    };
    candidates.into_iter().filter(|pt| point_in(i, pt)).collect()
}
