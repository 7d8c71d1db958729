mod common;

use expfield::algebra::{CycloElement, Polynomial, Ring};
use expfield::ideal::Ideal;
use expfield::lattice::IntMatrix;
use expfield::pairs::{associated_preimage, cut, cut_with, point_in, unity_action, CutOptions, VarietyPair};

use common::curated::{check_reduction, matches, normality_cases, reduction_cases};
use common::pair;
use common::tower::{base_points, test_varieties, twists};

#[test]
fn normality_matches_hand_verdicts() {
    for c in normality_cases() {
        let v = c.pair.normal_check(3).unwrap();
        assert!(matches(&v, &c.expected), "{}: got {v:?}, expected {:?}", c.name, c.expected);
    }
}

#[test]
fn normality_verdicts_are_monotone_in_height() {
    for c in normality_cases() {
        let top = c.pair.normal_check(3).unwrap();
        for h in 1..3 {
            let low = c.pair.normal_check(h).unwrap();
            if top.is_normal() {
                assert!(low.is_normal(), "{}: witness at height {h} after passing 3", c.name);
            }
            if !low.is_normal() {
                assert!(!top.is_normal(), "{}", c.name);
            }
        }
    }
}

#[test]
fn unimodular_transforms_keep_verdicts() {
    let us = [
        IntMatrix::from_rows(2, &[vec![1, 1], vec![0, 1]]),
        IntMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]),
        IntMatrix::from_rows(2, &[vec![2, 1], vec![1, 1]]),
    ];
    let h = 1;
    for c in normality_cases().into_iter().filter(|c| c.pair.n() == 2) {
        let before = c.pair.normal_check(h).unwrap().is_normal();
        for u in &us {
            assert!(u.is_unimodular());
            let norm = u.max_abs().magnitude().clone();
            let bound = h * u64::try_from(norm).unwrap() * 2;
            let t = c.pair.transform(u).unwrap();
            assert_eq!(t.normal_check(bound).unwrap().is_normal(), before, "{} under {u}", c.name);
        }
    }
}

#[test]
fn reduction_round_trips_on_samples() {
    let mut points = 0;
    for case in reduction_cases() {
        points += check_reduction(&case, false).unwrap_or_else(|e| panic!("{e}"));
    }
    assert!(points >= 500, "{points}");
}

fn qualifying() -> Vec<(VarietyPair, u64)> {
    vec![
        (pair(2, &[], &[]), 3),
        (pair(2, &[], &["y2 - y1^2 - 1"]), 3),
        (pair(3, &[], &[]), 2),
        (pair(3, &["x3 - x1^2 - x2^2"], &[]), 2),
        (pair(3, &[], &["y3 - y1 - y2"]), 2),
    ]
}

#[test]
fn cuts_lower_dim_v_by_one() {
    for (p, h) in qualifying() {
        assert!(p.axiom_instance(h).unwrap().qualifies(), "{p:?}");
        for seed in 1..=2 {
            let rep = cut(&p, seed, h).unwrap();
            assert_eq!(rep.dim_v_after, rep.dim_v_before - 1, "{p:?} seed {seed}");
            assert_eq!(rep.pair.dim_v().unwrap(), rep.dim_v_after);
            assert_eq!(rep.pair.dim_w().unwrap(), p.dim_w().unwrap());
            assert!(rep.preserved(), "{p:?} seed {seed}: {:?}", rep.failures());
        }
    }
}

#[test]
fn iterated_cuts_reach_zero() {
    let mut p = pair(2, &[], &[]);
    let mut d = 2;
    while d > 0 {
        let rep = cut_with(&p, 7 + d as u64, CutOptions { height: 3, allow_terminal: true }).unwrap();
        assert!(rep.preserved(), "{:?}", rep.failures());
        assert_eq!(rep.d_after, d - 1);
        d = rep.d_after;
        p = rep.pair;
    }
}

#[test]
fn preimage_tower_is_coherent() {
    for p in test_varieties() {
        let ring = p.iw().ring().clone();
        for l in 1..=4u64 {
            let lower = associated_preimage(&p, l).unwrap();
            for m in 1..=4u32 {
                let powers: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(&ring, i).pow(m)).collect();
                let pulled = Ideal::new(&ring, lower.gens().iter().map(|g| g.substitute(&powers).unwrap()).collect());
                for g in associated_preimage(&p, l * u64::from(m)).unwrap().gens() {
                    assert!(pulled.contains(g).unwrap(), "{p:?}: l = {l}, m = {m}");
                }
            }
        }
    }
}

#[test]
fn unity_action_preserves_preimages() {
    let mut checked = 0;
    for p in test_varieties() {
        for l in 1..=6u64 {
            let pre = associated_preimage(&p, l).unwrap();
            for b in base_points(&p, &pre, l) {
                for moved in twists(&b, l) {
                    assert!(point_in(&pre, &moved), "{p:?}: l = {l}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 500, "{checked}");
}

#[test]
fn twists_are_coherent_across_levels() {
    // ξ(l·m)^m = ξ(l): raising a twisted level-lm point to the m-th power
    // gives the level-l point twisted by ξ^m
    let mut checked = 0;
    for p in test_varieties() {
        for l in 1..=4u64 {
            for m in 1..=4u64 {
                let lm = l * m;
                let lower = associated_preimage(&p, l).unwrap();
                let upper = associated_preimage(&p, lm).unwrap();
                for b in base_points(&p, &upper, lm) {
                    for j in 0..lm as i64 {
                        let xi = vec![CycloElement::zeta_pow(lm, j); p.n()];
                        let moved = unity_action(&b, &xi, lm).unwrap();
                        let raised: Vec<CycloElement> = moved.iter().map(|c| c.pow(m)).collect();
                        let xi_m: Vec<CycloElement> = xi.iter().map(|c| c.pow(m)).collect();
                        let b_m: Vec<CycloElement> = b.iter().map(|c| c.pow(m)).collect();
                        assert_eq!(raised, unity_action(&b_m, &xi_m, l).unwrap());
                        assert!(point_in(&lower, &raised), "{p:?}: l = {l}, m = {m}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked >= 500, "{checked}");
}

#[test]
fn single_root_examples() {
    let r = Ring::indexed("y", 1);
    let w = pair(1, &[], &["y1 - 1"]);
    let pre = associated_preimage(&w, 2).unwrap();
    assert!(pre.same_ideal(&Ideal::new(&r, vec![&Polynomial::var(&r, 0).pow(2) - &Polynomial::one(&r)])).unwrap());
    let i = CycloElement::zeta(4);
    let moved = unity_action(&[i.clone()], &[i], 4).unwrap();
    assert_eq!(moved[0], CycloElement::from_rational(4, common::q(-1, 1)));
    assert!(point_in(&associated_preimage(&pair(1, &[], &["y1 - 1"]), 4).unwrap(), &moved));
}
