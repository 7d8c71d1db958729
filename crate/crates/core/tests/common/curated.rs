//! Hand-built pair suites with known answers, shared with the acceptance
//! target.

use std::collections::BTreeMap;

use expfield::algebra::{Polynomial, Rational};
use expfield::ideal::Ideal;
use expfield::lattice::IntMatrix;
use expfield::pairs::{reduce, NormalityVerdict, VarietyPair};
use num_traits::Zero;

use super::{ideal, pair, q};

/// Expected outcome of `normal_check`, read off by hand.
#[derive(Clone, Debug)]
pub enum Expected {
    Normal,
    NotNormal { basis: Vec<Vec<i64>>, dim_v: i64, dim_w: i64 },
}

pub struct NormalityCase {
    pub name: &'static str,
    pub pair: VarietyPair,
    pub expected: Expected,
}

pub fn normality_cases() -> Vec<NormalityCase> {
    let case = |name, n, v: &[&str], w: &[&str], expected| NormalityCase { name, pair: pair(n, v, w), expected };
    let not = |basis: &[&[i64]], dim_v, dim_w| Expected::NotNormal {
        basis: basis.iter().map(|r| r.to_vec()).collect(),
        dim_v,
        dim_w,
    };
    vec![
        case("line × line", 1, &[], &[], Expected::Normal),
        // k = 2 on the full lattice: 0 + 1 < 2
        case("point × curve", 2, &["x1", "x2"], &["y2 - y1"], not(&[&[1, 0], &[0, 1]], 0, 1)),
        case("hyperplane × torus", 2, &["x1 + x2 - 1"], &[], Expected::Normal),
        case("parabola × torus", 2, &["x2 - x1^2"], &[], Expected::Normal),
        case("plane × point", 2, &[], &["y1 - 2", "y2 - 3"], Expected::Normal),
        // the first coordinate already fails: 0 + 0 < 1
        case("point × point", 2, &["x1 - 1", "x2 - 2"], &["y1 - 2", "y2 - 3"], not(&[&[1, 0]], 0, 0)),
        case("axis × torus line", 2, &["x1"], &["y1 - 2"], not(&[&[1, 0]], 0, 0)),
        // m = (1, −1) kills V but y1/y2 = y1² still moves on W
        case("diagonal × hyperbola", 2, &["x1 - x2"], &["y1*y2 - 1"], Expected::Normal),
        case("line × point pair", 3, &["x1", "x2"], &["y1 - 1", "y2 - 1"], not(&[&[1, 0, 0]], 0, 0)),
        // x1 − x2 = 0 on V and y1/y2 = 1 on W
        case("diagonal × diagonal", 2, &["x1 - x2"], &["y1 - y2"], not(&[&[1, -1]], 0, 0)),
    ]
}

/// Whether the verdict matches the hand-derived one exactly.
pub fn matches(verdict: &NormalityVerdict, expected: &Expected) -> bool {
    match (verdict, expected) {
        (NormalityVerdict::NormalUpTo(_), Expected::Normal) => true,
        (NormalityVerdict::NotNormal { witness, dim_v, dim_w, k, .. }, Expected::NotNormal { basis, dim_v: ev, dim_w: ew }) => {
            let n = witness.ambient();
            *witness.basis() == IntMatrix::from_rows(n, basis) && dim_v == ev && dim_w == ew && *k == basis.len()
        }
        _ => false,
    }
}

/// A removal problem `(V∖V′, W∖W′)` with rational sample curves on `V`
/// and on `W`.
pub struct ReductionCase {
    pub name: &'static str,
    pub n: usize,
    pub v: &'static [&'static str],
    pub v_removed: &'static [&'static str],
    pub w: &'static [&'static str],
    pub w_removed: &'static [&'static str],
    pub v_curve: fn(&Rational) -> Vec<Rational>,
    pub w_curve: fn(&Rational) -> Vec<Rational>,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// All but the last three remove exactly `V′` and `W′`.
pub fn reduction_cases() -> Vec<ReductionCase> {
    fn plane(t: &Rational) -> Vec<Rational> {
        vec![t.clone(), t * t]
    }
    fn none(_: &Rational) -> Vec<Rational> {
        Vec::new()
    }
    type Curve = fn(&Rational) -> Vec<Rational>;
    type Gens = &'static [&'static str];
    #[allow(clippy::too_many_arguments)]
    fn c(name: &'static str, n: usize, v: Gens, v_removed: Gens, w: Gens, w_removed: Gens, v_curve: Curve, w_curve: Curve) -> ReductionCase {
        ReductionCase { name, n, v, v_removed, w, w_removed, v_curve, w_curve }
    }
    vec![
        c("plane minus an axis", 2, &[], &["x1"], &[], &["1"], plane, |t| vec![t.clone(), t + r(2)]),
        c("plane minus the diagonal", 2, &[], &["x1 - x2"], &[], &["y1 + y2 - 1"], |t| vec![t.clone(), t.clone()], |t| {
            vec![t.clone(), r(1) - t]
        }),
        c("parabola minus a point", 2, &["x2 - x1^2"], &["x1 - 1"], &["y2 - y1 - 1"], &["1"], plane, |t| {
            vec![t.clone(), t + r(1)]
        }),
        c("line and torus minus points", 1, &[], &["x1 - 2"], &[], &["y1 - 3"], |t| vec![t * r(2)], |t| vec![t * r(3)]),
        c("cubic minus two points", 2, &["x2 - x1^3"], &["x1^2 - 1"], &[], &["1"], |t| vec![t.clone(), t * t * t], none),
        c("space minus two planes", 3, &[], &["x1*x2"], &[], &["1"], |t| vec![t.clone(), t - r(1), r(2)], none),
        c("saddle minus a line", 3, &["x3 - x1*x2"], &["x1"], &[], &["1"], |t| vec![t.clone(), r(2), t * r(2)], none),
        c("torus curve minus a point", 2, &[], &["1"], &["y2 - y1^2 - 1"], &["y1 - 2"], none, |t| vec![t.clone(), t * t + r(1)]),
        c("torus minus the diagonal", 2, &[], &["1"], &[], &["y1 - y2"], none, |t| vec![t.clone(), t.clone()]),
        c("circle minus an axis", 2, &["x1^2 + x2^2 - 1"], &["x2"], &[], &["1"], |t| {
            let d = r(1) + t * t;
            vec![(r(1) - t * t) / &d, t * r(2) / &d]
        }, none),
        c("torus minus a coordinate", 1, &[], &["1"], &[], &["y1"], none, |t| vec![t.clone()]),
        c("plane minus an irrational pair", 2, &[], &["x1^2 - 2"], &[], &["1"], plane, none),
        c("parabola minus a level", 2, &["x2 - x1^2"], &["x2 - 4"], &[], &["1"], plane, none),
        c("both sides", 2, &["x2 - x1^2"], &["x1"], &["y2 - y1^2 - 1"], &["y2 - 2"], plane, |t| {
            vec![t.clone(), t * t + r(1)]
        }),
        c("torus minus a surface", 3, &[], &["1"], &[], &["y1*y2 - y3"], none, |t| vec![t.clone(), r(2), t * r(2)]),
        c("shifted curve minus a point", 2, &[], &["1"], &["y2 - y1 - 1"], &["y1 - 1"], none, |t| vec![t.clone(), t + r(1)]),
        c("torus minus minus one", 1, &[], &["1"], &[], &["y1 + 1"], none, |t| vec![t.clone()]),
        c("plane minus the origin", 2, &[], &["x1", "x2"], &[], &["1"], |t| vec![t.clone(), r(0)], none),
        c("space minus an axis", 3, &[], &["x1", "x2"], &[], &["1"], |t| vec![r(0), t.clone(), r(1)], none),
        c("torus minus the unit", 2, &[], &["1"], &[], &["y1 - 1", "y2 - 1"], none, |t| vec![r(1), t.clone()]),
    ]
}

fn samples() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 3), (1, 1), (2, 1), (3, 1)].iter().map(|&(a, b)| q(a, b)).collect()
}

fn grid(n: usize, values: &[i64]) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| values.iter().map(move |&v| [p.clone(), vec![r(v)]].concat())).collect();
    }
    out
}

fn vanishes(i: &Ideal, point: &[Rational]) -> bool {
    i.gens().iter().all(|g| g.eval(point).is_zero())
}

/// Whether the point, placed in the first coordinates, extends to a point
/// of `V(i)` over the algebraic closure.
fn extends(i: &Ideal, point: &[Rational]) -> bool {
    let ring = i.ring();
    let map: BTreeMap<usize, Polynomial> =
        point.iter().enumerate().map(|(k, c)| (k, Polynomial::constant(ring, c.clone()))).collect();
    let gens = i.gens().iter().map(|g| g.substitute_some(&map).unwrap()).collect();
    !Ideal::new(ring, gens).is_unit().unwrap()
}

/// Reduces the case and samples both directions: points of `V∖V′` extend,
/// and points that extend lie in `V∖V′`; likewise on the torus for `W`.
/// Returns the number of sample points checked.
pub fn check_reduction(case: &ReductionCase, exact_only: bool) -> Result<usize, String> {
    let n = case.n;
    let p = pair(n, case.v, case.w);
    let (iv_removed, iw_removed) = (ideal("x", n, case.v_removed), ideal("y", n, case.w_removed));
    let red = reduce(&p, &iv_removed, &iw_removed, 5, 2).map_err(|e| format!("{}: {e}", case.name))?;
    let fail = |msg: String| Err(format!("{}: {msg}", case.name));
    if exact_only && !(red.exact_v && red.exact_w) {
        return fail("removal is not exact".into());
    }
    if !red.pair.additive_free().unwrap().is_free() || !red.pair.multiplicative_free(2).unwrap().is_free() {
        return fail("output pair is not free".into());
    }
    let mut checked = 0;

    let mut v_points: Vec<Vec<Rational>> = samples().iter().map(case.v_curve).filter(|x| !x.is_empty()).collect();
    v_points.extend(grid(n, &[-1, 0, 1, 2]));
    for x in &v_points {
        let on_v = vanishes(p.iv(), x);
        let kept = on_v && !vanishes(&iv_removed, x);
        let off_f = red.f.as_ref().is_none_or(|f| !f.eval(x).is_zero());
        let ext = extends(red.pair.iv(), x);
        if ext != (on_v && off_f) {
            return fail(format!("x = {x:?}: extends = {ext}, on V = {on_v}, f ≠ 0 = {off_f}"));
        }
        if ext && !kept {
            return fail(format!("x = {x:?} extends but lies outside V∖V′"));
        }
        if red.exact_v && ext != kept {
            return fail(format!("x = {x:?} in V∖V′ does not extend"));
        }
        checked += 1;
    }

    let mut w_points: Vec<Vec<Rational>> = samples().iter().map(case.w_curve).filter(|y| !y.is_empty()).collect();
    w_points.extend(grid(n, &[-1, 1, 2]));
    for y in w_points.iter().filter(|y| y.iter().all(|c| !c.is_zero())) {
        let on_w = vanishes(p.iw(), y);
        let kept = on_w && !vanishes(&iw_removed, y);
        let off_g = match (&red.g, red.w_coordinate) {
            (Some(g), Some(_)) => !g.eval(y).is_zero(),
            _ => true,
        };
        let ext = extends(red.pair.iw(), y);
        if ext != (on_w && off_g) {
            return fail(format!("y = {y:?}: extends = {ext}, on W = {on_w}, g ≠ 0 = {off_g}"));
        }
        if ext && !kept {
            return fail(format!("y = {y:?} extends but lies outside W∖W′"));
        }
        if red.exact_w && ext != kept {
            return fail(format!("y = {y:?} in W∖W′ does not extend"));
        }
        checked += 1;
    }
    Ok(checked)
}
