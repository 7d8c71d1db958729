use crate::algebra::{Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

use super::{linear_form, monomial_form, AdditiveVerdict, MultiplicativeVerdict, VarietyPair};

/// Output of [`reduce`]: a pair in more variables whose points are exactly
/// the extensions of points of `(V∖V′, W∖W′)` when both flags `exact_*`
/// hold. Otherwise the removed sets are `V(f)` and `V(g)`, which lie
/// inside `V′` and `W′`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub pair: VarietyPair,
    /// Exponent in `f·x^k = 1`.
    pub k: Option<u32>,
    /// The polynomial made invertible on `V`.
    pub f: Option<Polynomial>,
    /// The polynomial made invertible on `W`.
    pub g: Option<Polynomial>,
    /// Zero-based index of the coordinate added for `f`.
    pub v_coordinate: Option<usize>,
    /// Zero-based index of the coordinate added for `g`.
    pub w_coordinate: Option<usize>,
    pub exact_v: bool,
    pub exact_w: bool,
    /// `g` turned out to have no zeros on the torus part of `W`, so nothing
    /// was removed there.
    pub w_side_dropped: bool,
}

/// First generator of `removed` outside `base`, with exactness: every
/// other generator vanishes on `V(base + f)`.
fn pick(base: &Ideal, removed: &Ideal, side: &'static str) -> Result<Option<(Polynomial, bool)>> {
    if removed.is_unit()? {
        return Ok(None);
    }
    let f = match removed.gens().iter().find_map(|g| match base.contains(g) {
        Ok(true) => None,
        Ok(false) => Some(Ok(g.clone())),
        Err(e) => Some(Err(e)),
    }) {
        Some(f) => f?,
        None => {
            return Err(Error::Precondition(format!("{side}′ contains {side}, so nothing remains after removing it")))
        }
    };
    let cut = base.with_generator(f.clone());
    let mut exact = true;
    for g in removed.gens() {
        if !cut.radical_contains(g)? {
            exact = false;
            break;
        }
    }
    Ok(Some((f, exact)))
}

/// Replaces `(V, W)` by a pair whose projection is `(V∖V′, W∖W′)`: a new
/// coordinate with `f·x^k = 1` for a polynomial `f` of `I_V′` not in `I_V`,
/// and one with `g·y = 1` for `g` of `I_W′` not vanishing on `W`. A unit
/// ideal removes nothing. `k` is raised from 1 to `k_cap` until the output
/// is additively free and multiplicatively free up to `h`.
pub fn reduce(p: &VarietyPair, iv_removed: &Ideal, iw_removed: &Ideal, k_cap: u32, h: u64) -> Result<Reduction> {
    let n = p.n();
    if iv_removed.ring().nvars() != n || iw_removed.ring().nvars() != n {
        return Err(Error::Precondition(format!("removed sets must live in {n} coordinates")));
    }
    if k_cap == 0 {
        return Err(Error::Precondition("the exponent cap must be at least 1".into()));
    }
    let v_pick = pick(p.iv(), iv_removed, "V")?;
    let w_pick = pick(p.torus_w(), iw_removed, "W")?;

    let unchanged = |exact: bool| Reduction {
        pair: p.clone(),
        k: None,
        f: None,
        g: None,
        v_coordinate: None,
        w_coordinate: None,
        exact_v: exact,
        exact_w: exact,
        w_side_dropped: false,
    };
    if v_pick.is_none() && w_pick.is_none() {
        return Ok(unchanged(true));
    }

    let v_coordinate = v_pick.as_ref().map(|_| n);
    let mut w_coordinate = w_pick.as_ref().map(|_| n + usize::from(v_pick.is_some()));
    let mut w_side_dropped = false;
    let mut last_obstruction = String::new();

    let mut k = 1;
    while k <= k_cap {
        let width = n + usize::from(v_coordinate.is_some()) + usize::from(w_coordinate.is_some());
        let candidate = build(p, width, v_pick.as_ref().map(|(f, _)| f), w_pick.as_ref().map(|(g, _)| g), k, w_coordinate)?;
        let additive = candidate.additive_free()?;
        let multiplicative = candidate.multiplicative_free(h)?;
        if let MultiplicativeVerdict::Dependent { m, c, .. } = &multiplicative {
            let touches_new = w_coordinate.is_some_and(|w| m[w] != num_bigint::BigInt::from(0));
            if touches_new && !w_side_dropped {
                // g is a monomial times a unit on W: it has no zeros there
                w_side_dropped = true;
                w_coordinate = None;
                continue;
            }
            return Err(Error::ReductionFailed(format!(
                "the output carries the multiplicative dependence {} = {c}",
                monomial_form(m)
            )));
        }
        match additive {
            AdditiveVerdict::Free => {
                let (f, exact_v) = match &v_pick {
                    Some((f, e)) => (Some(f.clone()), *e),
                    None => (None, true),
                };
                let (g, exact_w) = match &w_pick {
                    Some((g, e)) => (Some(g.clone()), w_side_dropped || *e),
                    None => (None, true),
                };
                if v_coordinate.is_none() && w_coordinate.is_none() {
                    let mut r = unchanged(exact_v && exact_w);
                    r.g = g;
                    r.w_side_dropped = true;
                    return Ok(r);
                }
                return Ok(Reduction {
                    pair: candidate,
                    k: v_coordinate.map(|_| k),
                    f,
                    g,
                    v_coordinate,
                    w_coordinate,
                    exact_v,
                    exact_w,
                    w_side_dropped,
                });
            }
            AdditiveVerdict::Dependent { m, c } => {
                last_obstruction = format!("additive dependence {} = {c} at k = {k}", linear_form(&m));
            }
        }
        if v_coordinate.is_none() {
            break;
        }
        k += 1;
    }
    Err(Error::ReductionFailed(format!("no exponent up to {k_cap} gives a free pair; last obstruction: {last_obstruction}")))
}

fn build(
    p: &VarietyPair,
    width: usize,
    f: Option<&Polynomial>,
    g: Option<&Polynomial>,
    k: u32,
    w_coordinate: Option<usize>,
) -> Result<VarietyPair> {
    let n = p.n();
    let xr = Ring::indexed("x", width);
    let yr = Ring::indexed("y", width);
    let map: Vec<usize> = (0..n).collect();
    let mut v_gens: Vec<Polynomial> = p.iv().gens().iter().map(|q| q.embed(&xr, &map)).collect();
    if let Some(f) = f {
        let x_new = Polynomial::monomial(&xr, Monomial::var(width, n, k), Rational::from_integer(1.into()));
        v_gens.push(&(&f.embed(&xr, &map) * &x_new) - &Polynomial::one(&xr));
    }
    let mut w_gens: Vec<Polynomial> = p.iw().gens().iter().map(|q| q.embed(&yr, &map)).collect();
    if let (Some(g), Some(w)) = (g, w_coordinate) {
        w_gens.push(&(&g.embed(&yr, &map) * &Polynomial::var(&yr, w)) - &Polynomial::one(&yr));
    }
    let params = p
        .parameters()
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(width + 1, Rational::from_integer(0.into()));
            r
        })
        .collect();
    Ok(VarietyPair::new(Ideal::new(&xr, v_gens), Ideal::new(&yr, w_gens), p.irreducible_v(), p.irreducible_w())?
        .with_parameters(params))
}
