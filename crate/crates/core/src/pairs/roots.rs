use crate::algebra::{CycloElement, Polynomial};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

use super::VarietyPair;

/// The full preimage of `W` under `y ↦ y^l`: generators `g(y^l)`. No
/// decomposition into components is attempted.
pub fn associated_preimage(p: &VarietyPair, l: u64) -> Result<Ideal> {
    preimage(p.iw(), l)
}

pub(crate) fn preimage(iw: &Ideal, l: u64) -> Result<Ideal> {
    if l == 0 {
        return Err(Error::Precondition("the root level must be at least 1".into()));
    }
    let e = u32::try_from(l).map_err(|_| Error::Precondition("root level too large".into()))?;
    let ring = iw.ring();
    let powers: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i).pow(e)).collect();
    let gens = iw.gens().iter().map(|g| g.substitute(&powers)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, gens))
}

/// Multiplies a point coordinatewise by roots of unity `ξ_i` with
/// `ξ_i^l = 1`.
pub fn unity_action(point: &[CycloElement], xi: &[CycloElement], l: u64) -> Result<Vec<CycloElement>> {
    if point.len() != xi.len() {
        return Err(Error::Precondition(format!("point has {} coordinates but ξ has {}", point.len(), xi.len())));
    }
    if l == 0 {
        return Err(Error::Precondition("the root level must be at least 1".into()));
    }
    for (i, x) in xi.iter().enumerate() {
        if !x.pow(l).is_one() {
            return Err(Error::Precondition(format!("ξ_{} = {x} is not an {l}-th root of unity", i + 1)));
        }
    }
    Ok(point.iter().zip(xi).map(|(a, b)| a * b).collect())
}

/// Whether every generator of the ideal vanishes at the point.
pub fn point_in(ideal: &Ideal, point: &[CycloElement]) -> bool {
    ideal.gens().iter().all(|g| g.eval_cyclo(point).is_zero())
}
