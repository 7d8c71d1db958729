use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};

use super::{AdditiveVerdict, MultiplicativeVerdict, NormalityVerdict, VarietyPair};

/// Largest numerator and denominator of a cut coefficient.
pub const COEFFICIENT_BOUND: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutOptions {
    /// Height bound for the normality and freeness checks.
    pub height: u64,
    /// Also cut a curve down to points (`dim V = 1`).
    pub allow_terminal: bool,
}

impl CutOptions {
    pub fn new(height: u64) -> CutOptions {
        CutOptions { height, allow_terminal: false }
    }
}

/// Result of intersecting `V` with a generic hyperplane.
#[derive(Clone, Debug)]
pub struct CutReport {
    pub pair: VarietyPair,
    pub seed: u64,
    /// Coefficients `c_i` of `Σ c_i x_i = 1`.
    pub coefficients: Vec<Rational>,
    pub dim_v_before: i64,
    pub dim_v_after: i64,
    pub dim_w: i64,
    pub d_before: i64,
    pub d_after: i64,
    pub normality: NormalityVerdict,
    pub additive: AdditiveVerdict,
    pub multiplicative: MultiplicativeVerdict,
}

impl CutReport {
    /// The cut pair is normal and free at the bound and `d` dropped by one.
    pub fn preserved(&self) -> bool {
        self.normality.is_normal()
            && self.additive.is_free()
            && self.multiplicative.is_free()
            && self.d_after == self.d_before - 1
    }

    /// Human-readable list of checks that failed.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.normality.is_normal() {
            out.push("cut pair is not normal".to_string());
        }
        if !self.additive.is_free() {
            out.push("cut pair has an additive dependence".to_string());
        }
        if !self.multiplicative.is_free() {
            out.push("cut pair has a multiplicative dependence".to_string());
        }
        out
    }
}

/// Draws `n` nonzero rationals with numerator and denominator of absolute
/// value at most [`COEFFICIENT_BOUND`].
pub fn draw_coefficients(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let num = rng.gen_range(1..=COEFFICIENT_BOUND) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = rng.gen_range(1..=COEFFICIENT_BOUND);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Intersects `V` with `Σ c_i x_i = 1` for seeded pseudo-random `c`.
pub fn cut(p: &VarietyPair, seed: u64, height: u64) -> Result<CutReport> {
    cut_with(p, seed, CutOptions::new(height))
}

pub fn cut_with(p: &VarietyPair, seed: u64, options: CutOptions) -> Result<CutReport> {
    let h = options.height;
    let n = p.n() as i64;
    let dim_v = p.dim_v()?;
    let dim_w = p.dim_w()?;
    let d = dim_v + dim_w - n;
    let min_dim = if options.allow_terminal { 1 } else { 2 };
    if dim_v < min_dim {
        return Err(Error::Precondition(format!("cutting needs dim V ≥ {min_dim}, found {dim_v}")));
    }
    if d <= 0 {
        return Err(Error::Precondition(format!("cutting needs dim V + dim W − n > 0, found {d}")));
    }
    if !p.normal_check(h)?.is_normal() {
        return Err(Error::Precondition(format!("the pair is not normal at height {h}")));
    }
    if !p.additive_free()?.is_free() || !p.multiplicative_free(h)?.is_free() {
        return Err(Error::Precondition(format!("the pair is not free at height {h}")));
    }

    let c = draw_coefficients(p.n(), seed);
    let ring = p.iv().ring().clone();
    let minus_one = -Rational::from_integer(1.into());
    let hyperplane = Polynomial::affine_linear(&ring, &minus_one, &c);
    let iv = p.iv().with_generator(hyperplane);
    if iv.is_unit()? {
        return Err(Error::DegenerateCut(format!("the hyperplane misses V for seed {seed}; draw another seed")));
    }
    let mut params = p.parameters().to_vec();
    let mut row = vec![minus_one];
    row.extend(c.iter().cloned());
    params.push(row);
    let cut_pair = VarietyPair::new(iv, p.iw().clone(), p.irreducible_v(), p.irreducible_w())?.with_parameters(params);
    let dim_after = cut_pair.dim_v()?;
    if dim_after != dim_v - 1 {
        return Err(Error::DegenerateCut(format!(
            "dim V went from {dim_v} to {dim_after} for seed {seed}; draw another seed"
        )));
    }
    Ok(CutReport {
        normality: cut_pair.normal_check(h)?,
        additive: cut_pair.additive_free()?,
        multiplicative: cut_pair.multiplicative_free(h)?,
        pair: cut_pair,
        seed,
        coefficients: c,
        dim_v_before: dim_v,
        dim_v_after: dim_after,
        dim_w,
        d_before: d,
        d_after: dim_after + dim_w - n,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::pair;
    use super::*;

    #[test]
    fn plane_to_line() {
        let r = cut(&VarietyPair::full(2), 7, 3).unwrap();
        assert_eq!((r.dim_v_before, r.dim_v_after, r.d_before, r.d_after), (2, 1, 2, 1));
        assert!(r.preserved(), "{:?}", r.failures());
    }

    #[test]
    fn curve_needs_terminal_option() {
        let p = pair(2, &["x2 - x1^2"], &[]);
        assert!(matches!(cut(&p, 1, 2), Err(Error::Precondition(_))));
        let r = cut_with(&p, 1, CutOptions { height: 2, allow_terminal: true }).unwrap();
        assert_eq!(r.dim_v_after, 0);
    }

    #[test]
    fn coefficients_are_reproducible() {
        assert_eq!(draw_coefficients(3, 42), draw_coefficients(3, 42));
        assert_ne!(draw_coefficients(3, 42), draw_coefficients(3, 43));
        for c in draw_coefficients(20, 5) {
            assert!(c.numer().magnitude() <= &BigInt::from(COEFFICIENT_BOUND).magnitude().clone());
            assert!(*c.denom() <= BigInt::from(COEFFICIENT_BOUND));
        }
    }
}
