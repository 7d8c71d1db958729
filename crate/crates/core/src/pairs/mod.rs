//! Pairs `(V, W)` with `V ⊆ D^n` and `W ⊆ (R^×)^n`: freeness, normality,
//! the axiom-instance qualifier, the open-subset reduction, hyperplane
//! cuts, associated root sequences and the dimension bound.
//!
//! Both ideals have rational coefficients. `V` lives in `x1..xn`, `W` in
//! `y1..yn`. Bounded checks quantify over integer vectors of height at most
//! `H` and every verdict carries that bound.

mod cut;
mod reduce;
mod roots;

pub use cut::{cut, cut_with, CutOptions, CutReport};
pub use reduce::{reduce, Reduction};
pub use roots::{associated_preimage, point_in, unity_action};

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::ideal::{primitive_integer_vector, Ideal};
use crate::lattice::{self, split_signs, IntMatrix, Sublattice};
use crate::linalg;

/// A pair of varieties over `Q`.
#[derive(Clone)]
pub struct VarietyPair {
    n: usize,
    iv: Ideal,
    iw: Ideal,
    irreducible_v: bool,
    irreducible_w: bool,
    /// Affine hyperplanes `c0 + Σ c_i x_i` imposed with generic
    /// coefficients. They stand in for parameters, so they do not count as
    /// additive dependencies.
    parameters: Vec<Vec<Rational>>,
    torus_w: OnceLock<Ideal>,
}

impl fmt::Debug for VarietyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VarietyPair")
            .field("n", &self.n)
            .field("iv", &self.iv)
            .field("iw", &self.iw)
            .field("irreducible_v", &self.irreducible_v)
            .field("irreducible_w", &self.irreducible_w)
            .finish()
    }
}

/// Additive freeness: no `Σ m_i x_i = c` on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdditiveVerdict {
    Free,
    Dependent { m: Vec<BigInt>, c: Rational },
}

/// Multiplicative freeness up to a height bound: no `y^m = c` on `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicativeVerdict {
    FreeUpTo(u64),
    Dependent { m: Vec<BigInt>, c: Rational, height: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityVerdict {
    NormalUpTo(u64),
    NotNormal { witness: Sublattice, dim_v: i64, dim_w: i64, k: usize, height: u64 },
}

impl NormalityVerdict {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityVerdict::NormalUpTo(_))
    }
}

impl AdditiveVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, AdditiveVerdict::Free)
    }
}

impl MultiplicativeVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, MultiplicativeVerdict::FreeUpTo(_))
    }
}

/// Whether a pair is an instance of the existential axiom scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub additive: AdditiveVerdict,
    pub multiplicative: MultiplicativeVerdict,
    pub normality: NormalityVerdict,
    pub irreducible_v: bool,
    pub irreducible_w: bool,
    pub height: u64,
}

impl AxiomReport {
    pub fn qualifies(&self) -> bool {
        self.additive.is_free()
            && self.multiplicative.is_free()
            && self.normality.is_normal()
            && self.irreducible_v
            && self.irreducible_w
    }

    /// Reasons the pair does not qualify; empty when it does.
    pub fn obstructions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let AdditiveVerdict::Dependent { m, c } = &self.additive {
            out.push(format!("additive dependence {} = {c} on V", linear_form(m)));
        }
        if let MultiplicativeVerdict::Dependent { m, c, .. } = &self.multiplicative {
            out.push(format!("multiplicative dependence {} = {c} on W", monomial_form(m)));
        }
        if let NormalityVerdict::NotNormal { witness, dim_v, dim_w, k, .. } = &self.normality {
            out.push(format!("not normal: lattice {witness} gives {dim_v} + {dim_w} < {k}"));
        }
        if !self.irreducible_v {
            out.push("V is not asserted irreducible".into());
        }
        if !self.irreducible_w {
            out.push("W is not asserted irreducible".into());
        }
        out
    }
}

/// The dimension bound for a qualifying pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdimReport {
    /// `dim V + dim W − n`.
    pub bound: i64,
    pub dim_v: i64,
    pub dim_w: i64,
    pub full_v: bool,
    pub full_w: bool,
    pub height: u64,
}

/// `m1*x1 + m2*x2 ...` with integer coefficients.
pub fn linear_form(m: &[BigInt]) -> String {
    let ring = Ring::indexed("x", m.len());
    let coeffs: Vec<Rational> = m.iter().map(|c| Rational::from_integer(c.clone())).collect();
    Polynomial::affine_linear(&ring, &Rational::zero(), &coeffs).to_string()
}

/// `y^{m+} / y^{m−}` written with the ring's names.
pub fn monomial_form(m: &[BigInt]) -> String {
    let ring = Ring::indexed("y", m.len());
    let (plus, minus) = split_signs(m);
    let p = Polynomial::monomial(&ring, Monomial(plus), Rational::one());
    if minus.iter().all(|&e| e == 0) {
        return p.to_string();
    }
    let q = Polynomial::monomial(&ring, Monomial(minus), Rational::one());
    format!("{p}/{q}")
}

impl VarietyPair {
    /// Builds a pair. `iv` must live in `n` variables (the `x`), `iw` in `n`
    /// variables (the `y`). Rejects empty varieties and a `W` without torus
    /// points.
    pub fn new(iv: Ideal, iw: Ideal, irreducible_v: bool, irreducible_w: bool) -> Result<VarietyPair> {
        let n = iv.ring().nvars();
        if iw.ring().nvars() != n {
            return Err(Error::Precondition(format!(
                "V has {n} coordinates but W has {}",
                iw.ring().nvars()
            )));
        }
        if iv.is_unit()? {
            return Err(Error::EmptyVariety { side: "V" });
        }
        if iw.is_unit()? {
            return Err(Error::EmptyVariety { side: "W" });
        }
        let all: Vec<usize> = (0..n).collect();
        let torus = iw.saturate_units(&all)?;
        if torus.is_unit()? {
            return Err(Error::EmptyTorusPart);
        }
        let torus_w = OnceLock::new();
        let _ = torus_w.set(torus);
        Ok(VarietyPair { n, iv, iw, irreducible_v, irreducible_w, parameters: Vec::new(), torus_w })
    }

    /// `(D^n, (R^×)^n)`.
    pub fn full(n: usize) -> VarietyPair {
        VarietyPair::new(Ideal::zero(&Ring::indexed("x", n)), Ideal::zero(&Ring::indexed("y", n)), true, true)
            .expect("the full pair is valid")
    }

    pub(crate) fn with_parameters(mut self, parameters: Vec<Vec<Rational>>) -> VarietyPair {
        self.parameters = parameters;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn iv(&self) -> &Ideal {
        &self.iv
    }

    pub fn iw(&self) -> &Ideal {
        &self.iw
    }

    pub fn irreducible_v(&self) -> bool {
        self.irreducible_v
    }

    pub fn irreducible_w(&self) -> bool {
        self.irreducible_w
    }

    /// Affine rows `(c0, c1..cn)` of hyperplanes added by cuts.
    pub fn parameters(&self) -> &[Vec<Rational>] {
        &self.parameters
    }

    /// The ideal of the closure of `W ∩ (R^×)^n`.
    pub fn torus_w(&self) -> &Ideal {
        self.torus_w.get().expect("set on construction")
    }

    pub fn dim_v(&self) -> Result<i64> {
        Ok(self.iv.dim()?.dim)
    }

    pub fn dim_w(&self) -> Result<i64> {
        Ok(self.torus_w().dim()?.dim)
    }

    /// `Free` unless `V` satisfies an affine-linear equation that is not a
    /// combination of the cut hyperplanes.
    pub fn additive_free(&self) -> Result<AdditiveVerdict> {
        let n = self.n;
        for p in self.iv.linear_part()? {
            let (c0, lin) = p.as_affine_linear().expect("linear part is affine-linear");
            let mut row = vec![c0.clone()];
            row.extend(lin.iter().cloned());
            if linalg::in_span(&self.parameters, &row) {
                continue;
            }
            // Σ lin_i x_i + c0 ∈ I  ⇒  Σ m_i x_i = c with m primitive
            let m = primitive_integer_vector(&lin);
            let scale = &Rational::from_integer(m.iter().find(|x| !x.is_zero()).unwrap().clone())
                / lin.iter().find(|x| !x.is_zero()).unwrap();
            let c = -(c0 * scale);
            debug_assert_eq!(m.len(), n);
            return Ok(AdditiveVerdict::Dependent { m, c });
        }
        Ok(AdditiveVerdict::Free)
    }

    /// Looks for `y^{m+} = c·y^{m−}` on the torus part of `W`, over
    /// primitive `m` of height at most `h`, one per sign class, in order of
    /// height.
    pub fn multiplicative_free(&self, h: u64) -> Result<MultiplicativeVerdict> {
        if h == 0 {
            return Err(Error::Precondition("height bound must be at least 1".into()));
        }
        let torus = self.torus_w();
        if torus.is_zero_ideal() {
            return Ok(MultiplicativeVerdict::FreeUpTo(h));
        }
        let basis = torus.basis(crate::ideal::MonomialOrder::GrevLex)?;
        let ring = torus.ring().clone();
        let vectors = lattice::primitive_vectors(self.n, h as i64);
        let found = vectors
            .par_iter()
            .map(|v| -> Result<Option<(Vec<BigInt>, Rational)>> {
                let m: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                let (plus, minus) = split_signs(&m);
                let a = basis.normal_form(&Polynomial::monomial(&ring, Monomial(plus), Rational::one()))?;
                let b = basis.normal_form(&Polynomial::monomial(&ring, Monomial(minus), Rational::one()))?;
                Ok(proportional(&a, &b).map(|c| (m, c)))
            })
            .find_first(|r| !matches!(r, Ok(None)));
        match found {
            None => Ok(MultiplicativeVerdict::FreeUpTo(h)),
            Some(Err(e)) => Err(e),
            Some(Ok(Some((m, c)))) => Ok(MultiplicativeVerdict::Dependent { m, c, height: h }),
            Some(Ok(None)) => unreachable!(),
        }
    }

    /// Dimensions of the linear image of `V` and the monomial image of `W`
    /// under the lattice basis.
    pub fn image_dims(&self, l: &Sublattice) -> Result<(i64, i64)> {
        let m = l.basis();
        let dv = lattice::lin_image(&self.iv, m)?.dim()?.dim;
        let dw = lattice::mono_image_torus(self.torus_w(), m, crate::ideal::Elimination::Block)?.dim()?.dim;
        Ok((dv, dw))
    }

    /// Checks `dim V′ + dim W′ ≥ k` for every sublattice up to height `h`.
    /// Coordinate projections are tried first; the reported witness is the
    /// first failure in enumeration order.
    pub fn normal_check(&self, h: u64) -> Result<NormalityVerdict> {
        if h == 0 {
            return Err(Error::Precondition("height bound must be at least 1".into()));
        }
        let lattices = lattice::all_sublattices(self.n, h);
        let torus = self.torus_w();
        let found = lattices
            .par_iter()
            .map(|l| -> Result<Option<(i64, i64)>> {
                let k = l.rank() as i64;
                let m = l.basis();
                let dv = if self.iv.is_zero_ideal() { k } else { lattice::lin_image(&self.iv, m)?.dim()?.dim };
                if dv >= k {
                    return Ok(None);
                }
                let dw = if torus.is_zero_ideal() {
                    k
                } else {
                    lattice::mono_image_torus(torus, m, crate::ideal::Elimination::Block)?.dim()?.dim
                };
                Ok((dv + dw < k).then_some((dv, dw)))
            })
            .enumerate()
            .find_first(|(_, r)| !matches!(r, Ok(None)));
        match found {
            None => Ok(NormalityVerdict::NormalUpTo(h)),
            Some((_, Err(e))) => Err(e),
            Some((i, Ok(Some((dim_v, dim_w))))) => Ok(NormalityVerdict::NotNormal {
                witness: lattices[i].clone(),
                dim_v,
                dim_w,
                k: lattices[i].rank(),
                height: h,
            }),
            Some((_, Ok(None))) => unreachable!(),
        }
    }

    pub fn axiom_instance(&self, h: u64) -> Result<AxiomReport> {
        Ok(AxiomReport {
            additive: self.additive_free()?,
            multiplicative: self.multiplicative_free(h)?,
            normality: self.normal_check(h)?,
            irreducible_v: self.irreducible_v,
            irreducible_w: self.irreducible_w,
            height: h,
        })
    }

    /// The lower bound `dim V + dim W − n` on the dimension of solutions,
    /// for a pair that qualifies at height `h`.
    pub fn adim_bound(&self, h: u64) -> Result<AdimReport> {
        let report = self.axiom_instance(h)?;
        if !report.qualifies() {
            return Err(Error::Precondition(format!(
                "the pair does not qualify at height {h}: {}",
                report.obstructions().join("; ")
            )));
        }
        let dim_v = self.dim_v()?;
        let dim_w = self.dim_w()?;
        Ok(AdimReport {
            bound: dim_v + dim_w - self.n as i64,
            dim_v,
            dim_w,
            full_v: dim_v == self.n as i64,
            full_w: dim_w == self.n as i64,
            height: h,
        })
    }

    /// The pair transported by `[M]` for a square matrix of full rank:
    /// `V` mapped linearly, `W` monomially.
    pub fn transform(&self, m: &IntMatrix) -> Result<VarietyPair> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::Precondition("transform needs a square matrix".into()));
        }
        let xr = Ring::indexed("x", self.n);
        let yr = Ring::indexed("y", self.n);
        let map: Vec<usize> = (0..self.n).collect();
        let rename = |i: Ideal, r: &Ring| Ideal::new(r, i.gens().iter().map(|g| g.embed(r, &map)).collect());
        let iv = rename(lattice::lin_image(&self.iv, m)?, &xr);
        let iw = rename(lattice::mono_image_torus(self.torus_w(), m, crate::ideal::Elimination::Block)?, &yr);
        VarietyPair::new(iv, iw, self.irreducible_v, self.irreducible_w)
    }
}

/// `c` with `a = c·b`, when `b ≠ 0` and such a scalar exists.
fn proportional(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    let (lb, cb) = b.terms().first()?;
    let (la, ca) = a.terms().first()?;
    if la != lb || a.nterms() != b.nterms() {
        return None;
    }
    let c = ca / cb;
    (a == &b.scale(&c)).then_some(c)
}

/// Sign-normalized primitive integer vector; exposed for witnesses built
/// elsewhere.
pub fn normalize_vector(v: &[BigInt]) -> Vec<BigInt> {
    let q: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let p = primitive_integer_vector(&q);
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        p.iter().map(|x| -x).collect()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_polynomial};

    pub(crate) fn pair(n: usize, v: &[&str], w: &[&str]) -> VarietyPair {
        let xr = Ring::indexed("x", n);
        let yr = Ring::indexed("y", n);
        let iv = Ideal::new(&xr, v.iter().map(|s| parse_polynomial(&xr, s).unwrap()).collect());
        let iw = Ideal::new(&yr, w.iter().map(|s| parse_polynomial(&yr, s).unwrap()).collect());
        VarietyPair::new(iv, iw, true, true).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn additive_examples() {
        assert_eq!(pair(2, &[], &[]).additive_free().unwrap(), AdditiveVerdict::Free);
        assert_eq!(
            pair(2, &["x1 + x2 - 1"], &[]).additive_free().unwrap(),
            AdditiveVerdict::Dependent { m: ints(&[1, 1]), c: int(1) }
        );
        assert_eq!(pair(2, &["x2 - x1^2"], &[]).additive_free().unwrap(), AdditiveVerdict::Free);
        assert_eq!(
            pair(2, &["2*x1 - 4*x2 + 3"], &[]).additive_free().unwrap(),
            AdditiveVerdict::Dependent { m: ints(&[1, -2]), c: crate::algebra::rat(-3, 2) }
        );
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(
            pair(2, &[], &["y1*y2 - 1"]).multiplicative_free(3).unwrap(),
            MultiplicativeVerdict::Dependent { m: ints(&[1, 1]), c: int(1), height: 3 }
        );
        for h in 1..=3 {
            assert_eq!(pair(2, &[], &[]).multiplicative_free(h).unwrap(), MultiplicativeVerdict::FreeUpTo(h));
        }
        assert_eq!(
            pair(2, &[], &["y2 - y1^2 - 1"]).multiplicative_free(3).unwrap(),
            MultiplicativeVerdict::FreeUpTo(3)
        );
        // y1² = 4·y2 reads as m = (2, −1), c = 4
        assert_eq!(
            pair(2, &[], &["y1^2 - 4*y2"]).multiplicative_free(3).unwrap(),
            MultiplicativeVerdict::Dependent { m: ints(&[2, -1]), c: int(4), height: 3 }
        );
    }

    #[test]
    fn normality_examples() {
        assert_eq!(pair(1, &[], &[]).normal_check(3).unwrap(), NormalityVerdict::NormalUpTo(3));
        match pair(2, &["x1", "x2"], &["y2 - y1"]).normal_check(3).unwrap() {
            NormalityVerdict::NotNormal { witness, dim_v, dim_w, k, height } => {
                assert_eq!((dim_v, dim_w, k, height), (0, 1, 2, 3));
                assert_eq!(witness, Sublattice::full(2));
            }
            v => panic!("expected a witness, got {v:?}"),
        }
        assert_eq!(pair(2, &["x1 + x2 - 1"], &[]).normal_check(3).unwrap(), NormalityVerdict::NormalUpTo(3));
    }

    #[test]
    fn axiom_and_adim() {
        let good = pair(2, &["x2 - x1^2"], &[]);
        assert!(good.axiom_instance(3).unwrap().qualifies());
        assert_eq!(good.adim_bound(3).unwrap().bound, 1);

        let full = VarietyPair::full(3);
        let r = full.adim_bound(2).unwrap();
        assert_eq!((r.bound, r.full_v, r.full_w), (3, true, true));

        let dependent = pair(2, &[], &["y1*y2 - 1"]);
        let rep = dependent.axiom_instance(3).unwrap();
        assert!(!rep.qualifies());
        assert!(rep.obstructions()[0].contains("multiplicative"));

        let point = pair(2, &["x1", "x2"], &["y2 - y1"]);
        assert!(!point.axiom_instance(3).unwrap().normality.is_normal());
        assert!(matches!(point.adim_bound(3), Err(Error::Precondition(_))));
    }

    #[test]
    fn construction_errors() {
        let xr = Ring::indexed("x", 1);
        let yr = Ring::indexed("y", 1);
        let y = Polynomial::var(&yr, 0);
        assert!(matches!(
            VarietyPair::new(Ideal::unit(&xr), Ideal::zero(&yr), true, true),
            Err(Error::EmptyVariety { side: "V" })
        ));
        assert!(matches!(
            VarietyPair::new(Ideal::zero(&xr), Ideal::new(&yr, vec![y]), true, true),
            Err(Error::EmptyTorusPart)
        ));
    }

    #[test]
    fn formatting() {
        assert_eq!(linear_form(&ints(&[1, -2])), "x1 - 2*x2");
        assert_eq!(monomial_form(&ints(&[2, -1])), "y1^2/y2");
        assert_eq!(monomial_form(&ints(&[1, 1])), "y1*y2");
        assert_eq!(normalize_vector(&ints(&[-2, 4])), ints(&[1, -2]));
    }
}
