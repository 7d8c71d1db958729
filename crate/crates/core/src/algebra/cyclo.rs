use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{Monomial, Polynomial, Rational, Ring};

fn t_ring() -> Ring {
    static RING: OnceLock<Ring> = OnceLock::new();
    RING.get_or_init(|| Ring::new(["t"])).clone()
}

/// Long division in a univariate ring. Panics on a zero divisor or a ring
/// with more than one variable.
pub fn univariate_div_rem(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    assert_eq!(a.ring().nvars(), 1, "univariate division needs a one-variable ring");
    assert!(!b.is_zero(), "division by zero polynomial");
    let ring = a.ring().clone();
    let (bm, bc) = b.terms()[0].clone();
    let db = bm.0[0];
    let mut q = Polynomial::zero(&ring);
    let mut r = a.clone();
    while let Some((rm, rc)) = r.terms().first().cloned() {
        if rm.0[0] < db {
            break;
        }
        let factor = Monomial(vec![rm.0[0] - db]);
        let coeff = rc / &bc;
        q = &q + &Polynomial::monomial(&ring, factor.clone(), coeff.clone());
        r = &r - &b.mul_monomial(&factor, &coeff);
    }
    (q, r)
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// The `l`-th cyclotomic polynomial in the variable `t`, obtained by exact
/// division of `t^l - 1` by the cyclotomic polynomials of the proper
/// divisors of `l`.
pub fn cyclotomic(l: u64) -> Polynomial {
    assert!(l >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, Polynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&l) {
        return p.clone();
    }
    let ring = t_ring();
    let mut num = &Polynomial::monomial(&ring, Monomial(vec![l as u32]), Rational::one()) - &Polynomial::one(&ring);
    for d in (1..l).filter(|d| l.is_multiple_of(*d)) {
        let (q, r) = univariate_div_rem(&num, &cyclotomic(d));
        debug_assert!(r.is_zero());
        num = q;
    }
    cache.lock().unwrap().insert(l, num.clone());
    num
}

/// Element of the cyclotomic field `Q(ζ_l)`, stored as a polynomial in `t`
/// of degree below `φ(l)`, where `t` stands for `ζ_l = exp(2πi/l)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    level: u64,
    coords: Polynomial,
}

impl CycloElement {
    fn reduced(level: u64, p: Polynomial) -> CycloElement {
        let (_, r) = univariate_div_rem(&p, &cyclotomic(level));
        CycloElement { level, coords: r }
    }

    pub fn from_rational(level: u64, c: Rational) -> CycloElement {
        CycloElement { level, coords: Polynomial::constant(&t_ring(), c) }
    }

    pub fn one(level: u64) -> CycloElement {
        CycloElement::from_rational(level, Rational::one())
    }

    pub fn zero(level: u64) -> CycloElement {
        CycloElement::from_rational(level, Rational::zero())
    }

    /// The generator `ζ_l`.
    pub fn zeta(level: u64) -> CycloElement {
        CycloElement::reduced(level, Polynomial::var(&t_ring(), 0))
    }

    /// `ζ_l^k` for any integer `k`.
    pub fn zeta_pow(level: u64, k: i64) -> CycloElement {
        let e = k.rem_euclid(level as i64) as u32;
        CycloElement::reduced(level, Polynomial::monomial(&t_ring(), Monomial(vec![e]), Rational::one()))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Coordinates as a polynomial in `t`.
    pub fn coords(&self) -> &Polynomial {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coords.as_constant().is_some_and(|c| c.is_one())
    }

    /// Re-expresses the element in `Q(ζ_m)` for a multiple `m` of the level,
    /// using `ζ_l = ζ_m^{m/l}`.
    pub fn lift(&self, target: u64) -> Result<CycloElement> {
        if !target.is_multiple_of(self.level) {
            return Err(Error::Precondition(format!(
                "cannot lift from level {} to level {target}",
                self.level
            )));
        }
        let step = (target / self.level) as u32;
        let ring = t_ring();
        let image = Polynomial::monomial(&ring, Monomial(vec![step]), Rational::one());
        Ok(CycloElement::reduced(target, self.coords.substitute(&[image])?))
    }

    pub fn pow(&self, e: u64) -> CycloElement {
        let mut result = CycloElement::one(self.level);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Brings both operands to the lcm of their levels.
    fn align(a: &CycloElement, b: &CycloElement) -> (CycloElement, CycloElement) {
        if a.level == b.level {
            return (a.clone(), b.clone());
        }
        let l = a.level.lcm(&b.level);
        (a.lift(l).unwrap(), b.lift(l).unwrap())
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        let (a, b) = CycloElement::align(self, rhs);
        CycloElement { level: a.level, coords: &a.coords + &b.coords }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        let (a, b) = CycloElement::align(self, rhs);
        CycloElement { level: a.level, coords: &a.coords - &b.coords }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        let (a, b) = CycloElement::align(self, rhs);
        CycloElement::reduced(a.level, &a.coords * &b.coords)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { level: self.level, coords: -&self.coords }
    }
}

impl Add for CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: CycloElement) -> CycloElement {
        &self + &rhs
    }
}

impl Mul for CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: CycloElement) -> CycloElement {
        &self * &rhs
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.coords.to_string().replace('t', &format!("z{}", self.level));
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement[{}]({})", self.level, self)
    }
}

impl Polynomial {
    /// Evaluates at a point with cyclotomic coordinates.
    pub fn eval_cyclo(&self, point: &[CycloElement]) -> CycloElement {
        let level = point.iter().map(|p| p.level()).fold(1, |a, b| a.lcm(&b));
        let lifted: Vec<CycloElement> = point.iter().map(|p| p.lift(level).unwrap()).collect();
        self.eval_with(&lifted, |c| CycloElement::from_rational(level, c.clone()))
    }
}
