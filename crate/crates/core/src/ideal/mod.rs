//! Ideals, normal forms, Krull dimension, elimination, unit saturation and
//! affine-linear relations.
//!
//! All checks work at the level of ideal membership, not radical
//! membership. For a non-radical input ideal a polynomial vanishing on the
//! variety may still have a nonzero normal form; callers that need
//! set-theoretic answers use [`Ideal::radical_contains`] explicitly.

mod groebner;
mod order;

pub use groebner::{
    default_step_limit, groebner_basis, groebner_basis_with_limit, set_default_step_limit, GroebnerBasis,
    DEFAULT_STEP_LIMIT,
};
pub use order::MonomialOrder;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational, Ring};
use crate::error::Result;
use crate::linalg;

/// Krull dimension together with a maximal set of variables independent
/// modulo the leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    /// `-1` for the empty variety.
    pub dim: i64,
    pub witness: Vec<usize>,
}

/// Which order to use when projecting away variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// Block order, grevlex inside each block.
    Block,
    /// Pure lexicographic order.
    Lex,
    /// Block order with the eliminated variables taken in reverse.
    Reversed,
}

/// A polynomial ideal. Reduced Gröbner bases are computed on demand and
/// cached per monomial order.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}<", self.ring)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        for g in &gens {
            assert_eq!(g.ring(), ring, "generator from a different ring");
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    fn with_basis(ring: &Ring, basis: GroebnerBasis) -> Ideal {
        let ideal = Ideal::new(ring, basis.polys().to_vec());
        ideal.cache.lock().unwrap().insert(basis.order(), Arc::new(basis));
        ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis for `order`. Concurrent callers share one
    /// computation per order.
    pub fn basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(b) = cache.get(&order) {
            return Ok(b.clone());
        }
        let b = Arc::new(groebner_basis(&self.ring, &self.gens, order)?);
        cache.insert(order, b.clone());
        Ok(b)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.normal_form_with(p, MonomialOrder::GrevLex)
    }

    pub fn normal_form_with(&self, p: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        self.basis(order)?.normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis(MonomialOrder::GrevLex)?.is_unit())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Same ideal, judged by reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.ring == other.ring
            && self.basis(MonomialOrder::GrevLex)?.polys() == other.basis(MonomialOrder::GrevLex)?.polys())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, g: Polynomial) -> Ideal {
        let mut gens = self.gens.clone();
        gens.push(g);
        Ideal::new(&self.ring, gens)
    }

    /// Radical membership via the Rabinowitsch trick: `p` vanishes on the
    /// variety iff `1 ∈ I + ⟨1 − t·p⟩`.
    pub fn radical_contains(&self, p: &Polynomial) -> Result<bool> {
        if self.contains(p)? {
            return Ok(true);
        }
        let n = self.ring.nvars();
        let mut names = vec!["_rabinowitsch".to_string()];
        names.extend(self.ring.names().iter().cloned());
        let big = Ring::new(names);
        let shift: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big, &shift)).collect();
        let t = Polynomial::var(&big, 0);
        gens.push(&Polynomial::one(&big) - &(&t * &p.embed(&big, &shift)));
        Ok(groebner_basis(&big, &gens, MonomialOrder::GrevLex)?.is_unit())
    }

    pub fn dim(&self) -> Result<DimensionResult> {
        self.dim_with(MonomialOrder::GrevLex)
    }

    /// Krull dimension of `V(I)`: the largest set of variables no leading
    /// monomial of the basis is supported in.
    pub fn dim_with(&self, order: MonomialOrder) -> Result<DimensionResult> {
        let basis = self.basis(order)?;
        if basis.is_unit() {
            return Ok(DimensionResult { dim: -1, witness: Vec::new() });
        }
        let lms = basis.leading_monomials();
        Ok(max_independent_set(self.ring.nvars(), &lms))
    }

    /// `I ∩ Q[keep]`: the ideal of the Zariski closure of the projection onto
    /// the kept coordinates. The result lives in a ring with the kept
    /// variables' names, in the given order.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        self.eliminate_with(keep, Elimination::Block)
    }

    pub fn eliminate_with(&self, keep: &[usize], strategy: Elimination) -> Result<Ideal> {
        let n = self.ring.nvars();
        let mut is_kept = vec![false; n];
        for &k in keep {
            is_kept[k] = true;
        }
        let dropped: Vec<usize> = (0..n).filter(|&i| !is_kept[i]).collect();
        let target = Ring::new(keep.iter().map(|&i| self.ring.name(i).to_string()));
        if dropped.is_empty() && keep.iter().enumerate().all(|(a, &b)| a == b) {
            return Ok(self.clone());
        }
        let mut dropped = dropped;
        if strategy == Elimination::Reversed {
            dropped.reverse();
        }
        let mut names: Vec<String> = dropped.iter().map(|&i| self.ring.name(i).to_string()).collect();
        names.extend(keep.iter().map(|&i| self.ring.name(i).to_string()));
        let big = Ring::new(names);
        let mut var_map = vec![0; n];
        for (pos, &i) in dropped.iter().chain(keep.iter()).enumerate() {
            var_map[i] = pos;
        }
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big, &var_map)).collect();
        let split = dropped.len();
        let (order, tail_order) = match strategy {
            Elimination::Block | Elimination::Reversed => (MonomialOrder::Block(split), MonomialOrder::GrevLex),
            Elimination::Lex => (MonomialOrder::Lex, MonomialOrder::Lex),
        };
        let basis = groebner_basis(&big, &gens, order)?;
        let restricted = basis.restrict_to_tail(split, &target, tail_order);
        Ok(Ideal::with_basis(&target, restricted))
    }

    /// Ideal of the closure of `V(I) ∩ {y_i ≠ 0 for i in vars}`, via one
    /// auxiliary variable `z` with `z·∏ y_i − 1`.
    pub fn saturate_units(&self, vars: &[usize]) -> Result<Ideal> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let mut names = vec!["_inverse".to_string()];
        names.extend(self.ring.names().iter().cloned());
        let big = Ring::new(names);
        let shift: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big, &shift)).collect();
        let mut e = vec![0u32; n + 1];
        e[0] = 1;
        for &v in vars {
            e[v + 1] += 1;
        }
        gens.push(&Polynomial::monomial(&big, Monomial(e), Rational::one()) - &Polynomial::one(&big));
        let keep: Vec<usize> = (1..=n).collect();
        Ideal::new(&big, gens).eliminate(&keep)
    }

    /// Basis of the affine-linear polynomials `c0 + Σ c_i x_i` in the ideal,
    /// in reduced echelon form with the variables leading.
    pub fn linear_part(&self) -> Result<Vec<Polynomial>> {
        let n = self.ring.nvars();
        let mut candidates: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&self.ring, i)).collect();
        candidates.push(Polynomial::one(&self.ring));
        let relations = self.linear_relations(&candidates)?;
        Ok(relations
            .iter()
            .map(|c| Polynomial::affine_linear(&self.ring, &c[n], &c[..n]))
            .collect())
    }

    /// Basis of homogeneous linear relations `Σ c_i x_i ∈ I`, as rows of
    /// coefficient vectors in reduced echelon form.
    pub fn homogeneous_linear_part(&self) -> Result<Vec<Vec<Rational>>> {
        let candidates: Vec<Polynomial> = (0..self.ring.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect();
        self.linear_relations(&candidates)
    }

    /// Kernel of `c ↦ NF(Σ c_j p_j)`, which is linear in `c`.
    fn linear_relations(&self, candidates: &[Polynomial]) -> Result<Vec<Vec<Rational>>> {
        let basis = self.basis(MonomialOrder::GrevLex)?;
        let nfs: Vec<Polynomial> = candidates.iter().map(|p| basis.normal_form(p)).collect::<Result<_>>()?;
        let mut monomials: Vec<Monomial> = nfs.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.clone())).collect();
        monomials.sort();
        monomials.dedup();
        let rows: Vec<Vec<Rational>> =
            monomials.iter().map(|m| nfs.iter().map(|p| p.coefficient(m)).collect()).collect();
        let kernel = linalg::kernel(&rows, candidates.len());
        Ok(linalg::rref(&kernel).0)
    }
}

/// Largest (then lexicographically first) set of variables containing the
/// support of no leading monomial.
fn max_independent_set(n: usize, lms: &[Monomial]) -> DimensionResult {
    let supports: Vec<u64> = lms
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let independent = |mask: u64| supports.iter().all(|&s| s & !mask != 0);
    for size in (0..=n).rev() {
        let mut found = None;
        for_each_combination(n, size, &mut |combo: &[usize]| {
            if found.is_some() {
                return;
            }
            let mask = combo.iter().fold(0u64, |acc, &i| acc | (1 << i));
            if independent(mask) {
                found = Some(combo.to_vec());
            }
        });
        if let Some(w) = found {
            return DimensionResult { dim: size as i64, witness: w };
        }
    }
    unreachable!("the empty set is always independent for a proper ideal")
}

pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    use num_traits::Signed;
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|c| !c.is_zero()).map(|c| c.signum()).unwrap();
    ints.iter().map(|c| c / &g * &sign).collect()
}
