//! Buchberger's algorithm with sugar pair selection and the Gebauer–Möller
//! pair criteria.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

use super::MonomialOrder;

pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

static STEP_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_STEP_LIMIT);

/// Limit on reduction steps for bases computed through [`super::Ideal`].
pub fn default_step_limit() -> u64 {
    STEP_LIMIT.load(AtomicOrdering::Relaxed)
}

pub fn set_default_step_limit(limit: u64) {
    STEP_LIMIT.store(limit.max(1), AtomicOrdering::Relaxed);
}

/// Polynomial with terms sorted decreasingly by a fixed monomial order.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    pub terms: Vec<(Monomial, Rational)>,
    pub sugar: u32,
}

impl OrderedPoly {
    pub fn from_poly(p: &Polynomial, order: MonomialOrder) -> OrderedPoly {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = p.total_degree().unwrap_or(0);
        OrderedPoly { terms, sugar }
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, a) in self.terms.iter_mut() {
                    *a = &*a * &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, merging in the term order.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &OrderedPoly, order: MonomialOrder) -> OrderedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(t, a)| (t.mul(m), a * c));
        let mut rhs = shifted.peekable();
        let mut lhs = self.terms.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(lhs.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (t, a) = rhs.next().unwrap();
                    out.push((t, -a));
                }
                (Some((ta, _)), Some((tb, _))) => match order.cmp(ta, tb) {
                    Ordering::Greater => out.push(lhs.next().unwrap().clone()),
                    Ordering::Less => {
                        let (t, a) = rhs.next().unwrap();
                        out.push((t, -a));
                    }
                    Ordering::Equal => {
                        let (t, a) = lhs.next().unwrap();
                        let (_, b) = rhs.next().unwrap();
                        let d = a - b;
                        if !d.is_zero() {
                            out.push((t.clone(), d));
                        }
                    }
                },
            }
        }
        let sugar = self.sugar.max(m.degree() + g.sugar);
        OrderedPoly { terms: out, sugar }
    }
}

struct Reducer<'a> {
    order: MonomialOrder,
    steps: &'a mut u64,
    limit: u64,
}

impl Reducer<'_> {
    fn tick(&mut self) -> Result<()> {
        *self.steps += 1;
        if *self.steps > self.limit {
            Err(Error::StepLimit { limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Reduces until the leading monomial is irreducible by `basis`.
    fn top_reduce(&mut self, mut p: OrderedPoly, basis: &[&OrderedPoly]) -> Result<OrderedPoly> {
        'outer: while !p.is_zero() {
            for g in basis {
                if g.lm().divides(p.lm()) {
                    let m = g.lm().quotient_of(p.lm());
                    let c = &p.terms[0].1 / &g.terms[0].1;
                    p = p.sub_scaled(&c, &m, g, self.order);
                    self.tick()?;

                    continue 'outer;
                }
            }
            break;
        }
        Ok(p)
    }

    /// Full reduction: no term of the result is divisible by a leading
    /// monomial of `basis`.
    fn full_reduce(&mut self, p: OrderedPoly, basis: &[&OrderedPoly]) -> Result<OrderedPoly> {
        let mut rest = p;
        let mut done: Vec<(Monomial, Rational)> = Vec::new();
        let sugar = rest.sugar;
        loop {
            rest = self.top_reduce(rest, basis)?;
            if rest.is_zero() {
                break;
            }
            done.push(rest.terms.remove(0));
        }
        Ok(OrderedPoly { terms: done, sugar: sugar.max(rest.sugar) })
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Buchberger<'a> {
    order: MonomialOrder,
    polys: Vec<OrderedPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    steps: &'a mut u64,
    limit: u64,
}

impl Buchberger<'_> {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let lcm = a.lm().lcm(b.lm());
        let d = lcm.degree();
        let sugar = (a.sugar + d - a.lm().degree()).max(b.sugar + d - b.lm().degree());
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer–Möller update after adding the polynomial with index `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let candidates: Vec<Pair> =
            (0..h).filter(|&g| self.active[g]).map(|g| self.make_pair(g, h)).collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let lm_g = self.polys[p.i].lm();
            if lm_h.coprime(lm_g) {
                kept.push(p.clone());
                continue;
            }
            let dominated = candidates.iter().enumerate().any(|(jdx, q)| {
                jdx != idx && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || jdx < idx)
            });
            if !dominated {
                kept.push(p.clone());
            }
        }
        // product criterion
        kept.retain(|p| !lm_h.coprime(self.polys[p.i].lm()));

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let redundant = lm_h.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lm_h) != p.lcm
                && polys[p.j].lm().lcm(&lm_h) != p.lcm;
            !redundant
        });
        self.pairs.extend(kept);

        for g in 0..h {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn add(&mut self, mut p: OrderedPoly) -> bool {
        p.make_monic();
        let constant = p.lm().is_one();
        self.polys.push(p);
        self.active.push(true);
        let h = self.polys.len() - 1;
        self.update(h);
        constant
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> OrderedPoly {
        let (a, b) = (&self.polys[pair.i], &self.polys[pair.j]);
        let ma = a.lm().quotient_of(&pair.lcm);
        let mb = b.lm().quotient_of(&pair.lcm);
        // a and b are monic
        let scaled_a = OrderedPoly { terms: Vec::new(), sugar: 0 }.sub_scaled(&-Rational::one(), &ma, a, self.order);
        scaled_a.sub_scaled(&Rational::one(), &mb, b, self.order)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pair) = self.select() {
            let s = self.spoly(&pair);
            let refs: Vec<&OrderedPoly> =
                self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
            let mut red = Reducer { order: self.order, steps: &mut *self.steps, limit: self.limit };
            let h = red.top_reduce(s, &refs)?;
            if !h.is_zero() && self.add(h) {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    ordered: Vec<OrderedPoly>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.ordered.len() == 1 && self.ordered[0].lm().is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ordered.iter().map(|p| p.lm().clone()).collect()
    }

    /// Leading term of each element with respect to the basis order.
    pub fn leading_polys(&self) -> Vec<Polynomial> {
        self.ordered
            .iter()
            .map(|p| Polynomial::monomial(&self.ring, p.terms[0].0.clone(), p.terms[0].1.clone()))
            .collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.normal_form_with_limit(p, default_step_limit())
    }

    pub fn normal_form_with_limit(&self, p: &Polynomial, limit: u64) -> Result<Polynomial> {
        self.ring.check_same(p.ring())?;
        let mut steps = 0;
        let mut red = Reducer { order: self.order, steps: &mut steps, limit };
        let refs: Vec<&OrderedPoly> = self.ordered.iter().collect();
        let r = red.full_reduce(OrderedPoly::from_poly(p, self.order), &refs)?;
        Ok(r.to_poly(&self.ring))
    }

    /// Restricts a basis computed in a larger ring whose variables are
    /// `[eliminated…, kept…]` under `Block(split)` or `Lex` to the elements
    /// free of the eliminated block. The result is the reduced basis of the
    /// elimination ideal for the induced order on the kept block.
    pub(crate) fn restrict_to_tail(&self, split: usize, target: &Ring, tail_order: MonomialOrder) -> GroebnerBasis {
        let n = self.ring.nvars();
        let polys: Vec<Polynomial> = self
            .polys
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.0[..split].iter().all(|&e| e == 0)))
            .map(|p| {
                Polynomial::from_terms(target, p.terms().iter().map(|(m, c)| (Monomial(m.0[split..n].to_vec()), c.clone())))
            })
            .collect();
        GroebnerBasis::from_reduced(target, tail_order, polys)
    }

    fn from_reduced(ring: &Ring, order: MonomialOrder, polys: Vec<Polynomial>) -> GroebnerBasis {
        let mut ordered: Vec<OrderedPoly> = polys.iter().map(|p| OrderedPoly::from_poly(p, order)).collect();
        ordered.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let polys = ordered.iter().map(|p| p.to_poly(ring)).collect();
        GroebnerBasis { ring: ring.clone(), order, ordered, polys }
    }
}

/// Reduced Gröbner basis of `gens` under the global step limit.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis_with_limit(ring, gens, order, default_step_limit())
}

pub fn groebner_basis_with_limit(
    ring: &Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    limit: u64,
) -> Result<GroebnerBasis> {
    for g in gens {
        ring.check_same(g.ring())?;
    }
    let mut input: Vec<OrderedPoly> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| OrderedPoly::from_poly(g, order)).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    if input.is_empty() {
        return Ok(GroebnerBasis { ring: ring.clone(), order, ordered: Vec::new(), polys: Vec::new() });
    }

    let mut steps = 0u64;
    let mut bb = Buchberger {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        steps: &mut steps,
        limit,
    };
    let mut unit = false;
    for p in input {
        let refs: Vec<&OrderedPoly> = bb.polys.iter().zip(&bb.active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let mut red = Reducer { order, steps: &mut *bb.steps, limit };
        let h = red.full_reduce(p, &refs)?;
        if !h.is_zero() && bb.add(h) {
            unit = true;
            break;
        }
    }
    if !unit {
        bb.run()?;
    }

    let mut minimal: Vec<OrderedPoly> =
        bb.polys.iter().zip(&bb.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
    if let Some(c) = minimal.iter().find(|p| p.lm().is_one()) {
        minimal = vec![c.clone()];
    }
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    // drop duplicates of a leading monomial (possible only if two inputs tie)
    minimal.dedup_by(|a, b| a.lm() == b.lm());

    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&OrderedPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let head = OrderedPoly { terms: vec![minimal[i].terms[0].clone()], sugar: minimal[i].sugar };
        let tail = OrderedPoly { terms: minimal[i].terms[1..].to_vec(), sugar: minimal[i].sugar };
        let mut red = Reducer { order, steps: &mut steps, limit };
        let tail = red.full_reduce(tail, &others)?;
        let mut p = head;
        p.terms.extend(tail.terms);
        p.make_monic();
        reduced.push(p);
    }
    let polys = reduced.iter().map(|p| p.to_poly(ring)).collect();
    Ok(GroebnerBasis { ring: ring.clone(), order, ordered: reduced, polys })
}
