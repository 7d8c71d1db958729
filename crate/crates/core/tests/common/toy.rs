#![allow(dead_code)]

//! Fully enumerable toy structures: `∂` and the closure it induces,
//! evaluated on rational subspaces of a small configuration.

use std::collections::{BTreeSet, HashMap};

use expfield::algebra::Rational;
use expfield::lattice::{primitive_vectors, IntMatrix};
use expfield::linalg;
use expfield::predim::{kernel_demo, Configuration, SubsetSpec};
use expfield::Result;

use super::config;

type Key = Vec<Vec<Rational>>;

pub struct Toy {
    pub name: &'static str,
    pub config: Configuration,
    /// Elements as `1 × n` rows in generator coordinates.
    pub elements: Vec<IntMatrix>,
    /// Subsets `A` the laws are checked over.
    pub family: Vec<SubsetSpec>,
    height: u64,
    memo: HashMap<Key, i64>,
}

impl Toy {
    /// `∂` is enumerated up to `height`. Elements are the primitive
    /// vectors of height 1 over a basis of the span; the family is the
    /// empty set and the enumerated subspaces of height 1, which include
    /// every element.
    pub fn new(name: &'static str, config: Configuration, height: u64) -> Toy {
        let basis = config.span_basis();
        let d = basis.nrows();
        let elements: Vec<IntMatrix> = if d == 0 {
            Vec::new()
        } else {
            primitive_vectors(d, 1).iter().map(|v| IntMatrix::from_rows(d, std::slice::from_ref(v)).mul(&basis)).collect()
        };
        let family = config.enumerate_specs(1);
        Toy { name, config, elements, family, height, memo: HashMap::new() }
    }

    fn key(&self, s: &SubsetSpec) -> Key {
        let mut rows = s.rows(self.config.n()).rational_rows();
        rows.extend(self.config.lin_rels().rational_rows());
        linalg::rref(&rows).0
    }

    /// `∂` of the span of `s`, memoized by span.
    pub fn partial(&mut self, s: &SubsetSpec) -> Result<i64> {
        let k = self.key(s);
        if let Some(&v) = self.memo.get(&k) {
            return Ok(v);
        }
        let v = self.config.partial_dim_at(s, self.height)?.value;
        self.memo.insert(k, v);
        Ok(v)
    }

    pub fn with(&self, a: &SubsetSpec, e: usize) -> SubsetSpec {
        a.union(&SubsetSpec::Rows(self.elements[e].clone()), self.config.n())
    }

    /// `cl(A)`: the elements `e` with `∂(eA) = ∂(A)`.
    pub fn closure(&mut self, a: &SubsetSpec) -> Result<BTreeSet<usize>> {
        let base = self.partial(a)?;
        let mut out = BTreeSet::new();
        for e in 0..self.elements.len() {
            if self.partial(&self.with(a, e))? == base {
                out.insert(e);
            }
        }
        Ok(out)
    }

    pub fn spec_of(&self, a: &SubsetSpec, set: &BTreeSet<usize>) -> SubsetSpec {
        set.iter().fold(a.clone(), |acc, &e| self.with(&acc, e))
    }

    /// Whether span(a) ⊆ span(b).
    pub fn contained(&self, a: &SubsetSpec, b: &SubsetSpec) -> bool {
        self.key(&a.union(b, self.config.n())) == self.key(b)
    }

    /// Checks the laws of `∂` and `cl`; returns the violations found.
    pub fn check_laws(&mut self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let family = self.family.clone();
        let m = self.elements.len();
        let mut closures = Vec::new();
        for a in &family {
            let pa = self.partial(a)?;
            let mut p1 = Vec::with_capacity(m);
            for e in 0..m {
                let pe = self.partial(&self.with(a, e))?;
                if pe < pa || pe > pa + 1 {
                    bad.push(format!("{}: ∂(aA) = {pe} outside [∂(A), ∂(A)+1] = [{pa}, {}] for A = {a}, a = {}", self.name, pa + 1, self.elements[e]));
                }
                p1.push(pe);
            }
            for e in 0..m {
                for f in e + 1..m {
                    if p1[e] == pa && p1[f] == pa {
                        let both = self.with(&self.with(a, e), f);
                        let pb = self.partial(&both)?;
                        if pb != pa {
                            bad.push(format!("{}: ∂(abA) = {pb} ≠ ∂(A) = {pa} for A = {a}", self.name));
                        }
                    }
                }
            }
            let cl: BTreeSet<usize> = (0..m).filter(|&e| p1[e] == pa).collect();
            for e in 0..m {
                if self.contained(&SubsetSpec::Rows(self.elements[e].clone()), a) && !cl.contains(&e) {
                    bad.push(format!("{}: {} ∈ A but not in cl(A) for A = {a}", self.name, self.elements[e]));
                }
            }
            let closed = self.spec_of(a, &cl);
            if self.closure(&closed)? != cl {
                bad.push(format!("{}: cl(cl(A)) ≠ cl(A) for A = {a}", self.name));
            }
            for b in 0..m {
                if cl.contains(&b) {
                    continue;
                }
                let ab = self.with(a, b);
                let cl_b = self.closure(&ab)?;
                for &e in cl_b.difference(&cl) {
                    if !self.closure(&self.with(a, e))?.contains(&b) {
                        bad.push(format!("{}: exchange fails for A = {a}", self.name));
                    }
                }
            }
            closures.push(cl);
        }
        for (i, a) in family.iter().enumerate() {
            for (j, b) in family.iter().enumerate() {
                if i != j && self.contained(a, b) && !closures[i].is_subset(&closures[j]) {
                    bad.push(format!("{}: cl not monotone from A = {a} to B = {b}", self.name));
                }
            }
        }
        Ok(bad)
    }
}

/// The toy suite: at most three generators, `∂` enumerated at height 2.
pub fn toys() -> Vec<Toy> {
    let h = 2;
    vec![
        Toy::new("free line", Configuration::free(1, h), h),
        Toy::new("free plane", Configuration::free(2, h), h),
        Toy::new("free space", Configuration::free(3, h), h),
        Toy::new("kernel 2", kernel_demo(2).unwrap(), h),
        Toy::new("kernel 3", kernel_demo(3).unwrap(), h),
        Toy::new("parabola", config(2, &["x2 - x1^2"], &[], &[], &[], h), h),
        Toy::new("shifted torus", config(2, &[], &["y2 - y1 - 1"], &[], &[], h), h),
        Toy::new("algebraic point", config(2, &["x1 - 2"], &[], &[], &[], h), h),
        Toy::new("kernel and free", config(2, &[], &["y1 - 1"], &[], &[0], h), h),
        Toy::new("product sum", config(3, &["x3 - x1*x2"], &["y3 - y1 - y2"], &[], &[], h), h),
        Toy::new("sum product", config(3, &["x1 + x2 - x3"], &["y1*y2 - y3"], &[vec![1, 1, -1]], &[], h), h),
        Toy::new("two curves", config(3, &["x2 - x1^2"], &["y3 - y1^2 - 1"], &[], &[], h), h),
    ]
}
