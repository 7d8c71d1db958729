//! Finite configurations and the predimension calculus.
//!
//! A configuration presents finitely many points `x_1..x_n` of a field with
//! their exponential images `y_i = ex(x_i)`: the algebraic relations of the
//! `x` over `Q`, those of the `y`, and the `Q`-linear relations among the
//! `x`. A subset of the structure is named by a [`SubsetSpec`], a list of
//! integer combinations of the generators. For such a subset `X`,
//!
//! `δ(X) = tr.d.(X) + tr.d.(ex X) − dim_Q(X)`,
//!
//! where `ex(Σ m_j x_j) = ∏ y_j^{m_j}`. Quantifiers over finite subsets are
//! realized by enumerating rational subspaces of the span up to a height
//! bound; verdicts carry that bound.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{cyclotomic, Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::ideal::{primitive_integer_vector, Elimination, Ideal, MonomialOrder};
use crate::lattice::{self, split_signs, IntMatrix, Sublattice};
use crate::linalg;

/// Finitely many elements of a configuration, as integer combinations of
/// the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubsetSpec {
    /// Generators by (zero-based) index.
    Indices(Vec<usize>),
    /// Each row is the element `Σ m_j x_j`.
    Rows(IntMatrix),
}

impl SubsetSpec {
    pub fn empty() -> SubsetSpec {
        SubsetSpec::Indices(Vec::new())
    }

    pub fn all(n: usize) -> SubsetSpec {
        SubsetSpec::Indices((0..n).collect())
    }

    pub fn rows(&self, n: usize) -> IntMatrix {
        match self {
            SubsetSpec::Indices(idx) => {
                let mut m = IntMatrix::zeros(idx.len(), n);
                for (r, &i) in idx.iter().enumerate() {
                    m[(r, i)] = BigInt::one();
                }
                m
            }
            SubsetSpec::Rows(m) => m.clone(),
        }
    }

    /// The union `X ∪ Y`.
    pub fn union(&self, other: &SubsetSpec, n: usize) -> SubsetSpec {
        match (self, other) {
            (SubsetSpec::Indices(a), SubsetSpec::Indices(b)) => {
                let mut idx = a.clone();
                idx.extend(b.iter().filter(|i| !a.contains(i)));
                SubsetSpec::Indices(idx)
            }
            _ => SubsetSpec::Rows(self.rows(n).vstack(&other.rows(n))),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SubsetSpec::Indices(idx) => idx.len(),
            SubsetSpec::Rows(m) => m.nrows(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetSpec::Indices(idx) => {
                let names: Vec<String> = idx.iter().map(|i| format!("x{}", i + 1)).collect();
                write!(f, "{{{}}}", names.join(", "))
            }
            SubsetSpec::Rows(m) => write!(f, "{m}"),
        }
    }
}

/// Outcome of a bounded strong-extension check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongVerdict {
    StrongUpTo(u64),
    NotStrong { witness: SubsetSpec, relative_delta: i64, height: u64 },
}

/// `∂(X)` with a superset realizing the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDim {
    pub value: i64,
    pub witness: SubsetSpec,
    pub height: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Route {
    Block,
    Lex,
}

impl Route {
    fn elimination(self) -> Elimination {
        match self {
            Route::Block => Elimination::Block,
            Route::Lex => Elimination::Reversed,
        }
    }

    fn order(self) -> MonomialOrder {
        match self {
            Route::Block => MonomialOrder::GrevLex,
            Route::Lex => MonomialOrder::Lex,
        }
    }
}

type DeltaKey = (Route, Vec<Vec<Rational>>);

/// A finite configuration: generators with algebraic and linear data.
pub struct Configuration {
    names: Vec<String>,
    locus_x: Ideal,
    locus_y: Ideal,
    lin_rels: IntMatrix,
    kernel: Vec<bool>,
    height: u64,
    torus_y: OnceLock<Ideal>,
    memo: Mutex<HashMap<DeltaKey, i64>>,
}

impl Clone for Configuration {
    fn clone(&self) -> Configuration {
        Configuration {
            names: self.names.clone(),
            locus_x: self.locus_x.clone(),
            locus_y: self.locus_y.clone(),
            lin_rels: self.lin_rels.clone(),
            kernel: self.kernel.clone(),
            height: self.height,
            torus_y: self.torus_y.clone(),
            memo: Mutex::new(self.memo.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Configuration")
            .field("names", &self.names)
            .field("locus_x", &self.locus_x)
            .field("locus_y", &self.locus_y)
            .field("lin_rels", &self.lin_rels)
            .field("kernel", &self.kernel)
            .field("height", &self.height)
            .finish()
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfiguration(msg.into())
}

fn as_rational_row(r: &[BigInt]) -> Vec<Rational> {
    r.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// `y^{m+} − y^{m−}`
fn binomial(ring: &Ring, m: &[BigInt]) -> Polynomial {
    let (plus, minus) = split_signs(m);
    &Polynomial::monomial(ring, Monomial(plus), Rational::one()) - &Polynomial::monomial(ring, Monomial(minus), Rational::one())
}

/// Primitive integer rows for the homogeneous linear relations of an ideal.
pub fn derive_relations(locus_x: &Ideal) -> Result<IntMatrix> {
    let n = locus_x.ring().nvars();
    let rows: Vec<Vec<BigInt>> = locus_x.homogeneous_linear_part()?.iter().map(|r| primitive_integer_vector(r)).collect();
    Ok(IntMatrix::from_big_rows(n, &rows))
}

impl Configuration {
    /// Validates and builds a configuration. `locus_x` and `locus_y` live in
    /// rings with one variable per generator; `lin_rels` has one column per
    /// generator.
    pub fn new(
        names: Vec<String>,
        locus_x: Ideal,
        locus_y: Ideal,
        lin_rels: IntMatrix,
        kernel: Vec<bool>,
        height: u64,
    ) -> Result<Configuration> {
        let n = names.len();
        if locus_x.ring().nvars() != n || locus_y.ring().nvars() != n {
            return Err(invalid(format!("loci must have {n} variables")));
        }
        if lin_rels.ncols() != n || kernel.len() != n {
            return Err(invalid(format!("relations and kernel marks must have {n} columns")));
        }
        if height == 0 {
            return Err(invalid("height bound must be at least 1"));
        }
        if locus_x.is_unit()? {
            return Err(invalid("the x-locus is empty"));
        }
        let xr = locus_x.ring().clone();
        let yr = locus_y.ring().clone();
        for r in lin_rels.rows() {
            let p = Polynomial::affine_linear(&xr, &Rational::zero(), &as_rational_row(r));
            if !locus_x.contains(&p)? {
                return Err(invalid(format!("linear relation {p} = 0 does not hold on the x-locus")));
            }
            let b = binomial(&yr, r);
            if !locus_y.contains(&b)? {
                return Err(invalid(format!("the y-locus does not contain {b}, the image of relation {p}")));
            }
        }
        let rel_rows = lin_rels.rational_rows();
        for h in locus_x.homogeneous_linear_part()? {
            if !linalg::in_span(&rel_rows, &h) {
                let p = Polynomial::affine_linear(&xr, &Rational::zero(), &h);
                return Err(invalid(format!("linear relation {p} of the x-locus is not declared")));
            }
        }
        for (i, &k) in kernel.iter().enumerate() {
            if k {
                let p = &Polynomial::var(&yr, i) - &Polynomial::one(&yr);
                if !locus_y.contains(&p)? {
                    return Err(invalid(format!("kernel generator {} needs {p} in the y-locus", names[i])));
                }
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let torus = locus_y.saturate_units(&all)?;
        if torus.is_unit()? {
            return Err(invalid("the y-locus has no point with all coordinates nonzero"));
        }
        let torus_y = OnceLock::new();
        let _ = torus_y.set(torus);
        Ok(Configuration { names, locus_x, locus_y, lin_rels, kernel, height, torus_y, memo: Mutex::new(HashMap::new()) })
    }

    /// Generators `x1..xn` with no relations at all.
    pub fn free(n: usize, height: u64) -> Configuration {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Configuration::new(
            names,
            Ideal::zero(&Ring::indexed("x", n)),
            Ideal::zero(&Ring::indexed("y", n)),
            IntMatrix::zeros(0, n),
            vec![false; n],
            height,
        )
        .expect("the free configuration is valid")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn locus_x(&self) -> &Ideal {
        &self.locus_x
    }

    pub fn locus_y(&self) -> &Ideal {
        &self.locus_y
    }

    pub fn lin_rels(&self) -> &IntMatrix {
        &self.lin_rels
    }

    pub fn kernel(&self) -> &[bool] {
        &self.kernel
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    fn torus_y(&self) -> &Ideal {
        self.torus_y.get().expect("set on construction")
    }

    fn check_spec(&self, s: &SubsetSpec) -> Result<()> {
        let n = self.n();
        match s {
            SubsetSpec::Indices(idx) if idx.iter().any(|&i| i >= n) => {
                Err(Error::Precondition(format!("generator index out of range for {n} generators")))
            }
            SubsetSpec::Rows(m) if m.ncols() != n => {
                Err(Error::Precondition(format!("subset rows must have {n} columns")))
            }
            _ => Ok(()),
        }
    }

    /// `dim_Q` of the elements: their rank modulo the linear relations.
    pub fn dim_q(&self, s: &SubsetSpec) -> Result<i64> {
        self.check_spec(s)?;
        let rels = self.lin_rels.rational_rows();
        let mut stacked = s.rows(self.n()).rational_rows();
        stacked.extend(rels.iter().cloned());
        Ok(linalg::rank(&stacked) as i64 - linalg::rank(&rels) as i64)
    }

    /// Rows of `s` independent modulo the relations, chosen greedily.
    fn independent_rows(&self, s: &IntMatrix, reversed: bool) -> IntMatrix {
        let mut basis = self.lin_rels.rational_rows();
        let mut chosen = Vec::new();
        let mut order: Vec<usize> = (0..s.nrows()).collect();
        if reversed {
            order.reverse();
        }
        for i in order {
            let row = as_rational_row(s.row(i));
            if !linalg::in_span(&basis, &row) {
                basis.push(row);
                chosen.push(s.row(i).to_vec());
            }
        }
        IntMatrix::from_big_rows(self.n(), &chosen)
    }

    fn quotient_dim(&self) -> usize {
        self.n() - self.lin_rels.rank()
    }

    fn trdeg_x_rows(&self, rows: &IntMatrix, route: Route) -> Result<i64> {
        if rows.nrows() == 0 {
            return Ok(0);
        }
        if self.locus_x.is_zero_ideal() {
            return Ok(rows.nrows() as i64);
        }
        let locus_dim = self.locus_x.dim_with(route.order())?.dim;
        if locus_dim == 0 {
            return Ok(0);
        }
        if rows.nrows() == self.quotient_dim() {
            return Ok(locus_dim);
        }
        let img = lattice::lin_image_with(&self.locus_x, rows, route.elimination())?;
        Ok(img.dim_with(route.order())?.dim)
    }

    fn trdeg_y_rows(&self, rows: &IntMatrix, route: Route) -> Result<i64> {
        if rows.nrows() == 0 {
            return Ok(0);
        }
        let torus = self.torus_y();
        if torus.is_zero_ideal() {
            return Ok(rows.nrows() as i64);
        }
        let locus_dim = torus.dim_with(route.order())?.dim;
        if locus_dim == 0 {
            return Ok(0);
        }
        if rows.nrows() == self.quotient_dim() {
            return Ok(locus_dim);
        }
        let img = lattice::mono_image_torus(torus, rows, route.elimination())?;
        Ok(img.dim_with(route.order())?.dim)
    }

    /// Transcendence degree of the elements over `Q`.
    pub fn trdeg_x(&self, s: &SubsetSpec) -> Result<i64> {
        self.check_spec(s)?;
        self.trdeg_x_rows(&self.independent_rows(&s.rows(self.n()), false), Route::Block)
    }

    /// Transcendence degree of the exponential images over `Q`.
    pub fn trdeg_y(&self, s: &SubsetSpec) -> Result<i64> {
        self.check_spec(s)?;
        self.trdeg_y_rows(&self.independent_rows(&s.rows(self.n()), false), Route::Block)
    }

    fn delta_route(&self, s: &SubsetSpec, route: Route) -> Result<i64> {
        self.check_spec(s)?;
        let rows = s.rows(self.n());
        let mut stacked = rows.rational_rows();
        stacked.extend(self.lin_rels.rational_rows());
        let key = (route, linalg::rref(&stacked).0);
        if let Some(&d) = self.memo.lock().unwrap().get(&key) {
            return Ok(d);
        }
        let indep = self.independent_rows(&rows, route == Route::Lex);
        let d = self.trdeg_x_rows(&indep, route)? + self.trdeg_y_rows(&indep, route)? - indep.nrows() as i64;
        self.memo.lock().unwrap().insert(key, d);
        Ok(d)
    }

    /// The predimension `δ(X)`.
    pub fn delta(&self, s: &SubsetSpec) -> Result<i64> {
        self.delta_route(s, Route::Block)
    }

    /// `δ(X/X′) = δ(X ∪ X′) − δ(X′)`. Computed along two independent
    /// elimination routes; disagreement is reported as an internal error.
    pub fn delta_rel(&self, x: &SubsetSpec, xp: &SubsetSpec) -> Result<i64> {
        let n = self.n();
        let joint = x.union(xp, n);
        let first = self.delta_route(&joint, Route::Block)? - self.delta_route(xp, Route::Block)?;
        let second = self.delta_route(&joint, Route::Lex)? - self.delta_route(xp, Route::Lex)?;
        if first != second {
            return Err(Error::Inconsistent(format!(
                "relative predimension of {x} over {xp} is {first} by block elimination but {second} by reversed elimination with lex bases"
            )));
        }
        Ok(first)
    }

    /// A basis of the span modulo relations: the leftmost generators that
    /// are independent.
    pub fn span_basis(&self) -> IntMatrix {
        self.independent_rows(&IntMatrix::identity(self.n()), false)
    }

    /// Subsets of the span up to height `h`, one per rational subspace:
    /// the empty set, then sublattices over the span basis.
    pub fn enumerate_specs(&self, h: u64) -> Vec<SubsetSpec> {
        let basis = self.span_basis();
        let d = basis.nrows();
        let mut out = vec![SubsetSpec::empty()];
        if d == 0 {
            return out;
        }
        out.extend(lattice::all_sublattices(d, h).iter().map(|l| SubsetSpec::Rows(l.basis().mul(&basis))));
        out
    }

    /// Checks `A ≤ span` up to height `h`: `δ(X/A) ≥ 0` for every
    /// enumerated `X`. The first failing `X` in enumeration order is the
    /// witness.
    pub fn strong_ext(&self, a: &SubsetSpec, h: u64) -> Result<StrongVerdict> {
        self.check_spec(a)?;
        let specs = self.enumerate_specs(h);
        let found = specs
            .par_iter()
            .map(|x| self.delta_rel(x, a).map(|d| (x, d)))
            .find_first(|r| match r {
                Err(_) => true,
                Ok((_, d)) => *d < 0,
            });
        match found {
            None => Ok(StrongVerdict::StrongUpTo(h)),
            Some(Err(e)) => Err(e),
            Some(Ok((x, d))) => Ok(StrongVerdict::NotStrong { witness: x.clone(), relative_delta: d, height: h }),
        }
    }

    /// `∂(X)`: the least `δ` over enumerated supersets of `X`, at the
    /// configuration's height bound.
    pub fn partial_dim(&self, x: &SubsetSpec) -> Result<PartialDim> {
        self.partial_dim_at(x, self.height)
    }

    pub fn partial_dim_at(&self, x: &SubsetSpec, h: u64) -> Result<PartialDim> {
        self.check_spec(x)?;
        let n = self.n();
        let mut best = PartialDim { value: self.delta(x)?, witness: x.clone(), height: h };
        for extra in self.enumerate_specs(h).into_iter().skip(1) {
            let sup = x.union(&extra, n);
            let d = self.delta(&sup)?;
            if d < best.value {
                best = PartialDim { value: d, witness: sup, height: h };
            }
        }
        Ok(best)
    }

    /// The configuration on a subset of the generators.
    pub fn restrict(&self, indices: &[usize]) -> Result<Configuration> {
        self.check_spec(&SubsetSpec::Indices(indices.to_vec()))?;
        let rename = |ideal: Ideal, prefix: &str| {
            let ring = Ring::indexed(prefix, indices.len());
            let map: Vec<usize> = (0..indices.len()).collect();
            Ideal::new(&ring, ideal.gens().iter().map(|g| g.embed(&ring, &map)).collect())
        };
        let locus_x = rename(self.locus_x.eliminate(indices)?, "x");
        let locus_y = rename(self.locus_y.eliminate(indices)?, "y");
        let lin_rels = derive_relations(&locus_x)?;
        Configuration::new(
            indices.iter().map(|&i| self.names[i].clone()).collect(),
            locus_x,
            locus_y,
            lin_rels,
            indices.iter().map(|&i| self.kernel[i]).collect(),
            self.height,
        )
    }

    /// Index subsets of the generators, including the empty one.
    pub fn index_subsets(&self) -> Vec<SubsetSpec> {
        let n = self.n();
        (0u64..1 << n)
            .map(|mask| SubsetSpec::Indices((0..n).filter(|&i| mask >> i & 1 == 1).collect()))
            .collect()
    }
}

/// The standard kernel fragment `{π, π/2, …, π/N}`: generator `k` is
/// `π/k`, `ex(π) = 1` and `ex(π/k) = ζ_k`, a coherent system of primitive
/// roots of unity. Every subset has predimension zero; this is checked
/// before returning.
pub fn kernel_demo(size: usize) -> Result<Configuration> {
    if size == 0 {
        return Err(Error::Precondition("kernel demo needs at least one generator".into()));
    }
    let n = size;
    let xr = Ring::indexed("x", n);
    let yr = Ring::indexed("y", n);
    let x = |i: usize| Polynomial::var(&xr, i);
    let y = |i: usize| Polynomial::var(&yr, i);

    let mut rels = Vec::new();
    let mut x_gens = Vec::new();
    for k in 2..=n {
        let mut r = vec![0i64; n];
        r[0] = 1;
        r[k - 1] = -(k as i64);
        x_gens.push(&x(0) - &x(k - 1).scale(&Rational::from_integer((k as i64).into())));
        rels.push(r);
    }

    let mut y_gens = vec![&y(0) - &Polynomial::one(&yr)];
    for k in 2..=n {
        let phi = cyclotomic(k as u64).embed(&yr, &[k - 1]);
        y_gens.push(phi);
        for m in 1..k {
            if k % m == 0 {
                y_gens.push(&y(k - 1).pow((k / m) as u32) - &y(m - 1));
            }
        }
    }

    let names = (1..=n).map(|k| if k == 1 { "pi".to_string() } else { format!("pi/{k}") }).collect();
    let mut kernel = vec![false; n];
    kernel[0] = true;
    let config = Configuration::new(
        names,
        Ideal::new(&xr, x_gens),
        Ideal::new(&yr, y_gens),
        IntMatrix::from_rows(n, &rels),
        kernel,
        3,
    )?;
    for s in config.index_subsets().iter().chain(config.enumerate_specs(config.height).iter()) {
        let d = config.delta(s)?;
        if d != 0 {
            return Err(Error::Inconsistent(format!("kernel fragment has δ({s}) = {d}")));
        }
    }
    Ok(config)
}

/// A configuration spanned by one subspace; convenient for tests and the
/// command line.
pub fn sublattice_spec(l: &Sublattice) -> SubsetSpec {
    SubsetSpec::Rows(l.basis().clone())
}
