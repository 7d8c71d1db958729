//! Integer lattices acting on coordinates: Hermite and Smith normal forms,
//! canonical sublattices of rational row spaces, bounded enumeration, and
//! the images of varieties under `x ↦ Mx` and `y ↦ y^M`.

mod matrix;

pub use matrix::{hnf, integer_kernel, saturated_basis, snf, IntMatrix, SmithForm};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::ideal::{Elimination, Ideal};

/// A saturated integer lattice, identified with its rational row space.
/// The basis is the Hermite normal form of `span_Q ∩ Z^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    basis: IntMatrix,
    height: BigInt,
}

impl Sublattice {
    /// The sublattice for the rational span of the given rows.
    pub fn span(rows: &IntMatrix) -> Sublattice {
        let basis = saturated_basis(rows);
        let height = basis.max_abs();
        Sublattice { basis, height }
    }

    pub fn full(n: usize) -> Sublattice {
        Sublattice::span(&IntMatrix::identity(n))
    }

    /// Span of the listed unit vectors.
    pub fn coordinate(n: usize, coords: &[usize]) -> Sublattice {
        let mut rows = vec![vec![0i64; n]; coords.len()];
        for (r, &c) in coords.iter().enumerate() {
            rows[r][c] = 1;
        }
        Sublattice::span(&IntMatrix::from_rows(n, &rows))
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn height(&self) -> &BigInt {
        &self.height
    }

    /// The coordinates, when the lattice is spanned by unit vectors.
    pub fn coordinates(&self) -> Option<Vec<usize>> {
        let mut coords = Vec::with_capacity(self.rank());
        for row in self.basis.rows() {
            let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
            if nz.len() != 1 || !row[nz[0]].is_one() {
                return None;
            }
            coords.push(nz[0]);
        }
        Some(coords)
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice{}", self.basis)
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

/// Reduced echelon form of a rational row space with each row scaled to a
/// primitive integer vector with positive pivot. Canonical per space.
type SpanKey = Vec<Vec<i64>>;

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn pivot(v: &[i128]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// `v` with the pivot columns of the echelon rows cleared.
fn reduce_against(rows: &[Vec<i128>], v: &[i64]) -> Vec<i128> {
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for r in rows {
        let c = pivot(r).unwrap();
        if w[c] != 0 {
            let (a, b) = (r[c], w[c]);
            for j in 0..w.len() {
                w[j] = w[j] * a - b * r[j];
            }
            primitive(&mut w);
        }
    }
    w
}

/// Adds a vector already reduced against `rows` and restores the canonical
/// form.
fn extend_echelon(rows: &[Vec<i128>], w: Vec<i128>) -> Vec<Vec<i128>> {
    let c = pivot(&w).unwrap();
    let mut out: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            if r[c] == 0 {
                return r.clone();
            }
            let (a, b) = (w[c], r[c]);
            let mut nr: Vec<i128> = r.iter().zip(&w).map(|(&x, &y)| x * a - b * y).collect();
            primitive(&mut nr);
            nr
        })
        .collect();
    out.push(w);
    out.sort_by_key(|r| pivot(r));
    out
}

fn to_key(rows: &[Vec<i128>]) -> SpanKey {
    rows.iter().map(|r| r.iter().map(|&x| i64::try_from(x).expect("echelon entry exceeds i64")).collect()).collect()
}

/// Primitive vectors of `[-h, h]^n` with positive leading entry, ordered by
/// height and then entries.
pub fn primitive_vectors(n: usize, h: i64) -> Vec<Vec<i64>> {
    let side = (2 * h + 1) as usize;
    let total = side.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % side) as i64 - h;
                c /= side;
                d
            })
            .collect();
        let Some(lead) = v.iter().find(|&&x| x != 0) else { continue };
        if *lead < 0 {
            continue;
        }
        let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 1 {
            out.push(v);
        }
    }
    out.sort_by(|a, b| {
        let ha = a.iter().map(|x| x.abs()).max();
        let hb = b.iter().map(|x| x.abs()).max();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    out
}

type EnumKey = (usize, usize, u64);

fn enumeration_cache() -> &'static Mutex<HashMap<EnumKey, Arc<Vec<Sublattice>>>> {
    static CACHE: OnceLock<Mutex<HashMap<EnumKey, Arc<Vec<Sublattice>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every rank-`k` rational subspace of `Q^n` spanned by integer vectors
/// with entries in `[-h, h]`, once each. Coordinate subspaces come first
/// (in combination order), the rest by height and then basis entries.
pub fn enumerate_sublattices(n: usize, k: usize, h: u64) -> Arc<Vec<Sublattice>> {
    assert!(k >= 1 && k <= n && h >= 1, "enumeration needs 1 ≤ k ≤ n and h ≥ 1");
    let key = (n, k, h);
    if let Some(hit) = enumeration_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let result = Arc::new(enumerate_uncached(n, k, h as i64));
    enumeration_cache().lock().unwrap().insert(key, result.clone());
    result
}

fn enumerate_uncached(n: usize, k: usize, h: i64) -> Vec<Sublattice> {
    if k == n {
        return vec![Sublattice::full(n)];
    }
    let vectors = primitive_vectors(n, h);
    // canonical echelon forms of the spans of rank j
    let mut level: Vec<Vec<Vec<i128>>> = vectors.iter().map(|v| vec![v.iter().map(|&x| x as i128).collect()]).collect();
    for _ in 1..k {
        let mut seen: HashSet<SpanKey> = HashSet::new();
        let mut next = Vec::new();
        for rows in &level {
            for v in &vectors {
                let w = reduce_against(rows, v);
                if pivot(&w).is_none() {
                    continue;
                }
                let ext = extend_echelon(rows, w);
                if seen.insert(to_key(&ext)) {
                    next.push(ext);
                }
            }
        }
        level = next;
    }
    let mut coordinate = Vec::new();
    let mut rest = Vec::new();
    for rows in &level {
        let s = Sublattice::span(&IntMatrix::from_rows(n, &to_key(rows)));
        match s.coordinates() {
            Some(c) => coordinate.push((c, s)),
            None => rest.push(s),
        }
    }
    coordinate.sort_by(|a, b| a.0.cmp(&b.0));
    rest.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.basis.cmp(&a.basis)));
    coordinate.into_iter().map(|(_, s)| s).chain(rest).collect()
}

/// All sublattices of rank `1..=n` at height `h`: coordinate ones first
/// (by rank), then the rest (by rank).
pub fn all_sublattices(n: usize, h: u64) -> Vec<Sublattice> {
    let levels: Vec<Arc<Vec<Sublattice>>> = (1..=n).map(|k| enumerate_sublattices(n, k, h)).collect();
    let coordinate = levels.iter().flat_map(|l| l.iter().filter(|s| s.coordinates().is_some()));
    let rest = levels.iter().flat_map(|l| l.iter().filter(|s| s.coordinates().is_none()));
    coordinate.chain(rest).cloned().collect()
}

fn check_full_rank(m: &IntMatrix) -> Result<()> {
    if m.rank() != m.nrows() {
        return Err(Error::Precondition(format!("matrix {m} does not have full row rank")));
    }
    Ok(())
}

fn renamed(ideal: &Ideal, target: &Ring) -> Ideal {
    let map: Vec<usize> = (0..target.nvars()).collect();
    Ideal::new(target, ideal.gens().iter().map(|g| g.embed(target, &map)).collect())
}

/// Ideal of the closure of the image of `V(I)` under `x ↦ Mx`, in
/// variables `a1..ak`.
pub fn lin_image(ideal: &Ideal, m: &IntMatrix) -> Result<Ideal> {
    check_full_rank(m)?;
    lin_image_any(ideal, m)
}

pub(crate) fn lin_image_any(ideal: &Ideal, m: &IntMatrix) -> Result<Ideal> {
    lin_image_with(ideal, m, Elimination::Block)
}

pub(crate) fn lin_image_with(ideal: &Ideal, m: &IntMatrix, strategy: Elimination) -> Result<Ideal> {
    let n = ideal.ring().nvars();
    assert_eq!(m.ncols(), n, "matrix width differs from the number of variables");
    let k = m.nrows();
    let target = Ring::indexed("a", k);
    if ideal.is_zero_ideal() && m.rank() == k {
        return Ok(Ideal::zero(&target));
    }
    if let Some(coords) = unit_row_coordinates(m) {
        return Ok(renamed(&ideal.eliminate_with(&coords, strategy)?, &target));
    }
    let mut names: Vec<String> = ideal.ring().names().to_vec();
    names.extend(target.names().iter().cloned());
    let big = Ring::new(names);
    let shift: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.embed(&big, &shift)).collect();
    for i in 0..k {
        let mut lin = vec![Rational::zero(); n + k];
        for j in 0..n {
            lin[j] = -Rational::from_integer(m[(i, j)].clone());
        }
        lin[n + i] = Rational::one();
        gens.push(Polynomial::affine_linear(&big, &Rational::zero(), &lin));
    }
    let keep: Vec<usize> = (n..n + k).collect();
    Ok(renamed(&Ideal::new(&big, gens).eliminate_with(&keep, strategy)?, &target))
}

/// The coordinate picked by each row, when every row is a distinct unit
/// vector.
fn unit_row_coordinates(m: &IntMatrix) -> Option<Vec<usize>> {
    let unit = m.rows().all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1 && r.iter().all(|x| x.is_zero() || x.is_one()));
    if !unit {
        return None;
    }
    let coords: Vec<usize> = m.rows().map(|r| r.iter().position(|x| x.is_one()).unwrap()).collect();
    let mut sorted = coords.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted.len() == coords.len()).then_some(coords)
}

/// Ideal of the closure of the image of `V(I) ∩ torus` under `y ↦ y^M`, in
/// variables `b1..bk`.
pub fn mono_image(ideal: &Ideal, m: &IntMatrix) -> Result<Ideal> {
    check_full_rank(m)?;
    mono_image_any(ideal, m)
}

pub(crate) fn mono_image_any(ideal: &Ideal, m: &IntMatrix) -> Result<Ideal> {
    let all: Vec<usize> = (0..ideal.ring().nvars()).collect();
    let torus = ideal.saturate_units(&all)?;
    if torus.is_unit()? {
        return Err(Error::EmptyTorusPart);
    }
    mono_image_torus(&torus, m, Elimination::Block)
}

/// As [`mono_image`], for an ideal already saturated at every variable.
pub(crate) fn mono_image_torus(torus: &Ideal, m: &IntMatrix, strategy: Elimination) -> Result<Ideal> {
    let n = torus.ring().nvars();
    assert_eq!(m.ncols(), n, "matrix width differs from the number of variables");
    let k = m.nrows();
    let target = Ring::indexed("b", k);
    if torus.is_zero_ideal() && m.rank() == k {
        return Ok(Ideal::zero(&target));
    }
    if let Some(coords) = unit_row_coordinates(m) {
        return Ok(renamed(&torus.eliminate_with(&coords, strategy)?, &target));
    }
    // ring [t, y1..yn, b1..bk]
    let mut names = vec!["_t".to_string()];
    names.extend(torus.ring().names().iter().cloned());
    names.extend(target.names().iter().cloned());
    let big = Ring::new(names);
    let width = 1 + n + k;
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<Polynomial> = torus.gens().iter().map(|g| g.embed(&big, &shift)).collect();
    let mut e = vec![1u32; n + 1];
    e.resize(width, 0);
    gens.push(&Polynomial::monomial(&big, Monomial(e), Rational::one()) - &Polynomial::one(&big));
    for i in 0..k {
        let mut plus = vec![0u32; width];
        let mut minus = vec![0u32; width];
        for j in 0..n {
            let v = m[(i, j)].to_i64().expect("exponent exceeds i64");
            if v > 0 {
                plus[1 + j] = v as u32;
            } else {
                minus[1 + j] = (-v) as u32;
            }
        }
        minus[1 + n + i] = 1;
        gens.push(
            &Polynomial::monomial(&big, Monomial(minus), Rational::one())
                - &Polynomial::monomial(&big, Monomial(plus), Rational::one()),
        );
    }
    let keep: Vec<usize> = (1 + n..width).collect();
    Ok(renamed(&Ideal::new(&big, gens).eliminate_with(&keep, strategy)?, &target))
}

/// Splits an integer vector into its positive and negative parts.
pub fn split_signs(v: &[BigInt]) -> (Vec<u32>, Vec<u32>) {
    let plus = v.iter().map(|x| if x.is_positive() { x.to_u32().expect("exponent overflow") } else { 0 }).collect();
    let minus = v.iter().map(|x| if x.is_negative() { (-x).to_u32().expect("exponent overflow") } else { 0 }).collect();
    (plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(prefix: &str, n: usize) -> (Ring, Vec<Polynomial>) {
        let r = Ring::indexed(prefix, n);
        let v = (0..n).map(|i| Polynomial::var(&r, i)).collect();
        (r, v)
    }

    fn rows(s: &Sublattice) -> Vec<Vec<i64>> {
        s.basis().to_i64_rows()
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_sublattices(1, 1, 1);
        assert_eq!(e.len(), 1);
        assert_eq!(rows(&e[0]), vec![vec![1]]);

        for h in 1..=3 {
            let e = enumerate_sublattices(2, 2, h);
            assert_eq!(e.len(), 1);
            assert_eq!(e[0].basis(), &IntMatrix::identity(2));
        }

        let e = enumerate_sublattices(2, 1, 1);
        let got: Vec<Vec<Vec<i64>>> = e.iter().map(rows).collect();
        assert_eq!(got, vec![vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![1, 1]], vec![vec![1, -1]]]);
    }

    #[test]
    fn coordinate_spans_lead() {
        let e = enumerate_sublattices(3, 2, 2);
        let first_other = e.iter().position(|s| s.coordinates().is_none()).unwrap();
        assert_eq!(first_other, 3);
        assert!(e[first_other..].iter().all(|s| s.coordinates().is_none()));
    }

    #[test]
    fn lin_image_examples() {
        let (r, x) = vars("x", 2);
        let a = Ring::indexed("a", 1);

        let img = lin_image(&Ideal::zero(&r), &IntMatrix::from_rows(2, &[vec![1, 1]])).unwrap();
        assert!(img.is_zero_ideal() && img.ring() == &a);

        let diag = Ideal::new(&r, vec![&x[0] - &x[1]]);
        let img = lin_image(&diag, &IntMatrix::from_rows(2, &[vec![1, -1]])).unwrap();
        assert!(img.same_ideal(&Ideal::new(&a, vec![Polynomial::var(&a, 0)])).unwrap());

        let circle = Ideal::new(&r, vec![&(&x[0] * &x[0]) + &(&(&x[1] * &x[1]) - &Polynomial::one(&r))]);
        let img = lin_image(&circle, &IntMatrix::from_rows(2, &[vec![1, 0]])).unwrap();
        assert!(img.same_ideal(&Ideal::zero(&a)).unwrap());

        assert!(matches!(
            lin_image(&circle, &IntMatrix::from_rows(2, &[vec![1, 1], vec![2, 2]])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mono_image_examples() {
        let b = Ring::indexed("b", 1);
        let (r1, _) = vars("y", 1);
        let img = mono_image(&Ideal::zero(&r1), &IntMatrix::from_rows(1, &[vec![2]])).unwrap();
        assert!(img.is_zero_ideal());

        let (r, y) = vars("y", 2);
        let one = Polynomial::one(&r);
        let hyper = Ideal::new(&r, vec![&(&y[0] * &y[1]) - &one]);
        let img = mono_image(&hyper, &IntMatrix::from_rows(2, &[vec![1, 1]])).unwrap();
        let expected = Ideal::new(&b, vec![&Polynomial::var(&b, 0) - &Polynomial::one(&b)]);
        assert!(img.same_ideal(&expected).unwrap());

        // y1/y2 on the parabola y2 = y1² is 1/y1: dominant
        let parabola = Ideal::new(&r, vec![&y[1] - &(&y[0] * &y[0])]);
        let img = mono_image(&parabola, &IntMatrix::from_rows(2, &[vec![1, -1]])).unwrap();
        assert!(img.same_ideal(&Ideal::zero(&b)).unwrap());

        // y1³/y2 = y1 on the parabola; full rank image has dim 1
        let img = mono_image(&parabola, &IntMatrix::from_rows(2, &[vec![3, -1], vec![0, 1]])).unwrap();
        assert_eq!(img.dim().unwrap().dim, 1);

        let axes = Ideal::new(&r, vec![&y[0] * &y[1]]);
        assert!(matches!(mono_image(&axes, &IntMatrix::identity(2)), Err(Error::EmptyTorusPart)));
    }

    #[test]
    fn signs_split() {
        let v: Vec<BigInt> = [2, -1, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(split_signs(&v), (vec![2, 0, 0], vec![0, 1, 0]));
    }
}
