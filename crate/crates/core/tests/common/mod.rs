#![allow(dead_code)]

pub mod curated;
pub mod oracle;
pub mod toy;
pub mod tower;

use expfield::algebra::{parse_polynomial, Monomial, Polynomial, Rational, Ring};
use expfield::ideal::Ideal;
use expfield::lattice::IntMatrix;
use expfield::linalg;
use expfield::pairs::VarietyPair;
use expfield::predim::{derive_relations, Configuration, SubsetSpec};
use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ideal(prefix: &str, n: usize, gens: &[&str]) -> Ideal {
    let r = Ring::indexed(prefix, n);
    Ideal::new(&r, gens.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect())
}

pub fn pair(n: usize, v: &[&str], w: &[&str]) -> VarietyPair {
    VarietyPair::new(ideal("x", n, v), ideal("y", n, w), true, true).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = ring.nvars();
    let terms = (0..rng.gen_range(1..=max_terms)).map(|_| {
        let mut e = vec![0u32; n];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        (Monomial(e), Rational::from_integer(c.into()))
    });
    Polynomial::from_terms(ring, terms)
}

/// Canonical key of the rational row space of `rows` together with `rels`.
pub fn span_key(rows: &IntMatrix, rels: &IntMatrix) -> Vec<Vec<Rational>> {
    let mut all = rows.rational_rows();
    all.extend(rels.rational_rows());
    linalg::rref(&all).0
}

enum BaseX {
    Free,
    Constant(Rational),
    /// `b_j = b_i^e + c`
    Power(usize, u32, i64),
}

enum BaseY {
    Free,
    One,
    Constant(Rational),
    /// `e_j = e_i + c`
    Shift(usize, i64),
}

/// A random configuration on `n ≤ 4` generators.
///
/// The generators are integer combinations `x = A·b` of `d` base elements
/// with simple algebraic data, and `y = e^A` for their exponentials. Loci
/// come from elimination; linear relations from the x-locus. Returns
/// `None` when the draw violates an invariant.
pub fn random_configuration(rng: &mut ChaCha8Rng, max_n: usize) -> Option<Configuration> {
    let n = rng.gen_range(1..=max_n);
    let d = rng.gen_range(1..=n);
    let a: Vec<Vec<i64>> = loop {
        let a: Vec<Vec<i64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        if IntMatrix::from_rows(d, &a).rank() == d && a.iter().all(|r| r.iter().any(|&x| x != 0)) {
            break a;
        }
    };
    let mut has_constant = false;
    let bx: Vec<BaseX> = (0..d)
        .map(|j| match rng.gen_range(0..4) {
            1 if !has_constant => {
                has_constant = true;
                BaseX::Constant(q(rng.gen_range(1..=5), rng.gen_range(1..=3)))
            }
            2 if j > 0 => BaseX::Power(rng.gen_range(0..j), 2, rng.gen_range(-2..=2)),
            _ => BaseX::Free,
        })
        .collect();
    // a power of a constant would be a second constant
    if bx.iter().any(|b| matches!(b, BaseX::Power(i, _, _) if matches!(bx[*i], BaseX::Constant(_) | BaseX::Power(..)))) {
        return None;
    }
    let by: Vec<BaseY> = (0..d)
        .map(|j| match rng.gen_range(0..5) {
            1 => BaseY::One,
            2 => BaseY::Constant(q(rng.gen_range(2..=5), rng.gen_range(1..=3))),
            3 if j > 0 => BaseY::Shift(rng.gen_range(0..j), 1),
            _ => BaseY::Free,
        })
        .collect();
    if by.iter().any(|b| matches!(b, BaseY::Shift(i, _) if !matches!(by[*i], BaseY::Free))) {
        return None;
    }

    // x-locus: ring [b1..bd, x1..xn]
    let mut names: Vec<String> = (1..=d).map(|j| format!("b{j}")).collect();
    names.extend((1..=n).map(|i| format!("x{i}")));
    let big = Ring::new(names);
    let var = |i: usize| Polynomial::var(&big, i);
    let mut gens = Vec::new();
    for (j, b) in bx.iter().enumerate() {
        match b {
            BaseX::Free => {}
            BaseX::Constant(c) => gens.push(&var(j) - &Polynomial::constant(&big, c.clone())),
            BaseX::Power(i, e, c) => gens.push(&(&var(j) - &var(*i).pow(*e)) - &Polynomial::integer(&big, *c)),
        }
    }
    for i in 0..n {
        let mut lin = vec![Rational::from_integer(0.into()); d + n];
        for j in 0..d {
            lin[j] = Rational::from_integer((-a[i][j]).into());
        }
        lin[d + i] = Rational::one();
        gens.push(Polynomial::affine_linear(&big, &Rational::from_integer(0.into()), &lin));
    }
    let keep: Vec<usize> = (d..d + n).collect();
    let locus_x = rename(&Ideal::new(&big, gens).eliminate(&keep).ok()?, "x");

    // y-locus: ring [t, e1..ed, y1..yn]
    let mut names = vec!["t".to_string()];
    names.extend((1..=d).map(|j| format!("e{j}")));
    names.extend((1..=n).map(|i| format!("y{i}")));
    let big = Ring::new(names);
    let width = 1 + d + n;
    let var = |i: usize| Polynomial::var(&big, i);
    let one = Polynomial::one(&big);
    let mut gens = Vec::new();
    let mut te = vec![0u32; width];
    for x in te.iter_mut().take(1 + d) {
        *x = 1;
    }
    gens.push(&Polynomial::monomial(&big, Monomial(te), Rational::one()) - &one);
    for (j, b) in by.iter().enumerate() {
        let e = var(1 + j);
        match b {
            BaseY::Free => {}
            BaseY::One => gens.push(&e - &one),
            BaseY::Constant(c) => gens.push(&e - &Polynomial::constant(&big, c.clone())),
            BaseY::Shift(i, c) => gens.push(&(&e - &var(1 + i)) - &Polynomial::integer(&big, *c)),
        }
    }
    for i in 0..n {
        let mut plus = vec![0u32; width];
        let mut minus = vec![0u32; width];
        for j in 0..d {
            if a[i][j] > 0 {
                plus[1 + j] = a[i][j] as u32;
            } else {
                minus[1 + j] = (-a[i][j]) as u32;
            }
        }
        minus[1 + d + i] = 1;
        gens.push(
            &Polynomial::monomial(&big, Monomial(minus), Rational::one())
                - &Polynomial::monomial(&big, Monomial(plus), Rational::one()),
        );
    }
    let keep: Vec<usize> = (1 + d..width).collect();
    let locus_y = rename(&Ideal::new(&big, gens).eliminate(&keep).ok()?, "y");

    let lin_rels = derive_relations(&locus_x).ok()?;
    let yr = locus_y.ring().clone();
    let kernel = (0..n)
        .map(|i| locus_y.contains(&(&Polynomial::var(&yr, i) - &Polynomial::one(&yr))).unwrap_or(false))
        .collect();
    Configuration::new((1..=n).map(|i| format!("g{i}")).collect(), locus_x, locus_y, lin_rels, kernel, 2).ok()
}

fn rename(ideal: &Ideal, prefix: &str) -> Ideal {
    let n = ideal.ring().nvars();
    let r = Ring::indexed(prefix, n);
    let map: Vec<usize> = (0..n).collect();
    Ideal::new(&r, ideal.gens().iter().map(|g| g.embed(&r, &map)).collect())
}

/// Either an index subset or one or two rows with entries in `{-1, 0, 1}`.
pub fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> SubsetSpec {
    if rng.gen_bool(0.5) {
        SubsetSpec::Indices((0..n).filter(|_| rng.gen_bool(0.5)).collect())
    } else {
        let rows: Vec<Vec<BigInt>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-1..=1))).collect())
            .collect();
        SubsetSpec::Rows(IntMatrix::from_big_rows(n, &rows))
    }
}

/// Builds a validated configuration from polynomial strings.
pub fn config(n: usize, xs: &[&str], ys: &[&str], rels: &[Vec<i64>], kernel: &[usize], height: u64) -> Configuration {
    let mut k = vec![false; n];
    for &i in kernel {
        k[i] = true;
    }
    Configuration::new(
        (1..=n).map(|i| format!("g{i}")).collect(),
        ideal("x", n, xs),
        ideal("y", n, ys),
        IntMatrix::from_rows(n, rels),
        k,
        height,
    )
    .unwrap()
}
