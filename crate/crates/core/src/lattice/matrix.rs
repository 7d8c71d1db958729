use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::linalg;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// From rows of machine integers; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_big_rows(cols, &big)
    }

    pub fn from_big_rows(cols: usize, rows: &[Vec<BigInt>]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Rows as `i64`, panicking on overflow.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.rows().map(|r| r.iter().map(|x| x.to_i64().expect("entry exceeds i64")).collect()).collect()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rational_rows())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        IntMatrix::from_big_rows(self.cols, &rows)
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.rows().filter(|r| r.iter().any(|x| !x.is_zero())).map(|r| r.to_vec()).collect();
        IntMatrix::from_big_rows(self.cols, &rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += f * row[src]
    fn add_row_multiple(&mut self, target: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = f * &self[(src, j)];
            self[(target, j)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (p·a + q·b, r·a + s·b).
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * &x + s * &y;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = p * &x + q * &y;
            self[(i, b)] = r * &x + s * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[[a, b], [c, d]]`
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row Hermite normal form `H = U·M`: pivots strictly move right, are
/// positive, entries above a pivot lie in `[0, pivot)`, zero rows last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // gcd-combine every lower row into row r
        for i in r + 1..m.rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let (a, b) = (h[(r, c)].clone(), h[(i, c)].clone());
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (p, q, s, t) = (x, y, -(&b / &g), &a / &g);
            h.combine_rows(r, i, &p, &q, &s, &t);
            u.combine_rows(r, i, &p, &q, &s, &t);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            h.add_row_multiple(i, r, &-q.clone());
            u.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form data: `U·M·V = D` with `D` diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | …`, non-negative, zeros last; length
    /// `min(rows, cols)`.
    pub divisors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Unimodular 2×2 step `[[p, q], [s, w]]` sending `(a, b)` to `(g, 0)`.
/// A plain subtraction when `a | b`, so the pivot line stays put.
fn elimination_step(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        return (BigInt::one(), BigInt::zero(), -(b / a), BigInt::one());
    }
    let e = a.extended_gcd(b);
    (e.x, e.y, -(b / &e.gcd), a / &e.gcd)
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        // pivot: smallest nonzero absolute value in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (p, q, s, w) = elimination_step(&d[(t, t)], &d[(i, t)]);
                d.combine_rows(t, i, &p, &q, &s, &w);
                u.combine_rows(t, i, &p, &q, &s, &w);
                clean = false;
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (p, q, s, w) = elimination_step(&d[(t, t)], &d[(t, j)]);
                d.combine_cols(t, j, &p, &q, &s, &w);
                v.combine_cols(t, j, &p, &q, &s, &w);
                clean = false;
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the rest by the pivot
            let piv = d[(t, t)].clone();
            let offender = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !d[(i, j)].is_multiple_of(&piv));
            match offender {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let divisors = (0..k).map(|i| d[(i, i)].clone()).collect();
    SmithForm { divisors, left: u, right: v }
}

/// Basis (as rows) of the integer kernel `{v ∈ Z^n : M·v = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols;
    if m.rows == 0 {
        return IntMatrix::identity(n);
    }
    // H = U·Mᵀ; rows of U matching zero rows of H span the left kernel of Mᵀ
    let (h, u) = hnf(&m.transpose());
    let zero_rows: Vec<usize> = (0..n).filter(|&i| h.row(i).iter().all(|x| x.is_zero())).collect();
    u.select_rows(&zero_rows)
}

/// Basis of `span_Q(rows) ∩ Z^n`, in Hermite normal form. This is the
/// canonical representative of the rational row space.
pub fn saturated_basis(m: &IntMatrix) -> IntMatrix {
    let m = m.nonzero_rows();
    if m.nrows() == 0 {
        return m;
    }
    let kernel = integer_kernel(&m);
    let saturated = integer_kernel(&kernel);
    hnf(&saturated).0.nonzero_rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_examples() {
        let (h, _) = hnf(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));

        let m = mat(2, &[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, mat(2, &[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());

        let (h, _) = hnf(&mat(2, &[&[0, 0]]));
        assert_eq!(h, mat(2, &[&[0, 0]]));
    }

    #[test]
    fn snf_examples() {
        let id = snf(&IntMatrix::identity(3));
        assert!(id.divisors.iter().all(|d| d.is_one()));

        for (m, expected) in [
            (mat(2, &[&[2, 0], &[0, 3]]), vec![1, 6]),
            (mat(2, &[&[2, 4], &[4, 8]]), vec![2, 0]),
        ] {
            let s = snf(&m);
            let expected: Vec<BigInt> = expected.into_iter().map(BigInt::from).collect();
            assert_eq!(s.divisors, expected);
            let d = s.left.mul(&m).mul(&s.right);
            for i in 0..2 {
                for j in 0..2 {
                    let want = if i == j { expected[i].clone() } else { BigInt::zero() };
                    assert_eq!(d[(i, j)], want);
                }
            }
            assert!(s.left.is_unimodular() && s.right.is_unimodular());
        }
    }

    #[test]
    fn kernels_and_saturation() {
        let m = mat(3, &[&[1, 2, 3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.nrows(), 2);
        for r in k.rows() {
            let dot: BigInt = r.iter().zip(m.row(0)).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        // (2, 4) saturates to (1, 2)
        assert_eq!(saturated_basis(&mat(2, &[&[2, 4]])), mat(2, &[&[1, 2]]));
        // full rank saturates to the identity
        assert_eq!(saturated_basis(&mat(2, &[&[2, 0], &[0, 3]])), IntMatrix::identity(2));
        assert_eq!(saturated_basis(&mat(2, &[&[-1, 1]])), mat(2, &[&[1, -1]]));
    }

    #[test]
    fn determinant_bareiss() {
        assert_eq!(mat(3, &[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).determinant(), BigInt::from(6));
        assert_eq!(mat(2, &[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
    }
}
