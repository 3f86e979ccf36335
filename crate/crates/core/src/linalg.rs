//! Dense exact linear algebra over ℚ and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::number::{format_rational, Rational};

/// The coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Integers modulo a prime.
    Prime(u64),
}

/// A field element. Which variant is valid is decided by the owning
/// [`Field`]; residues are kept reduced in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    P(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u64
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        // Products are formed in u128, so any u32-sized prime is safe.
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::zero()),
            Field::Prime(_) => Scalar::P(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::one()),
            Field::Prime(_) => Scalar::P(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(Rational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P(n.rem_euclid(p as i64) as u64),
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes
    /// modulo `p`.
    pub fn from_rational(&self, r: &Rational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |n: &BigInt| {
                    let m = n % &pb;
                    let m = if m.is_negative() { m + &pb } else { m };
                    m.to_u64().expect("residue fits")
                };
                let den = reduce(r.denom());
                if den == 0 {
                    return Err(Error::InvalidField(format!(
                        "{} has no image modulo {p}",
                        format_rational(r)
                    )));
                }
                let num = reduce(r.numer());
                Ok(Scalar::P(
                    (num as u128 * mod_pow(den, p - 2, p) as u128 % p as u128) as u64,
                ))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), _) => Scalar::Q(x + y),
            (Scalar::P(x), Scalar::P(y), Field::Prime(p)) => Scalar::P((x + y) % p),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (a, self) {
            (Scalar::Q(x), _) => Scalar::Q(-x),
            (Scalar::P(x), Field::Prime(p)) => Scalar::P((p - x) % p),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), _) => Scalar::Q(x * y),
            (Scalar::P(x), Scalar::P(y), Field::Prime(p)) => Scalar::P((*x as u128 * *y as u128 % *p as u128) as u64),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (a, self) {
            (Scalar::Q(x), _) => Scalar::Q(x.recip()),
            (Scalar::P(x), Field::Prime(p)) => Scalar::P(mod_pow(*x, p - 2, *p)),
            _ => panic!("scalar does not belong to {self:?}"),
        })
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(r) => format_rational(r),
            Scalar::P(v) => v.to_string(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A dense `rows × cols` matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// One solution of `A x = b`.
    pub particular: Matrix,
    /// Dimension of the affine solution space.
    pub nullity: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.from_i64(x)))
            .collect();
        Matrix::from_rows(field, r, c, data)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns spanning the null space; `self · K = 0`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let Echelon { m, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(m.get(r, fc)));
            }
        }
        k
    }

    /// Indices of a maximal set of linearly independent columns, chosen
    /// greedily from the left.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// A basis (as columns) of the column space.
    pub fn column_space(&self) -> Matrix {
        self.columns(&self.pivot_columns())
    }

    /// Solves `self · X = rhs` for a matrix `X`.
    pub fn solve(&self, rhs: &Matrix) -> Option<Solution> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let f = self.field;
        let Echelon { m, pivots } = self.hstack(rhs).echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, m.get(r, self.cols + j).clone());
            }
        }
        Some(Solution {
            particular: x,
            nullity: self.cols - pivots.len(),
        })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Matrix::identity(self.field, self.rows))?;
        (sol.nullity == 0).then_some(sol.particular)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn map_field(&self, to: Field) -> Result<Matrix> {
        if self.field == to {
            return Ok(self.clone());
        }
        let data = self
            .data
            .iter()
            .map(|x| match x {
                Scalar::Q(r) => to.from_rational(r),
                Scalar::P(_) => Err(Error::FieldMismatch),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: to,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    #[test]
    fn ranks() {
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        assert_eq!(Matrix::zeros(Q, 2, 5).rank(), 0);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(Q, 0, 4).rank(), 0);
    }

    #[test]
    fn kernels() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel_basis().cols(), 3);
        let k = Matrix::from_i64(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(Q, &[&[-1], &[1]]));
    }

    #[test]
    fn solving() {
        let b = Matrix::from_i64(Q, &[&[3], &[-7]]);
        let s = Matrix::identity(Q, 2).solve(&b).unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.nullity, 0);
        let a = Matrix::from_i64(Q, &[&[1, 1], &[1, 1]]);
        assert!(a.solve(&Matrix::from_i64(Q, &[&[1], &[2]])).is_none());
        let s = Matrix::from_i64(Q, &[&[1, 1, 0]])
            .solve(&Matrix::from_i64(Q, &[&[5]]))
            .unwrap();
        assert_eq!(s.nullity, 2);
        assert_eq!(
            Matrix::from_i64(Q, &[&[1, 1, 0]]).mul(&s.particular),
            Matrix::from_i64(Q, &[&[5]])
        );
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::P(4));
        assert_eq!(f.inv(&Scalar::P(2)), Some(Scalar::P(3)));
        assert_eq!(f.from_rational(&crate::number::rat(1, 2)).unwrap(), Scalar::P(3));
        assert!(f.from_rational(&crate::number::rat(1, 5)).is_err());
        assert!(Field::prime(6).is_err());
        // [[1,2],[2,4]] has rank 1 everywhere; [[1,1],[1,-1]] drops rank over F_2.
        assert_eq!(Matrix::from_i64(Field::Prime(2), &[&[1, 1], &[1, -1]]).rank(), 1);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 1], &[1, -1]]).rank(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(Q, &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                let data = v.into_iter().map(|x| Q.from_i64(x)).collect();
                Matrix::from_rows(Q, r, c, data)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_matches_over_fp_for_identity_blocks(m in small_matrix()) {
            // rank over F_p never exceeds rank over Q for integer matrices
            let fp = m.map_field(Field::Prime(5)).unwrap();
            prop_assert!(fp.rank() <= m.rank());
        }
    }
}
