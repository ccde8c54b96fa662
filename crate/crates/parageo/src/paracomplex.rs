//! Arithmetic over the ring `C = R + eR` with `e^2 = 1`.
//!
//! Elements `x + e*y` are zero divisors exactly on the null cone
//! `x^2 = y^2`, so inversion is partial. Matrix inversion goes through the
//! null-basis isomorphism `C = R (+) R` given by the idempotents `(1 +- e)/2`:
//! a para-complex matrix is invertible iff both real projections are.

use nalgebra::DMatrix;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::{Error, ProjectionSign, Result};

/// Default absolute threshold on `|re^2 - im^2|` (scalars) and on the
/// projection determinants (matrices) below which inversion is refused.
pub const EPS_INV: f64 = 1e-12;

/// A split-complex scalar `re + e*im` with `e^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ParaComplex {
    pub re: f64,
    pub im: f64,
}

impl ParaComplex {
    pub const ZERO: ParaComplex = ParaComplex { re: 0.0, im: 0.0 };
    pub const ONE: ParaComplex = ParaComplex { re: 1.0, im: 0.0 };
    /// The unit imaginary `e = (0, 1)`.
    pub const E: ParaComplex = ParaComplex { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    /// Conjugation `x + e*y -> x - e*y`; an involutive ring automorphism.
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// The multiplicative modulus `m(z) = re^2 - im^2`, evaluated in the
    /// factored form `(re + im)(re - im)` to stay accurate near the null
    /// cone; satisfies `m(zw) = m(z) m(w)` and vanishes exactly on zero
    /// divisors.
    pub fn modulus(self) -> f64 {
        (self.re + self.im) * (self.re - self.im)
    }

    /// Euclidean magnitude, used for tolerance comparisons (not the ring
    /// modulus, which can vanish on nonzero elements).
    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Componentwise sup norm.
    pub fn max_abs(self) -> f64 {
        self.re.abs().max(self.im.abs())
    }

    pub fn is_invertible(self, eps: f64) -> bool {
        self.modulus().abs() > eps
    }

    /// Ring inverse `conj(z) / m(z)`; errors with `ZeroDivisor` on the null
    /// cone, which downstream signals a degenerate metric value or plane.
    pub fn invert(self, eps: f64) -> Result<Self> {
        let m = self.modulus();
        if m.abs() <= eps {
            return Err(Error::ZeroDivisor {
                modulus: m.abs(),
                eps,
            });
        }
        Ok(Self::new(self.re / m, -self.im / m))
    }

    pub fn checked_div(self, rhs: Self, eps: f64) -> Result<Self> {
        Ok(self * rhs.invert(eps)?)
    }

    /// Null-basis coordinates `(re + im, re - im)`. Ring operations become
    /// componentwise real operations under this map.
    pub fn split(self) -> (f64, f64) {
        (self.re + self.im, self.re - self.im)
    }

    /// Exact inverse of [`split`](Self::split).
    pub fn unsplit(plus: f64, minus: f64) -> Self {
        Self::new((plus + minus) / 2.0, (plus - minus) / 2.0)
    }

    /// `exp(x + e*y) = e^x (cosh y + e sinh y)`.
    pub fn exp(self) -> Self {
        let ex = self.re.exp();
        Self::new(ex * self.im.cosh(), ex * self.im.sinh())
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn powu(self, mut k: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base *= base;
            k >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require invertibility.
    pub fn powi(self, k: i32, eps: f64) -> Result<Self> {
        if k >= 0 {
            Ok(self.powu(k as u32))
        } else {
            Ok(self.invert(eps)?.powu(k.unsigned_abs()))
        }
    }
}

impl Add for ParaComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for ParaComplex {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for ParaComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign for ParaComplex {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Mul for ParaComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re + self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl MulAssign for ParaComplex {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Mul<f64> for ParaComplex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.re * rhs, self.im * rhs)
    }
}

impl Neg for ParaComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl From<f64> for ParaComplex {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl fmt::Display for ParaComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}{}e*{}", self.re, if self.im < 0.0 { "" } else { "+" }, self.im)
        }
    }
}

impl Serialize for ParaComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.re)?;
        t.serialize_element(&self.im)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for ParaComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PcVisitor;
        impl<'de> Visitor<'de> for PcVisitor {
            type Value = ParaComplex;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a two-element array [re, im]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let re: f64 = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(0, &self))?;
                let im: f64 = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(1, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(serde::de::Error::invalid_length(3, &self));
                }
                Ok(ParaComplex::new(re, im))
            }
        }
        deserializer.deserialize_tuple(2, PcVisitor)
    }
}

/// A dense matrix over [`ParaComplex`], row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PCMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ParaComplex>,
}

impl PCMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ParaComplex::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ParaComplex::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ParaComplex>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix dimensions must be positive");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "raggedy rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ParaComplex) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ParaComplex::ZERO;
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, j)];
            }
            acc
        })
    }

    /// Null-basis projections: two real matrices whose componentwise algebra
    /// mirrors the para-complex algebra of `self`.
    pub fn split(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let plus = DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].split().0);
        let minus = DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].split().1);
        (plus, minus)
    }

    pub fn unsplit(plus: &DMatrix<f64>, minus: &DMatrix<f64>) -> Self {
        assert_eq!(plus.shape(), minus.shape());
        Self::from_fn(plus.nrows(), plus.ncols(), |i, j| {
            ParaComplex::unsplit(plus[(i, j)], minus[(i, j)])
        })
    }

    /// Matrix inverse through the null-basis splitting. Fails with
    /// `SingularProjection` when either real projection has absolute
    /// determinant below `eps`, which signals a degenerate metric at the
    /// evaluation point.
    pub fn inverse(&self, eps: f64) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        let (plus, minus) = self.split();
        let det_p = plus.clone().determinant();
        if det_p.abs() <= eps {
            return Err(Error::SingularProjection {
                which: ProjectionSign::Plus,
            });
        }
        let det_m = minus.clone().determinant();
        if det_m.abs() <= eps {
            return Err(Error::SingularProjection {
                which: ProjectionSign::Minus,
            });
        }
        let inv_p = plus.try_inverse().ok_or(Error::SingularProjection {
            which: ProjectionSign::Plus,
        })?;
        let inv_m = minus.try_inverse().ok_or(Error::SingularProjection {
            which: ProjectionSign::Minus,
        })?;
        Ok(Self::unsplit(&inv_p, &inv_m))
    }

    /// Max entry magnitude of `self * other - identity`; used by tests.
    pub fn residual_vs_identity(&self, other: &Self) -> f64 {
        let prod = self.mul(other);
        let mut worst = 0.0f64;
        for i in 0..prod.rows {
            for j in 0..prod.cols {
                let expect = if i == j {
                    ParaComplex::ONE
                } else {
                    ParaComplex::ZERO
                };
                worst = worst.max((prod[(i, j)] - expect).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for PCMatrix {
    type Output = ParaComplex;
    fn index(&self, (i, j): (usize, usize)) -> &ParaComplex {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PCMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ParaComplex {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(re: f64, im: f64) -> ParaComplex {
        ParaComplex::new(re, im)
    }

    #[test]
    fn e_squares_to_one() {
        assert_eq!(pc(0.0, 1.0) * pc(0.0, 1.0), pc(1.0, 0.0));
    }

    #[test]
    fn null_elements_multiply_to_zero() {
        assert_eq!(pc(1.0, 1.0) * pc(1.0, -1.0), pc(0.0, 0.0));
    }

    #[test]
    fn modulus_identity_product() {
        assert_eq!(pc(2.0, 1.0) * pc(2.0, -1.0), pc(3.0, 0.0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(pc(3.0, 2.0).conj(), pc(3.0, -2.0));
        assert_eq!(pc(5.0, 0.0).conj(), pc(5.0, 0.0));
        assert_eq!(pc(1.0, 7.0).conj().conj(), pc(1.0, 7.0));
    }

    #[test]
    fn inversion() {
        let inv = pc(2.0, 1.0).invert(EPS_INV).unwrap();
        assert!((inv - pc(2.0 / 3.0, -1.0 / 3.0)).norm() < 1e-15);
        assert_eq!(pc(1.0, 0.0).invert(EPS_INV).unwrap(), pc(1.0, 0.0));
        assert!(matches!(
            pc(1.0, 1.0).invert(EPS_INV),
            Err(Error::ZeroDivisor { .. })
        ));
    }

    #[test]
    fn split_values() {
        assert_eq!(pc(3.0, 1.0).split(), (4.0, 2.0));
        assert_eq!(pc(0.0, 1.0).split(), (1.0, -1.0));
        let z = pc(0.125, -5.75);
        assert_eq!(ParaComplex::unsplit(z.split().0, z.split().1), z);
        let w = pc(0.1234, -5.678);
        let back = ParaComplex::unsplit(w.split().0, w.split().1);
        assert!((back - w).norm() < 1e-15 * w.norm());
    }

    #[test]
    fn split_respects_multiplication() {
        let a = pc(1.0, 2.0);
        let b = pc(3.0, 1.0);
        let prod = a * b;
        assert_eq!(prod, pc(5.0, 7.0));
        let (ap, am) = a.split();
        let (bp, bm) = b.split();
        assert_eq!(prod.split(), (ap * bp, am * bm));
    }

    #[test]
    fn exp_of_pure_imaginary() {
        let v = ParaComplex::E.exp();
        assert!((v.re - 1.0f64.cosh()).abs() < 1e-15);
        assert!((v.im - 1.0f64.sinh()).abs() < 1e-15);
    }

    #[test]
    fn matrix_inverse_diagonal() {
        let m = PCMatrix::from_rows(vec![
            vec![pc(2.0, 0.0), ParaComplex::ZERO],
            vec![ParaComplex::ZERO, pc(3.0, 0.0)],
        ]);
        let inv = m.inverse(EPS_INV).unwrap();
        assert!((inv[(0, 0)] - pc(0.5, 0.0)).norm() < 1e-15);
        assert!((inv[(1, 1)] - pc(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(m.residual_vs_identity(&inv) < 1e-12);
    }

    #[test]
    fn matrix_inverse_identity() {
        let id = PCMatrix::identity(3);
        assert_eq!(id.inverse(EPS_INV).unwrap(), id);
    }

    #[test]
    fn matrix_inverse_zero_divisor_entry() {
        let m = PCMatrix::from_rows(vec![vec![pc(1.0, 1.0)]]);
        assert!(matches!(
            m.inverse(EPS_INV),
            Err(Error::SingularProjection {
                which: ProjectionSign::Minus
            })
        ));
    }

    #[test]
    fn serde_round_trip() {
        let z = pc(1.5, -2.25);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, "[1.5,-2.25]");
        let back: ParaComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }
}
