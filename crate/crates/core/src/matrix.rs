//! Dense square matrices over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::LinalgError;
use crate::scalar::Scalar;

/// A `dim × dim` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// `scalar · I`.
    pub fn scalar(dim: usize, value: T) -> Self {
        Self::from_fn(dim, |r, c| if r == c { value.clone() } else { T::zero() })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(LinalgError::NotSquare { row, len: r.len(), dim });
            }
            entries.extend(r);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.dim + c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            Err(LinalgError::DimensionMismatch { left: self.dim, right: other.dim })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let d = self.dim;
        Ok(Self::from_fn(d, |r, c| {
            let mut acc = T::zero();
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * other.get(k, c).clone();
            }
            acc
        }))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|e| e.clone() * s.clone()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    /// Exact inverse by Gauss–Jordan elimination on `[A | I]`, taking the
    /// first nonzero pivot in each column.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let d = self.dim;
        let w = 2 * d;
        let mut a: Vec<Vec<T>> = (0..d)
            .map(|r| {
                let mut row: Vec<T> = self.entries[r * d..(r + 1) * d].to_vec();
                row.extend((0..d).map(|c| if c == r { T::one() } else { T::zero() }));
                row
            })
            .collect();

        for col in 0..d {
            let pivot = (col..d).find(|&r| !a[r][col].is_zero()).ok_or(LinalgError::Singular)?;
            a.swap(pivot, col);
            let p = a[col][col].clone();
            if !p.is_one() {
                for j in col..w {
                    a[col][j] = a[col][j].clone() / p.clone();
                }
            }
            for r in 0..d {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in col..w {
                    if a[col][j].is_zero() {
                        continue;
                    }
                    let v = a[r][j].clone() - factor.clone() * a[col][j].clone();
                    a[r][j] = v;
                }
            }
        }

        Ok(Matrix { dim: d, entries: a.into_iter().flat_map(|row| row.into_iter().skip(d)).collect() })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// Assemble a square grid of equal-sized blocks into one matrix; block
    /// `(r, c)` lands at rows `r·d..r·d+d`, columns `c·d..c·d+d`.
    pub fn block_assemble(blocks: &[Vec<Matrix<T>>]) -> Result<Self, LinalgError> {
        let k = blocks.len();
        if k == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        let d = blocks[0].first().ok_or(LinalgError::InhomogeneousBlocks)?.dim;
        if blocks.iter().any(|row| row.len() != k || row.iter().any(|b| b.dim != d)) {
            return Err(LinalgError::InhomogeneousBlocks);
        }
        Ok(Self::from_fn(k * d, |r, c| blocks[r / d][c / d].get(r % d, c % d).clone()))
    }

    /// The `d × d` block at block coordinates `(br, bc)`.
    pub fn block(&self, br: usize, bc: usize, d: usize) -> Self {
        Self::from_fn(d, |r, c| self.get(br * d + r, bc * d + c).clone())
    }
}

fn combine<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    op: impl FnOnce(&Matrix<T>, &Matrix<T>) -> Result<Matrix<T>, LinalgError>,
) -> Matrix<T> {
    match op(a, b) {
        Ok(m) => m,
        Err(e) => panic!("matrix operation on {}x{} and {}x{}: {e}", a.dim, a.dim, b.dim, b.dim),
    }
}

// Operator forms panic on dimension mismatch; use try_* for checked variants.
impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        combine(self, rhs, Matrix::try_add)
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        combine(self, rhs, Matrix::try_sub)
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        combine(self, rhs, Matrix::try_mul)
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|e| -e.clone()).collect() }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn add_examples() {
        let i2 = Matrix::<Rational>::identity(2);
        assert_eq!(&i2 + &Matrix::zeros(2), i2);
        assert_eq!(&m(&[&[0, 1], &[0, 0]]) + &m(&[&[0, 0], &[1, 0]]), m(&[&[0, 1], &[1, 0]]));
        let a = m(&[&[3, -1], &[2, 7]]);
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn mul_examples() {
        let x1 = m(&[&[0, 1], &[0, 0]]);
        let x2 = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(&Matrix::identity(2) * &x1, x1);
        assert!((&x1 * &x1).is_zero());
        // 2x2 products worked by hand
        assert_eq!(&x1 * &x2, m(&[&[1, 0], &[0, 0]]));
        assert_eq!(&x2 * &x1, m(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn inverse_examples() {
        let i3 = Matrix::<Rational>::identity(3);
        assert_eq!(i3.inverse().unwrap(), i3);
        let r = m(&[&[0, -1], &[1, 0]]);
        let inv = r.inverse().unwrap();
        assert_eq!(inv, m(&[&[0, 1], &[-1, 0]]));
        assert_eq!(&r * &inv, Matrix::identity(2));
        assert_eq!(m(&[&[0, 1], &[0, 0]]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn inverse_needs_row_swap() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert_eq!(&inv * &a, Matrix::identity(3));
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::<Rational>::identity(2);
        let b = Matrix::<Rational>::identity(3);
        assert_eq!(a.try_add(&b), Err(LinalgError::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.try_mul(&b).is_err());
        assert!(Matrix::<Rational>::from_rows(vec![vec![rat(1)], vec![rat(1), rat(2)]]).is_err());
    }

    #[test]
    fn blocks() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::block_assemble(&[vec![a.clone()]]).unwrap(), a);

        let x1 = m(&[&[0, 1], &[0, 0]]);
        let x2 = m(&[&[0, 0], &[1, 0]]);
        let i = Matrix::identity(2);
        let v = Matrix::block_assemble(&[vec![x1.clone(), x2.clone()], vec![i.clone(), i.clone()]]).unwrap();
        assert_eq!(v.dim(), 4);
        assert_eq!(v.get(0, 1), &rat(1));
        assert_eq!(v.get(1, 2), &rat(1));
        assert_eq!(v.get(2, 0), &rat(1));
        assert_eq!(v.get(3, 3), &rat(1));
        assert_eq!(v.get(3, 2), &rat(0));
        assert_eq!(v.block(0, 1, 2), x2);

        let mixed = [vec![i.clone(), Matrix::identity(3)], vec![i.clone(), i]];
        assert_eq!(Matrix::block_assemble(&mixed), Err(LinalgError::InhomogeneousBlocks));
    }

    #[test]
    fn works_over_f64() {
        let a = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert_eq!(a.inverse().unwrap(), Matrix::from_rows(vec![vec![0.5, 0.0], vec![0.0, 0.25]]).unwrap());
    }
}
