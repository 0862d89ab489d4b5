//! Polynomials in a central variable `t` with coefficients in a
//! noncommutative [`Ring`].
//!
//! Coefficients are stored leading-first: `a_0 t^n + a_1 t^{n-1} + … + a_n`.
//! Since `t` commutes with everything, a product of polynomials is the
//! convolution of coefficient sequences with factor order kept inside each
//! coefficient product.

use crate::error::PolyError;
use crate::ring::Ring;

#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<R> {
    /// Leading coefficient first; empty for the zero polynomial.
    coeffs: Vec<R>,
    /// Zero element of the coefficient ring, kept so the zero polynomial
    /// still knows its coefficient shape.
    zero: R,
}

impl<R: Ring> NCPoly<R> {
    /// Build from leading-first coefficients, dropping leading zeros.
    pub fn from_coeffs(coeffs: Vec<R>) -> Result<Self, PolyError> {
        let first = coeffs.first().ok_or(PolyError::NoCoefficients)?;
        if coeffs.iter().any(|c| !c.same_shape(first)) {
            return Err(PolyError::DimensionMismatch);
        }
        let zero = first.zero_like();
        Ok(Self::trimmed(coeffs, zero))
    }

    fn trimmed(mut coeffs: Vec<R>, zero: R) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        NCPoly { coeffs, zero }
    }

    pub fn zero(proto: &R) -> Self {
        NCPoly { coeffs: Vec::new(), zero: proto.zero_like() }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Self::trimmed(vec![c], zero)
    }

    pub fn one(proto: &R) -> Self {
        Self::constant(proto.one_like())
    }

    /// `t − x`.
    pub fn linear(x: &R) -> Self {
        NCPoly { coeffs: vec![x.one_like(), x.negated()], zero: x.zero_like() }
    }

    /// The ordered product `(t − x_1)(t − x_2)…(t − x_k)`; the empty product is 1.
    pub fn from_linear_factors<'a>(unit: &R, xs: impl IntoIterator<Item = &'a R>) -> Result<Self, PolyError>
    where
        R: 'a,
    {
        let mut acc = Self::one(unit);
        for x in xs {
            acc = acc.mul(&Self::linear(x))?;
        }
        Ok(acc)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
    }

    /// Leading-first coefficient slice.
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff_of_power(&self, k: usize) -> R {
        match self.degree() {
            Some(n) if k <= n => self.coeffs[n - k].clone(),
            _ => self.zero.clone(),
        }
    }

    pub fn zero_element(&self) -> &R {
        &self.zero
    }

    fn check(&self, x: &R) -> Result<(), PolyError> {
        if self.zero.same_shape(x) {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(&other.zero)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .rev()
            .map(|k| self.coeff_of_power(k).plus(&other.coeff_of_power(k)))
            .collect();
        Ok(Self::trimmed(coeffs, self.zero.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Self {
        NCPoly { coeffs: self.coeffs.iter().map(Ring::negated).collect(), zero: self.zero.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(&other.zero)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.zero));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(Self::trimmed(out, self.zero.clone()))
    }

    /// `Σ a_j x^{n−j}`; zero exactly when `x` is a right root.
    pub fn right_eval(&self, x: &R) -> Result<R, PolyError> {
        self.check(x)?;
        Ok(self.coeffs.iter().fold(self.zero.clone(), |acc, a| acc.times(x).plus(a)))
    }

    /// `Σ x^{n−j} a_j`; zero exactly when `x` is a left root.
    pub fn left_eval(&self, x: &R) -> Result<R, PolyError> {
        self.check(x)?;
        Ok(self.coeffs.iter().fold(self.zero.clone(), |acc, a| x.times(&acc).plus(a)))
    }

    /// Write `self = (t − x)·q + r` with `r` constant. `r` equals
    /// `left_eval(self, x)`, so it vanishes exactly when `t − x` is a left factor.
    pub fn left_divide_linear(&self, x: &R) -> Result<(Self, R), PolyError> {
        self.check(x)?;
        let n = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        if n == 0 {
            return Err(PolyError::DegreeTooSmall { found: 0, needed: 1 });
        }
        let mut q = Vec::with_capacity(n);
        let mut carry = self.coeffs[0].clone();
        for a in &self.coeffs[1..] {
            q.push(carry.clone());
            carry = a.plus(&x.times(&carry));
        }
        Ok((Self::trimmed(q, self.zero.clone()), carry))
    }

    /// Long division by a monic divisor on the right: `self = q·b + r`,
    /// `deg r < deg b`.
    pub fn right_divide_monic(&self, b: &Self) -> Result<(Self, Self), PolyError> {
        self.check(&b.zero)?;
        if !b.is_monic() {
            return Err(PolyError::NotMonic);
        }
        let m = b.degree().expect("monic polynomial is nonzero");
        let mut rem = self.clone();
        let Some(n) = rem.degree() else {
            return Ok((Self::zero(&self.zero), rem));
        };
        if n < m {
            return Ok((Self::zero(&self.zero), rem));
        }
        let mut quot = vec![self.zero.clone(); n - m + 1];
        while let Some(deg) = rem.degree() {
            if deg < m {
                break;
            }
            let c = rem.coeffs[0].clone();
            let shift = deg - m;
            quot[n - m - shift] = c.clone();
            // subtract c·t^shift·b, aligned at the leading position
            let mut coeffs = rem.coeffs.clone();
            for (j, bj) in b.coeffs.iter().enumerate() {
                coeffs[j] = coeffs[j].minus(&c.times(bj));
            }
            debug_assert!(coeffs[0].is_zero());
            rem = Self::trimmed(coeffs, self.zero.clone());
        }
        Ok((Self::trimmed(quot, self.zero.clone()), rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::{rat, Rational};

    type M = Matrix<Rational>;

    fn m(rows: &[&[i64]]) -> M {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    fn x1() -> M {
        m(&[&[0, 1], &[0, 0]])
    }

    fn x2() -> M {
        m(&[&[0, 0], &[1, 0]])
    }

    fn t_squared() -> NCPoly<M> {
        NCPoly::from_coeffs(vec![M::identity(2), M::zeros(2), M::zeros(2)]).unwrap()
    }

    #[test]
    fn mul_examples() {
        let x = m(&[&[1, 2], &[3, 4]]);
        let p = NCPoly::linear(&x);
        assert_eq!(p.mul(&NCPoly::one(&x)).unwrap(), p);

        let x12 = m(&[&[0, -1], &[0, 0]]);
        let prod = NCPoly::linear(&x12).mul(&NCPoly::linear(&x1())).unwrap();
        assert_eq!(prod, t_squared());

        let a = m(&[&[1, -2], &[0, 3]]);
        let b = m(&[&[2, 1], &[5, -1]]);
        let ab = NCPoly::linear(&a).mul(&NCPoly::linear(&b)).unwrap();
        assert_eq!(ab.coeffs(), &[M::identity(2), -&(&a + &b), &a * &b]);
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let z = NCPoly::zero(&x1());
        assert_eq!(z.degree(), None);
        assert!(z.left_divide_linear(&x1()).is_err());
        let p = NCPoly::from_coeffs(vec![M::zeros(2), M::zeros(2)]).unwrap();
        assert!(p.is_zero());
        assert_eq!(NCPoly::from_coeffs(Vec::<M>::new()), Err(PolyError::NoCoefficients));
    }

    #[test]
    fn mixed_dims_rejected() {
        assert_eq!(NCPoly::from_coeffs(vec![M::identity(2), M::identity(3)]), Err(PolyError::DimensionMismatch));
        let p = NCPoly::linear(&M::identity(2));
        assert_eq!(p.mul(&NCPoly::linear(&M::identity(3))), Err(PolyError::DimensionMismatch));
        assert_eq!(p.right_eval(&M::identity(3)), Err(PolyError::DimensionMismatch));
    }

    #[test]
    fn evaluation_examples() {
        let x = m(&[&[2, 1], &[7, -3]]);
        let y = m(&[&[1, 0], &[4, 4]]);
        let p = NCPoly::linear(&x);
        assert!(p.right_eval(&x).unwrap().is_zero());
        assert!(p.left_eval(&x).unwrap().is_zero());
        assert_eq!(p.right_eval(&y).unwrap(), &y - &x);
        assert_eq!(p.left_eval(&y).unwrap(), &y - &x);
        assert!(t_squared().right_eval(&x2()).unwrap().is_zero());

        // a is a left root of (t - a)(t - b), b a right root
        let ab = NCPoly::linear(&x).mul(&NCPoly::linear(&y)).unwrap();
        assert!(ab.left_eval(&x).unwrap().is_zero());
        assert!(ab.right_eval(&y).unwrap().is_zero());
        assert!(!ab.right_eval(&x).unwrap().is_zero());
    }

    #[test]
    fn left_division_examples() {
        let x = m(&[&[2, 1], &[7, -3]]);
        let q = NCPoly::from_coeffs(vec![m(&[&[1, 1], &[0, 2]]), m(&[&[5, 0], &[-1, 1]])]).unwrap();
        let b = NCPoly::linear(&x).mul(&q).unwrap();
        let (quot, rem) = b.left_divide_linear(&x).unwrap();
        assert_eq!(quot, q);
        assert!(rem.is_zero());

        let neg_x1 = m(&[&[0, -1], &[0, 0]]);
        let (quot, rem) = t_squared().left_divide_linear(&neg_x1).unwrap();
        assert_eq!(quot, NCPoly::linear(&x1()));
        assert!(rem.is_zero());

        let a = m(&[&[1, 1], &[1, 0]]);
        let (quot, rem) = NCPoly::linear(&a).left_divide_linear(&x).unwrap();
        assert_eq!(quot, NCPoly::one(&a));
        assert_eq!(rem, &x - &a);
    }

    #[test]
    fn right_division_examples() {
        let (q, r) = t_squared().right_divide_monic(&NCPoly::linear(&x1())).unwrap();
        assert_eq!(q, NCPoly::linear(&-&x1()));
        assert!(r.is_zero());

        let a = m(&[&[1, 1], &[1, 0]]);
        let b = m(&[&[0, 3], &[-2, 5]]);
        let (q, r) = NCPoly::linear(&a).right_divide_monic(&NCPoly::linear(&b)).unwrap();
        assert_eq!(q, NCPoly::one(&a));
        assert_eq!(r, NCPoly::constant(&b - &a));

        let not_monic = NCPoly::constant(a.clone());
        assert_eq!(NCPoly::linear(&b).right_divide_monic(&not_monic), Err(PolyError::NotMonic));
    }

    #[test]
    fn linear_factor_products() {
        let x = m(&[&[2, 1], &[7, -3]]);
        assert_eq!(NCPoly::from_linear_factors(&x, [&x]).unwrap(), NCPoly::linear(&x));
        let neg_x1 = m(&[&[0, -1], &[0, 0]]);
        assert_eq!(NCPoly::from_linear_factors(&x, [&neg_x1, &x1()]).unwrap(), t_squared());
        assert_eq!(NCPoly::from_linear_factors(&x, []).unwrap(), NCPoly::one(&x));
    }
}
