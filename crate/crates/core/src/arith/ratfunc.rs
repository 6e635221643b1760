//! Rational functions over the integers, kept in a unique reduced form.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gcd::poly_gcd;
use super::laurent::poly_div_exact;
use super::ArithError;
use crate::LaurentPoly;

/// Quotient `num / den` of Laurent polynomials in normal form.
///
/// Normal form: the denominator is a polynomial with no monomial factor,
/// coprime to the numerator (integer content included), with positive
/// lexicographically leading coefficient. Any monomial part of the
/// denominator is absorbed into the Laurent numerator. Normal forms are
/// unique, so structural equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunc {
    /// Normalizes `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if num.nvars() != den.nvars() {
            return Err(ArithError::VariableCountMismatch { left: num.nvars(), right: den.nvars() });
        }
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let nvars = num.nvars();
        if num.is_zero() {
            return Ok(Self::zero(nvars));
        }
        let a = num.min_exponents();
        let b = den.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let n0 = num.shift(&neg(&a));
        let d0 = den.shift(&neg(&b));
        let g = poly_gcd(&n0, &d0);
        let mut n1 = poly_div_exact(&n0, &g).expect("gcd divides numerator");
        let mut d1 = poly_div_exact(&d0, &g).expect("gcd divides denominator");
        if d1.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            n1 = -n1;
            d1 = -d1;
        }
        let shift: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(RationalFunc { num: n1.shift(&shift), den: d1 })
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunc { num: LaurentPoly::zero(nvars), den: LaurentPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from(LaurentPoly::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from(LaurentPoly::var(nvars, i))
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::from(LaurentPoly::constant(nvars, c))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a Laurent polynomial, when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.den == rhs.den {
            return Self::new(self.num.checked_add(&rhs.num)?, self.den.clone());
        }
        let n = self.num.checked_mul(&rhs.den)?.checked_add(&rhs.num.checked_mul(&self.den)?)?;
        Self::new(n, self.den.checked_mul(&rhs.den)?)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        Self::new(self.num.checked_mul(&rhs.num)?, self.den.checked_mul(&rhs.den)?)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // numerator and denominator stay coprime under powers
        Ok(RationalFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// True when numerator and denominator have only positive coefficients.
    pub fn has_positive_coefficients(&self) -> bool {
        self.num.has_positive_coefficients() && self.den.has_positive_coefficients()
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, ArithError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Checks the normal-form invariants; used by tests.
    pub fn is_normalized(&self) -> bool {
        if self.den.is_zero() || !self.den.is_polynomial() {
            return false;
        }
        if self.den.min_exponents().iter().any(|&x| x != 0) {
            return false;
        }
        if self.den.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        let a = self.num.min_exponents();
        let n0 = self.num.shift(&a.iter().map(|x| -x).collect::<Vec<_>>());
        poly_gcd(&n0, &self.den).is_one()
    }
}

impl From<LaurentPoly> for RationalFunc {
    fn from(p: LaurentPoly) -> Self {
        let n = p.nvars();
        RationalFunc { num: p, den: LaurentPoly::one(n) }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RationalFunc> for &RationalFunc {
            type Output = RationalFunc;
            /// Panics on variable-count mismatch or division by zero.
            fn $method(self, rhs: &RationalFunc) -> RationalFunc {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RationalFunc> for RationalFunc {
            type Output = RationalFunc;
            fn $method(self, rhs: RationalFunc) -> RationalFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}
