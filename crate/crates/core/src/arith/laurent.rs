//! Sparse multivariate Laurent polynomials.

use std::any::Any;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::scalar::{ExactDiv, Field, Ring};
use super::ArithError;

/// Largest exponent box handled by the dense multiplication and division.
const DENSE_LIMIT: usize = 1 << 22;

/// Row-major layout of the exponent box `lo ..= hi`, first variable most
/// significant, so increasing index is increasing lex order.
struct DenseBox {
    lo: Exponent,
    widths: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl DenseBox {
    fn new(lo: Exponent, hi: &[i32]) -> Option<Self> {
        let widths: Vec<usize> = lo.iter().zip(hi).map(|(l, h)| (h - l) as usize + 1).collect();
        let size = widths.iter().try_fold(1usize, |acc, &w| acc.checked_mul(w))?;
        let mut strides = vec![1usize; widths.len()];
        for v in (0..widths.len().saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * widths[v + 1];
        }
        Some(DenseBox { lo, widths, strides, size })
    }

    fn index(&self, e: &[i32]) -> Option<usize> {
        let mut idx = 0;
        for v in 0..e.len() {
            let d = e[v] - self.lo[v];
            if d < 0 || d as usize >= self.widths[v] {
                return None;
            }
            idx += d as usize * self.strides[v];
        }
        Some(idx)
    }

    fn exponent(&self, mut idx: usize) -> Exponent {
        let mut e = self.lo.clone();
        for v in 0..e.len() {
            e[v] += (idx / self.strides[v]) as i32;
            idx %= self.strides[v];
        }
        e
    }
}

/// Exponent vector of a monomial; entries may be negative.
pub type Exponent = Vec<i32>;

/// Laurent polynomial in a fixed number of variables `x1..xv`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so the stored
/// order is lexicographic and no zero coefficient is ever stored. Two values
/// are equal iff they have the same variable count and the same terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<C> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Ring> Laurent<C> {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, C::one())
    }

    pub fn monomial(nvars: usize, exponent: Exponent, c: C) -> Self {
        assert_eq!(exponent.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Laurent { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = std::mem::replace(existing, C::zero()) + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// The lexicographically greatest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Returns the constant if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.iter().next().filter(|(e, _)| e.iter().all(|&x| x == 0)).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        self.fold_exponents(i32::min)
    }

    /// Componentwise maximum exponent over all terms (zeros for the zero polynomial).
    pub fn max_exponents(&self) -> Exponent {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Exponent {
        let mut it = self.terms.keys();
        match it.next() {
            None => vec![0; self.nvars],
            Some(first) => it.fold(first.clone(), |mut acc, e| {
                for (a, &x) in acc.iter_mut().zip(e) {
                    *a = f(*a, x);
                }
                acc
            }),
        }
    }

    /// Multiplies by the monomial with the given exponent.
    pub fn shift(&self, by: &[i32]) -> Self {
        assert_eq!(by.len(), self.nvars);
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone())).collect();
        Laurent { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms =
            self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).filter(|(_, x)| !x.is_zero()).collect();
        Laurent { nvars: self.nvars, terms }
    }

    fn check_vars(&self, other: &Self) -> Result<(), ArithError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(ArithError::VariableCountMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_vars(other)?;
        if let Some(out) = self.dense_mul(other) {
            return Ok(out);
        }
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Product accumulated in a dense array over the exponent box, used when
    /// the box is small compared with the number of term pairs.
    fn dense_mul(&self, other: &Self) -> Option<Self> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (lo1, lo2) = (self.min_exponents(), other.min_exponents());
        let hi: Exponent = self.max_exponents().iter().zip(other.max_exponents()).map(|(a, b)| a + b).collect();
        let lo: Exponent = lo1.iter().zip(&lo2).map(|(a, b)| a + b).collect();
        let dense = DenseBox::new(lo, &hi)?;
        if dense.size > DENSE_LIMIT || dense.size > 4 * self.terms.len() * other.terms.len() {
            return None;
        }
        // index(e1 + e2) = offset of e1 in its own box + offset of e2 in its own box
        let offsets = |p: &Self, base: &[i32]| -> Vec<usize> {
            p.terms.keys().map(|e| (0..p.nvars).map(|v| (e[v] - base[v]) as usize * dense.strides[v]).sum()).collect()
        };
        let (off1, off2) = (offsets(self, &lo1), offsets(other, &lo2));
        if let (Some(a), Some(b)) = (as_integer(self), as_integer(other)) {
            if let Some(r) = small_mul(a, b, &dense, &off1, &off2) {
                return Some(from_integer(r));
            }
        }
        let mut acc = vec![C::zero(); dense.size];
        for (c1, o1) in self.terms.values().zip(&off1) {
            for (c2, o2) in other.terms.values().zip(&off2) {
                let slot = &mut acc[o1 + o2];
                *slot = std::mem::replace(slot, C::zero()) + c1.clone() * c2.clone();
            }
        }
        let terms = acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (dense.exponent(i), c));
        Some(Laurent { nvars: self.nvars, terms: terms.collect() })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Evaluates at a point of any field, lifting coefficients with `lift`.
    pub fn eval_with<F: Field>(&self, point: &[F], lift: impl Fn(&C) -> F) -> Result<F, ArithError> {
        if point.len() != self.nvars {
            return Err(ArithError::VariableCountMismatch { left: self.nvars, right: point.len() });
        }
        let mut total = F::zero();
        for (e, c) in &self.terms {
            let mut term = lift(c);
            for (i, (&k, x)) in e.iter().zip(point).enumerate() {
                if k == 0 {
                    continue;
                }
                let base = if k < 0 { x.inv().ok_or(ArithError::ZeroInNegativePower { var: i })? } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    term = term * base.clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }
}

impl<C: ExactDiv> Laurent<C> {
    /// Exact division: returns `r` with `r * q == self`.
    ///
    /// Both operands are shifted to polynomials with no monomial factor, the
    /// quotient is found by lexicographic long division, and the result is
    /// verified by multiplying back.
    pub fn div_exact(&self, q: &Self) -> Result<Self, ArithError> {
        self.check_vars(q)?;
        if q.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let a = self.min_exponents();
        let b = q.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let p0 = self.shift(&neg(&a));
        let q0 = q.shift(&neg(&b));
        let quot = poly_div_exact(&p0, &q0).ok_or(ArithError::InexactDivision)?;
        let shift: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        let r = quot.shift(&shift);
        if &(&r * q) != self {
            return Err(ArithError::InexactDivision);
        }
        Ok(r)
    }
}

/// Long division of polynomials (nonnegative exponents) under lex order.
/// Returns `None` as soon as a leading term fails to divide.
pub(crate) fn poly_div_exact<C: ExactDiv>(p: &Laurent<C>, q: &Laurent<C>) -> Option<Laurent<C>> {
    let nvars = p.nvars;
    let (lq_e, lq_c) = q.leading_term()?;
    let lq_e = lq_e.clone();
    let lq_c = lq_c.clone();
    // degree of the quotient in each variable is fixed by additivity
    let pmax = p.max_exponents();
    let qmax = q.max_exponents();
    let bound: Vec<i32> = pmax.iter().zip(&qmax).map(|(a, b)| a - b).collect();
    if bound.iter().any(|&d| d < 0) {
        return (p.is_zero()).then(|| Laurent::zero(nvars));
    }
    if let Some(dense) = DenseBox::new(p.min_exponents(), &pmax) {
        if dense.size <= DENSE_LIMIT && dense.size <= 4 * p.terms.len() * q.terms.len() {
            return dense_div_exact(p, q, &dense, &bound);
        }
    }
    let mut cur = p.clone();
    let mut quot = Laurent::zero(nvars);
    while let Some((e, c)) = cur.leading_term() {
        let diff: Vec<i32> = e.iter().zip(&lq_e).map(|(a, b)| a - b).collect();
        if diff.iter().zip(&bound).any(|(&d, &m)| d < 0 || d > m) {
            return None;
        }
        let coeff = c.exact_div(&lq_c)?;
        quot.add_term(diff.clone(), coeff.clone());
        for (qe, qc) in &q.terms {
            let e: Exponent = qe.iter().zip(&diff).map(|(a, b)| a + b).collect();
            cur.add_term(e, C::zero() - qc.clone() * coeff.clone());
        }
    }
    Some(quot)
}

/// The long division above on a dense array over the box of `p`. Every
/// term of an exact quotient times `q` stays inside that box, so a term
/// leaving it means the division is inexact.
fn dense_div_exact<C: ExactDiv>(p: &Laurent<C>, q: &Laurent<C>, dense: &DenseBox, bound: &[i32]) -> Option<Laurent<C>> {
    if let (Some(a), Some(b)) = (as_integer(p), as_integer(q)) {
        if let Some(r) = small_div_exact(a, b, dense, bound) {
            return r.map(from_integer);
        }
    }
    let (lq_e, lq_c) = q.leading_term()?;
    let mut cur = vec![C::zero(); dense.size];
    for (e, c) in &p.terms {
        cur[dense.index(e)?] = c.clone();
    }
    let mut quot = BTreeMap::new();
    for idx in (0..dense.size).rev() {
        if cur[idx].is_zero() {
            continue;
        }
        let diff: Exponent = dense.exponent(idx).iter().zip(lq_e).map(|(a, b)| a - b).collect();
        if diff.iter().zip(bound).any(|(&d, &m)| d < 0 || d > m) {
            return None;
        }
        let coeff = cur[idx].exact_div(lq_c)?;
        for (qe, qc) in &q.terms {
            let e: Exponent = qe.iter().zip(&diff).map(|(a, b)| a + b).collect();
            let slot = &mut cur[dense.index(&e)?];
            *slot = std::mem::replace(slot, C::zero()) - qc.clone() * coeff.clone();
        }
        quot.insert(diff, coeff);
    }
    Some(Laurent { nvars: p.nvars, terms: quot })
}

// Integer coefficients that fit in machine words are handled with i128
// arithmetic; every helper below returns `None` on overflow so the caller
// falls back to big integers.

fn as_integer<C: Ring>(p: &Laurent<C>) -> Option<&Laurent<BigInt>> {
    (p as &dyn Any).downcast_ref()
}

fn from_integer<C: Ring>(p: Laurent<BigInt>) -> Laurent<C> {
    *(Box::new(p) as Box<dyn Any>).downcast().expect("coefficient type already checked")
}

fn small_mul(
    a: &Laurent<BigInt>,
    b: &Laurent<BigInt>,
    dense: &DenseBox,
    off1: &[usize],
    off2: &[usize],
) -> Option<Laurent<BigInt>> {
    let ca: Vec<i64> = a.terms.values().map(ToPrimitive::to_i64).collect::<Option<_>>()?;
    let cb: Vec<i64> = b.terms.values().map(ToPrimitive::to_i64).collect::<Option<_>>()?;
    let mut acc = vec![0i128; dense.size];
    for (&x, o1) in ca.iter().zip(off1) {
        for (&y, o2) in cb.iter().zip(off2) {
            let slot = &mut acc[o1 + o2];
            *slot = slot.checked_add(i128::from(x) * i128::from(y))?;
        }
    }
    let terms = acc.into_iter().enumerate().filter(|&(_, c)| c != 0).map(|(i, c)| (dense.exponent(i), BigInt::from(c)));
    Some(Laurent { nvars: a.nvars, terms: terms.collect() })
}

/// Outer `None`: overflow. Inner `None`: inexact.
fn small_div_exact(
    p: &Laurent<BigInt>,
    q: &Laurent<BigInt>,
    dense: &DenseBox,
    bound: &[i32],
) -> Option<Option<Laurent<BigInt>>> {
    let Some((lq_e, lq_c)) = q.leading_term() else { return Some(None) };
    let lq_c = lq_c.to_i128()?;
    // each term of q relative to its leading term, per variable and as an index shift
    let mut qs = Vec::with_capacity(q.terms.len());
    for (e, c) in &q.terms {
        let delta: Vec<i32> = e.iter().zip(lq_e).map(|(a, b)| a - b).collect();
        let shift: isize = delta.iter().zip(&dense.strides).map(|(&d, &s)| d as isize * s as isize).sum();
        qs.push((delta, shift, c.to_i128()?));
    }
    let mut cur = vec![0i128; dense.size];
    for (e, c) in &p.terms {
        let Some(i) = dense.index(e) else { return Some(None) };
        cur[i] = c.to_i128()?;
    }
    let mut quot = BTreeMap::new();
    for idx in (0..dense.size).rev() {
        if cur[idx] == 0 {
            continue;
        }
        let here = dense.exponent(idx);
        let diff: Exponent = here.iter().zip(lq_e).map(|(a, b)| a - b).collect();
        if diff.iter().zip(bound).any(|(&d, &m)| d < 0 || d > m) || cur[idx] % lq_c != 0 {
            return Some(None);
        }
        let coeff = cur[idx] / lq_c;
        for (delta, shift, qc) in &qs {
            let inside = (0..here.len()).all(|v| {
                let d = here[v] + delta[v] - dense.lo[v];
                d >= 0 && (d as usize) < dense.widths[v]
            });
            if !inside {
                return Some(None);
            }
            let j = (idx as isize + shift) as usize;
            cur[j] = cur[j].checked_sub(qc.checked_mul(coeff)?)?;
        }
        quot.insert(diff, BigInt::from(coeff));
    }
    Some(Some(Laurent { nvars: p.nvars, terms: quot }))
}

impl Laurent<BigInt> {
    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, ArithError> {
        self.eval_with(point, |c| BigRational::from_integer(c.clone()))
    }

    /// True when every coefficient is a positive integer.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Content: gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Ring> $tr<&Laurent<C>> for &Laurent<C> {
            type Output = Laurent<C>;
            /// Panics if the variable counts differ.
            fn $method(self, rhs: &Laurent<C>) -> Laurent<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Ring> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Ring> $tr<&Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: &Laurent<C>) -> Laurent<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Ring> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        Laurent { nvars: self.nvars, terms }
    }
}

impl<C: Ring> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Ring> Debug for Laurent<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Laurent").field("nvars", &self.nvars).field("terms", &self.terms).finish()
    }
}
