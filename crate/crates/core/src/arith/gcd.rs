//! Greatest common divisors of multivariate integer polynomials.
//!
//! Recursive content / primitive-part reduction: a polynomial is viewed as
//! univariate in its highest-index variable with coefficients in the
//! remaining ones, contents are handled recursively, and primitive parts are
//! reduced with a primitive pseudo-remainder sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::laurent::poly_div_exact;
use crate::LaurentPoly;

/// Gcd of two polynomials (no negative exponents), normalized so the
/// lexicographically leading coefficient is positive. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    let nvars = a.nvars();
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        let g = a.content().gcd(&b.content());
        return LaurentPoly::constant(nvars, g);
    }
    if poly_div_exact(a, b).is_some() {
        return normalize_sign(b.clone());
    }
    if poly_div_exact(b, a).is_some() {
        return normalize_sign(a.clone());
    }
    let var = match main_var(a, b) {
        Some(v) => v,
        None => return LaurentPoly::constant(nvars, a.content().gcd(&b.content())),
    };

    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let gc = poly_gcd(&ca, &cb);
    let mut f = poly_div_exact(a, &ca).expect("content divides");
    let mut g = poly_div_exact(b, &cb).expect("content divides");
    if degree_in(&f, var) < degree_in(&g, var) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if degree_in(&g, var) == 0 {
            // a primitive polynomial of degree zero is a unit
            return normalize_sign(gc);
        }
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        f = g;
        g = primitive_part_in(&r, var);
    }
    normalize_sign(&gc * &primitive_part_in(&g, var))
}

fn normalize_sign(p: LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

fn main_var(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    let ma = a.max_exponents();
    let mb = b.max_exponents();
    (0..a.nvars()).rev().find(|&i| ma[i] > 0 || mb[i] > 0)
}

pub(crate) fn degree_in(p: &LaurentPoly, var: usize) -> i32 {
    p.terms().map(|(e, _)| e[var]).max().unwrap_or(0)
}

/// Splits `p` by powers of `var`; the coefficient polynomials do not involve `var`.
fn coefficients_in(p: &LaurentPoly, var: usize) -> BTreeMap<i32, LaurentPoly> {
    let mut buckets: BTreeMap<i32, Vec<(Vec<i32>, BigInt)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        let d = std::mem::replace(&mut e2[var], 0);
        buckets.entry(d).or_default().push((e2, c.clone()));
    }
    buckets.into_iter().map(|(d, ts)| (d, LaurentPoly::from_terms(p.nvars(), ts))).collect()
}

fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(p.nvars());
    for c in coefficients_in(p, var).values() {
        g = poly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let c = content_in(p, var);
    poly_div_exact(p, &c).expect("content divides")
}

fn var_power(nvars: usize, var: usize, k: i32) -> Vec<i32> {
    let mut e = vec![0; nvars];
    e[var] = k;
    e
}

/// A nonzero multiple of the pseudo-remainder of `f` by `g` in `var`.
fn pseudo_rem(f: &LaurentPoly, g: &LaurentPoly, var: usize) -> LaurentPoly {
    let dg = degree_in(g, var);
    let lc_g = coefficients_in(g, var).remove(&dg).expect("leading coefficient");
    let mut f = f.clone();
    while !f.is_zero() {
        let df = degree_in(&f, var);
        if df < dg {
            break;
        }
        let lc_f = coefficients_in(&f, var).remove(&df).expect("leading coefficient");
        let shifted = g.shift(&var_power(f.nvars(), var, df - dg));
        f = &(&lc_g * &f) - &(&lc_f * &shifted);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(3, i)
    }
    fn c(k: i64) -> LaurentPoly {
        LaurentPoly::constant(3, k.into())
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let b = &x(0) - &x(1);
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn gcd_with_hidden_common_factor() {
        let common = &(&x(0) * &x(1)) + &(&x(2) + &c(1));
        let f1 = &x(0) + &c(2);
        let f2 = &(&x(1) * &x(1)) - &x(2);
        let a = &(&common * &f1) * &c(6);
        let b = &(&common * &f2) * &c(4);
        assert_eq!(poly_gcd(&a, &b), &common * &c(2));
    }

    #[test]
    fn coprime_polynomials() {
        let a = &x(0) + &x(1);
        let b = &x(0) + &c(1);
        assert!(poly_gcd(&a, &b).is_one());
        assert_eq!(poly_gcd(&a, &LaurentPoly::zero(3)), a);
        assert_eq!(poly_gcd(&(-&a), &LaurentPoly::zero(3)), a);
    }
}
