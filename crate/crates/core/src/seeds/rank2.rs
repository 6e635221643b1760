//! The rank-two recurrence `x_{m-1} x_{m+1} = x_m^b + 1` (m odd) or `x_m^c + 1` (m even).

use crate::{LaurentPoly, RationalFunc};

/// The variable `x_m` of the rank-two algebra with exponents `(b, c)`, for any integer `m`.
pub fn rank2_variable(b: u32, c: u32, m: i64) -> RationalFunc {
    let exp = |k: i64| if k.rem_euclid(2) == 1 { b } else { c };
    let (mut prev, mut cur) = (LaurentPoly::var(2, 0), LaurentPoly::var(2, 1));
    if m >= 2 {
        // (prev, cur) = (x_{k-1}, x_k)
        for k in 2..m {
            let next = step(&cur, &prev, exp(k));
            prev = std::mem::replace(&mut cur, next);
        }
        return cur.into();
    }
    // walk backwards: (prev, cur) = (x_k, x_{k+1})
    let mut k = 1;
    while k > m {
        let before = step(&prev, &cur, exp(k));
        cur = std::mem::replace(&mut prev, before);
        k -= 1;
    }
    prev.into()
}

/// `x_1, .., x_count` of the rank-two algebra with exponents `(b, c)`.
pub fn rank2_sequence(b: u32, c: u32, count: usize) -> Vec<LaurentPoly> {
    let exp = |k: usize| if k % 2 == 1 { b } else { c };
    let mut out = vec![LaurentPoly::var(2, 0), LaurentPoly::var(2, 1)];
    while out.len() < count {
        let k = out.len();
        let next = step(&out[k - 1], &out[k - 2], exp(k));
        out.push(next);
    }
    out.truncate(count);
    out
}

/// `(mid^e + 1) / other`.
fn step(mid: &LaurentPoly, other: &LaurentPoly, e: u32) -> LaurentPoly {
    (&mid.pow(e) + &LaurentPoly::one(2)).div_exact(other).expect("rank-two exchange relations divide exactly")
}
