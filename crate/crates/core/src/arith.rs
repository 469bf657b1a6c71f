//! Small integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: Int) -> Rational {
    Rational::from_integer(v)
}

/// Non-negative gcd of a list; zero for an empty or all-zero list.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(values: I) -> Int {
    values
        .into_iter()
        .fold(Int::zero(), |acc, v| acc.gcd(v))
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a Int>>(values: I) -> Int {
    values.into_iter().fold(Int::one(), |acc, v| {
        if v.is_zero() {
            acc
        } else {
            acc.lcm(v)
        }
    })
}

/// Extended gcd over a list: returns `(g, coeffs)` with `g >= 0` and
/// `sum(coeffs[i] * values[i]) == g`.
pub fn xgcd_all(values: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs: Vec<Int> = Vec::with_capacity(values.len());
    for v in values {
        let ext = g.extended_gcd(v);
        let (mut ng, mut a, mut b) = (ext.gcd, ext.x, ext.y);
        if ng.is_negative() {
            ng = -ng;
            a = -a;
            b = -b;
        }
        for c in coeffs.iter_mut() {
            *c *= &a;
        }
        coeffs.push(b);
        g = ng;
    }
    (g, coeffs)
}

/// Least common denominator of a slice of rationals (1 for an empty slice).
pub fn common_denominator(values: &[Rational]) -> Int {
    lcm_all(values.iter().map(|v| v.denom()))
}

/// Scales rationals by their common denominator, returning the integer
/// numerators and the denominator used.
pub fn clear_denominators(values: &[Rational]) -> (Vec<Int>, Int) {
    let den = common_denominator(values);
    let nums = values
        .iter()
        .map(|v| (v * rat_int(den.clone())).to_integer())
        .collect();
    (nums, den)
}

/// Exact `p/q` rendering, `p` alone for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_from_i64(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Ceiling of `a / b` for `b > 0`.
pub fn ceil_div(a: &Int, b: &Int) -> Int {
    debug_assert!(b.is_positive());
    -((-a).div_floor(b))
}
