//! Random generators shared by the integration tests.
#![allow(dead_code)]

use affine_orbit::{AffineWitness, Int, IntMatrix, RatPoint, Rational, SymBasis, SymPoint};
use rand::Rng;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

/// A point `a/D` with `D <= max_den` and `|a_i| <= max_num`.
pub fn random_rat_point<R: Rng>(rng: &mut R, n: usize, max_den: i64, max_num: i64) -> RatPoint {
    let den = rng.gen_range(1..=max_den);
    RatPoint::new(
        (0..n)
            .map(|_| rat(rng.gen_range(-max_num..=max_num), den))
            .collect(),
    )
}

/// A point whose coordinates mix a rational constant with small rational
/// multiples of the symbols; zero multiples are common so that every rank
/// shows up.
pub fn random_sym_point<R: Rng>(rng: &mut R, basis: &SymBasis, n: usize) -> SymPoint {
    let k = basis.k();
    let coords = (0..n)
        .map(|_| {
            let mut c = vec![rat(rng.gen_range(-12..=12), rng.gen_range(1..=12))];
            for _ in 0..k {
                let num = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-3..=3) };
                c.push(rat(num, rng.gen_range(1..=4)));
            }
            c
        })
        .collect();
    SymPoint::new(basis.clone(), coords).unwrap()
}

/// A random element of `GL(n, Z) ⋉ Z^n`: a product of elementary
/// transvections, a signed permutation and a translation.
pub fn random_witness<R: Rng>(rng: &mut R, n: usize) -> AffineWitness {
    let mut u = IntMatrix::identity(n);
    if n >= 2 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let k = Int::from(rng.gen_range(-2..=2));
            let mut e = IntMatrix::identity(n);
            e.set(i, j, k);
            u = e.mul(&u);
        }
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut p = IntMatrix::identity(n).into_rows();
        p.swap(i, j);
        u = IntMatrix::from_rows(p, n).mul(&u);
    }
    let mut s = IntMatrix::identity(n);
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..n);
        s.set(i, i, Int::from(-1));
    }
    let u = s.mul(&u);
    let t = (0..n).map(|_| Int::from(rng.gen_range(-5..=5))).collect();
    AffineWitness::new(u, t).unwrap()
}

/// Whether `y = ±x + m` for some integer `m` in a window covering `[0, 1)`.
pub fn n1_brute_equiv(x: &Rational, y: &Rational) -> bool {
    (-1..=2).any(|m| {
        let m = Rational::from_integer(Int::from(m));
        *y == x + &m || *y == -x + &m
    })
}
