use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::{hnf, integer_rows, is_identity_prefix};
use super::IntMatrix;
use crate::arith::{gcd_all, xgcd_all, Int, Rational};
use crate::error::{Error, Result};

/// True iff the entries of `v` have gcd 1.
pub fn is_primitive(v: &[Int]) -> Result<bool> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(g.is_one())
}

/// Gcd of the maximal minors of `rows` (an `r x m` matrix with `r <= m`).
///
/// Column operations leave this gcd unchanged, so it equals the determinant
/// of the square block of the column Hermite form. Zero when the rows are
/// dependent.
pub fn max_minor_gcd(rows: &IntMatrix) -> Int {
    let r = rows.nrows();
    if r == 0 {
        return Int::one();
    }
    if r > rows.ncols() {
        return Int::zero();
    }
    let form = hnf(&rows.transpose());
    if form.rank() < r {
        return Int::zero();
    }
    (0..r).map(|i| form.basis.get(i, i).clone()).product()
}

/// Extends the rows of `rows` (`r x m`) to a unimodular `m x m` matrix whose
/// first `r` rows are the input.
///
/// The completion rows come from the inverse of the HNF transform of the
/// transposed input; they are then put in Hermite form among themselves and
/// reduced modulo the input lattice, which fixes the output.
pub fn complete_to_basis(rows: &IntMatrix) -> Result<IntMatrix> {
    let r = rows.nrows();
    let m = rows.ncols();
    if r > m {
        return Err(Error::NotExtendable(m));
    }
    let form = hnf(&rows.transpose());
    if !is_identity_prefix(&form, r) {
        return Err(Error::NotExtendable(m));
    }
    // U A^T = [I; 0], so A^T is the first r columns of U^{-1}; the remaining
    // columns complete it.
    let inv = form
        .transform
        .inverse_unimodular()
        .expect("HNF transform is unimodular");
    let inv_t = inv.transpose();
    let completion = inv_t.select_rows(r..m);
    let completion = hnf(&completion).basis;

    let own = hnf(rows);
    let mut out = rows.clone();
    for mut c in completion.into_rows() {
        for (row, &p) in own.basis.rows().iter().zip(&own.pivots) {
            let q = c[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (x, y) in c.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        out.push_row(c);
    }
    debug_assert!(out.is_unimodular());
    Ok(out)
}

/// Smallest positive last coordinate over `(w0 + L) ∪ (-w0 + L)`.
///
/// `lattice` must have `m - 1` rows which, together with `w0`, form a basis
/// of `Z^m`. Returns the minimum and one vector attaining it.
pub fn min_positive_last_in_coset(w0: &[Int], lattice: &IntMatrix) -> Result<(Int, Vec<Int>)> {
    let m = w0.len();
    if m == 0 || lattice.ncols() != m || lattice.nrows() + 1 != m {
        return Err(Error::BadCoset("lattice must have rank m - 1 in Z^m"));
    }
    let mut full = lattice.clone();
    full.push_row(w0.to_vec());
    if !full.determinant().abs().is_one() {
        return Err(Error::BadCoset("rows of L with w0 are not a basis of Z^m"));
    }

    let lasts = lattice.column(m - 1);
    let (g, coeffs) = xgcd_all(&lasts);
    let w_last = &w0[m - 1];

    // Target last coordinate and the sign of w0 used to reach it.
    let (target, sign) = if g.is_zero() {
        (w_last.abs(), if w_last.is_negative() { -1 } else { 1 })
    } else {
        let r = w_last.mod_floor(&g);
        let up = if r.is_zero() { g.clone() } else { r.clone() };
        let down = if r.is_zero() { g.clone() } else { &g - &r };
        if up <= down {
            (up, 1)
        } else {
            (down, -1)
        }
    };

    let start: Vec<Int> = w0.iter().map(|v| v * Int::from(sign)).collect();
    let mut witness = start;
    if !g.is_zero() {
        let shift = (&target - &witness[m - 1]) / &g;
        for (row, k) in lattice.rows().iter().zip(&coeffs) {
            let factor = &shift * k;
            if factor.is_zero() {
                continue;
            }
            for (x, y) in witness.iter_mut().zip(row) {
                *x += &factor * y;
            }
        }
    }
    debug_assert_eq!(witness[m - 1], target);
    Ok((target, witness))
}

/// Integer solution of `a x = b` for a rational matrix `a`, if one exists.
pub fn solve_integer_linear(a: &[Vec<Rational>], b: &[Rational]) -> Result<Option<Vec<Int>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let n = a.first().map_or(0, |r| r.len());
    if let Some(bad) = a.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    // Scale each equation (row together with its right-hand side) to integers.
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let scaled = integer_rows(&augmented, n + 1);
    let rhs: Vec<Int> = scaled.column(n);
    let lhs = IntMatrix::from_rows(
        scaled.rows().iter().map(|r| r[..n].to_vec()).collect(),
        n,
    );
    Ok(solve_integer_system(&lhs, &rhs))
}

/// Integer solution of `a x = b` over the integers.
pub fn solve_integer_system(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let n = a.ncols();
    assert_eq!(a.nrows(), b.len(), "right-hand side length mismatch");
    // U A^T = [H; 0]  =>  A U^T = [H^T | 0]; substitute x = U^T y.
    let form = hnf(&a.transpose());
    let mut y = vec![Int::zero(); n];
    for (i, &p) in form.pivots.iter().enumerate() {
        let mut s = b[p].clone();
        for (k, yk) in y.iter().enumerate().take(i) {
            s -= form.basis.get(k, p) * yk;
        }
        let piv = form.basis.get(i, p);
        if !s.is_multiple_of(piv) {
            return None;
        }
        y[i] = s / piv;
    }
    let x = form.transform.transpose().mul_vec(&y);
    if a.mul_vec(&x) == b {
        Some(x)
    } else {
        None
    }
}
