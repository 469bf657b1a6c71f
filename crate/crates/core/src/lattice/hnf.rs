use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::arith::{clear_denominators, fmt_rational, lcm_all, rat_int, Int, Rational};

/// Row-style Hermite normal form of a generator matrix.
///
/// `transform * generators == [basis; 0]`, `transform` is unimodular,
/// `basis` is in echelon form with positive pivots and every entry above a
/// pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub basis: IntMatrix,
    pub transform: IntMatrix,
    /// Pivot column of each basis row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// Rows of the transform that annihilate the generators.
    pub fn kernel_rows(&self) -> IntMatrix {
        self.transform
            .select_rows(self.rank()..self.transform.nrows())
    }
}

fn sub_scaled(rows: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = if source < target {
        let (a, b) = rows.split_at_mut(target);
        (&a[source], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(source);
        (&b[0], &mut a[target])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

fn negate_row(row: &mut [Int]) {
    for v in row.iter_mut() {
        *v = -std::mem::take(v);
    }
}

/// Hermite normal form of the lattice spanned by the rows of `generators`.
pub fn hnf(generators: &IntMatrix) -> HermiteForm {
    let k = generators.nrows();
    let m = generators.ncols();
    let mut a = generators.clone().into_rows();
    let mut u = IntMatrix::identity(k).into_rows();
    let mut pivots = Vec::new();
    let mut r = 0;

    for col in 0..m {
        if r == k {
            break;
        }
        loop {
            let best = (r..k)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            u.swap(r, best);
            let mut cleared = true;
            for i in r + 1..k {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                sub_scaled(&mut a, i, r, &q);
                sub_scaled(&mut u, i, r, &q);
                if !a[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            negate_row(&mut a[r]);
            negate_row(&mut u[r]);
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            sub_scaled(&mut a, i, r, &q);
            sub_scaled(&mut u, i, r, &q);
        }
        pivots.push(col);
        r += 1;
    }

    a.truncate(r);
    HermiteForm {
        basis: IntMatrix::from_rows(a, m),
        transform: IntMatrix::from_rows(u, k),
        pivots,
    }
}

/// Basis of `{x in Z^cols : a x = 0}` in Hermite normal form.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let kernel = hnf(&a.transpose()).kernel_rows();
    hnf(&kernel).basis
}

/// Canonical basis of a finitely generated subgroup of `Q^m`.
///
/// Two `LatticeBasis` values are equal iff they present the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl LatticeBasis {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub(crate) fn from_integer_hnf(basis: &IntMatrix, scale: &Int) -> Self {
        let s = rat_int(scale.clone());
        LatticeBasis {
            ambient_dim: basis.ncols(),
            rows: basis
                .rows()
                .iter()
                .map(|r| r.iter().map(|v| rat_int(v.clone()) / &s).collect())
                .collect(),
        }
    }

    /// Membership test by echelon back-substitution.
    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rest = v.to_vec();
        for row in &self.rows {
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let coeff = &rest[p] / &row[p];
            if !coeff.is_integer() {
                return false;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &coeff * y;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    /// Integer entries scaled by the common denominator `D`, with `D`.
    pub fn to_integer_rows(&self) -> (IntMatrix, Int) {
        let den = lcm_all(self.rows.iter().flatten().map(|v| v.denom()));
        let scale = rat_int(den.clone());
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| (v * &scale).to_integer()).collect())
            .collect();
        (IntMatrix::from_rows(rows, self.ambient_dim), den)
    }

    pub fn display_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(fmt_rational).collect())
            .collect()
    }
}

/// Canonical basis of the subgroup of `Q^m` generated by `generators`.
///
/// Clears denominators by their lcm `D`, takes the HNF, and scales back.
pub fn lattice_canon(generators: &[Vec<Rational>], m: usize) -> LatticeBasis {
    assert!(
        generators.iter().all(|g| g.len() == m),
        "generator of wrong length for Q^{m}"
    );
    let den = lcm_all(generators.iter().flatten().map(|v| v.denom()));
    let scale = rat_int(den.clone());
    let rows: Vec<Vec<Int>> = generators
        .iter()
        .map(|g| g.iter().map(|v| (v * &scale).to_integer()).collect())
        .collect();
    let form = hnf(&IntMatrix::from_rows(rows, m));
    LatticeBasis::from_integer_hnf(&form.basis, &den)
}

/// Integer rows of a rational matrix, each row scaled by its own lcm.
pub(crate) fn integer_rows(rows: &[Vec<Rational>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(
        rows.iter().map(|r| clear_denominators(r).0).collect(),
        cols,
    )
}

pub(crate) fn is_identity_prefix(form: &HermiteForm, r: usize) -> bool {
    form.rank() == r
        && form
            .basis
            .rows()
            .iter()
            .enumerate()
            .all(|(i, row)| row[i].is_one())
}
