//! Rational affine subspaces of `R^n` and their invariant triple
//! `(dim F, d_F, c_F)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{clear_denominators, fmt_rational, gcd_all, xgcd_all, Int, Rational};
use crate::error::{Error, Result};
use crate::farey::{
    controlled_full_simplex, regular_simplex_in_space, simplex_transport, AffineWitness, RatPoint,
};
use crate::lattice::{complete_to_basis, hnf, integer_kernel, min_positive_last_in_coset, IntMatrix};

/// A nonempty rational affine subspace of `R^n`.
///
/// Stored as the saturated lattice of integer relations `a` with
/// `a_1 z_1 + … + a_n z_n + a_{n+1} = 0` on the space, in Hermite form, so
/// equal spaces compare equal. The homogenization lattice `L_F` and the
/// invariants `d_F`, `c_F` are computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatAffineSpace {
    n: usize,
    relations: IntMatrix,
    hom_lattice: IntMatrix,
    d: Int,
    c: Int,
}

/// The complete invariant of a rational affine space under the affine group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceInvariants {
    pub e: usize,
    pub d: Int,
    pub c: Int,
}

impl SpaceInvariants {
    pub fn new(e: usize, d: u64, c: u64) -> Self {
        SpaceInvariants {
            e,
            d: Int::from(d),
            c: Int::from(c),
        }
    }

    /// Checks that some space in `R^n` has these invariants.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = || Error::BadTriple {
            e: self.e,
            d: self.d.to_string(),
            c: self.c.to_string(),
            n,
        };
        if self.e > n || !self.d.is_positive() || !self.c.is_positive() {
            return Err(bad());
        }
        if !self.d.gcd(&self.c).is_one() {
            return Err(bad());
        }
        if self.e == n && !(self.d.is_one() && self.c.is_one()) {
            return Err(bad());
        }
        if self.e + 1 != n && !self.c.is_one() {
            return Err(bad());
        }
        let half = std::cmp::max(Int::one(), &self.d / 2);
        if self.c > half {
            return Err(bad());
        }
        Ok(())
    }
}

impl fmt::Display for SpaceInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e = {}, d = {}, c = {})", self.e, self.d, self.c)
    }
}

impl RatAffineSpace {
    /// Space cut out by integer relation rows of length `n + 1`.
    pub fn from_relations(n: usize, relations: &IntMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ambient dimension must be positive".into()));
        }
        if relations.nrows() > 0 && relations.ncols() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: relations.ncols(),
            });
        }
        let hom_lattice = if relations.nrows() == 0 {
            IntMatrix::identity(n + 1)
        } else {
            integer_kernel(relations)
        };
        let lasts = hom_lattice.column(n);
        let d = gcd_all(&lasts);
        if d.is_zero() {
            return Err(Error::InconsistentSystem);
        }
        let relations = if hom_lattice.nrows() == n + 1 {
            IntMatrix::zeros(0, n + 1)
        } else {
            hnf(&integer_kernel(&hom_lattice)).basis
        };
        let c = if hom_lattice.nrows() == n {
            let full = complete_to_basis(&hom_lattice)?;
            min_positive_last_in_coset(full.row(n), &hom_lattice)?.0
        } else {
            Int::one()
        };
        Ok(RatAffineSpace {
            n,
            relations,
            hom_lattice,
            d,
            c,
        })
    }

    /// Space of solutions of `<h, z> = r` for each `(h, r)`.
    pub fn from_equations(n: usize, equations: &[(Vec<Rational>, Rational)]) -> Result<Self> {
        let mut rows = Vec::with_capacity(equations.len());
        for (h, r) in equations {
            if h.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: h.len(),
                });
            }
            let mut row = h.clone();
            row.push(-r.clone());
            rows.push(clear_denominators(&row).0);
        }
        Self::from_relations(n, &IntMatrix::from_rows(rows, n + 1))
    }

    /// Affine hull of a nonempty list of rational points.
    pub fn from_points(points: &[RatPoint]) -> Result<Self> {
        let n = points
            .first()
            .ok_or_else(|| Error::InvalidArgument("affine hull of no points".into()))?
            .dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let hom = IntMatrix::from_rows(
            points.iter().map(|p| p.homogeneous().into_entries()).collect(),
            n + 1,
        );
        let relations = integer_kernel(&hom);
        Self::from_relations(n, &relations)
    }

    pub fn whole(n: usize) -> Self {
        Self::from_relations(n, &IntMatrix::zeros(0, n + 1)).expect("R^n is a valid space")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.hom_lattice.nrows() - 1
    }

    /// Minimal denominator of a rational point of the space.
    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    /// Canonical relation rows `(a_1, …, a_n, a_{n+1})`, meaning
    /// `a_1 z_1 + … + a_n z_n + a_{n+1} = 0`.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Hermite basis of the integer vectors in the span of the homogeneous
    /// correspondents of the rational points of the space.
    pub fn hom_lattice(&self) -> &IntMatrix {
        &self.hom_lattice
    }

    /// Relations rewritten as `<h, z> = r`.
    pub fn equations(&self) -> Vec<(Vec<Int>, Int)> {
        self.relations
            .rows()
            .iter()
            .map(|row| (row[..self.n].to_vec(), -row[self.n].clone()))
            .collect()
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        if p.dim() != self.n {
            return false;
        }
        let h = p.homogeneous().into_entries();
        self.relations.mul_vec(&h).iter().all(Zero::is_zero)
    }

    /// A rational point of the space with denominator `d_F`.
    pub fn min_denominator_point(&self) -> RatPoint {
        let (g, coeffs) = xgcd_all(&self.hom_lattice.column(self.n));
        debug_assert_eq!(g, self.d);
        let mut v = vec![Int::zero(); self.n + 1];
        for (row, k) in self.hom_lattice.rows().iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += k * y;
            }
        }
        RatPoint::from_homogeneous(&v).expect("saturated lattice gives a primitive vector")
    }

    /// The image `γ(F)`.
    pub fn image(&self, g: &AffineWitness) -> Result<Self> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.n(),
            });
        }
        // a·(z, 1) = 0 with (z, 1) = B^{-1} (y, 1).
        let inv = g.inverse().to_block();
        Self::from_relations(self.n, &self.relations.mul(&inv))
    }

    pub fn invariants(&self) -> SpaceInvariants {
        SpaceInvariants {
            e: self.dim(),
            d: self.d.clone(),
            c: self.c.clone(),
        }
    }
}

impl fmt::Display for RatAffineSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.relations.nrows() == 0 {
            return write!(f, "R^{}", self.n);
        }
        write!(f, "{{")?;
        for (i, (h, r)) in self.equations().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_equation(h, r))?;
        }
        write!(f, "}}")
    }
}

/// Renders `<h, y> = r` as text like `y1 - 2*y3 = 1/5`, dividing through by
/// the leading coefficient when that keeps integer coefficients.
pub fn format_equation(h: &[Int], r: &Int) -> String {
    let lead = h.iter().find(|v| !v.is_zero()).cloned().unwrap_or_else(Int::one);
    let scale = if h.iter().all(|v| v.is_multiple_of(&lead)) {
        lead
    } else {
        Int::one()
    };
    let mut lhs = String::new();
    for (i, a) in h.iter().enumerate() {
        let a = a / &scale;
        if a.is_zero() {
            continue;
        }
        let sign = if a.is_negative() { "-" } else { "+" };
        let mag = a.abs();
        if lhs.is_empty() {
            if a.is_negative() {
                lhs.push('-');
            }
        } else {
            lhs.push_str(&format!(" {sign} "));
        }
        if !mag.is_one() {
            lhs.push_str(&format!("{mag}*"));
        }
        lhs.push_str(&format!("y{}", i + 1));
    }
    if lhs.is_empty() {
        lhs.push('0');
    }
    let rhs = Rational::new(r.clone(), scale);
    format!("{lhs} = {}", fmt_rational(&rhs))
}

/// `d_F` as the gcd of the vertex denominators of a regular `dim F`-simplex
/// in the space.
pub fn d_of(space: &RatAffineSpace) -> Int {
    let simplex = regular_simplex_in_space(space, &space.min_denominator_point())
        .expect("the minimal-denominator point lies in the space");
    gcd_all(&simplex.denominators())
}

pub fn c_of(space: &RatAffineSpace) -> Int {
    space.c.clone()
}

pub fn classify_space(space: &RatAffineSpace) -> SpaceInvariants {
    space.invariants()
}

/// An affine map `γ` with `γ(F) = G`, or `None` when the invariants differ.
pub fn space_equiv(f: &RatAffineSpace, g: &RatAffineSpace) -> Result<Option<AffineWitness>> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            found: g.n,
        });
    }
    if f.invariants() != g.invariants() {
        return Ok(None);
    }
    let source = controlled_full_simplex(f)?;
    let target = controlled_full_simplex(g)?;
    let gamma = simplex_transport(&source, &target)?.ok_or_else(|| {
        Error::InternalVerificationFailure("controlled simplexes disagree on denominators".into())
    })?;
    if &f.image(&gamma)? != g {
        return Err(Error::InternalVerificationFailure(
            "transport does not carry the space onto its target".into(),
        ));
    }
    Ok(Some(gamma))
}

/// The representative `{y_{e+1} = … = y_n = p/d}` of the class with the given
/// invariants, together with `p`, the least value in `1..=d` with
/// `p·c ≡ 1 (mod d)`.
pub fn canonical_space(inv: &SpaceInvariants, n: usize) -> Result<(RatAffineSpace, Int)> {
    inv.validate(n)?;
    let d = &inv.d;
    let p = modular_inverse(&inv.c, d);
    let rows = (inv.e..n)
        .map(|i| {
            let mut row = vec![Int::zero(); n + 1];
            row[i] = d.clone();
            row[n] = -p.clone();
            row
        })
        .collect();
    let space = RatAffineSpace::from_relations(n, &IntMatrix::from_rows(rows, n + 1))?;
    if &space.invariants() != inv {
        return Err(Error::InternalVerificationFailure(format!(
            "canonical space has invariants {}, expected {inv}",
            space.invariants()
        )));
    }
    Ok((space, p))
}

/// Least `p` in `1..=m` with `p·a ≡ 1 (mod m)`; `a` and `m` coprime.
pub(crate) fn modular_inverse(a: &Int, m: &Int) -> Int {
    if m.is_one() {
        return Int::one();
    }
    let ext = a.extended_gcd(m);
    debug_assert!(ext.gcd.abs().is_one());
    let p = (ext.x * ext.gcd.signum()).mod_floor(m);
    if p.is_zero() {
        m.clone()
    } else {
        p
    }
}
