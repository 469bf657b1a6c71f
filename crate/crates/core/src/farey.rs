//! Denominators, homogeneous correspondents, regular simplexes and the
//! integer affine maps between them.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_div, fmt_rational, gcd_all, lcm_all, rat_int, xgcd_all, Int, Rational};
use crate::error::{Error, Result};
use crate::lattice::{
    complete_to_basis, hnf, max_minor_gcd, min_positive_last_in_coset, solve_integer_system,
    IntMatrix,
};
use crate::space::RatAffineSpace;

/// A point of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint(Vec<Rational>);

impl RatPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        RatPoint(coords)
    }

    pub fn from_i64_pairs(coords: &[(i64, i64)]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&(p, q)| Rational::new(Int::from(p), Int::from(q)))
                .collect(),
        )
    }

    pub fn origin(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Least common denominator of the coordinates.
    pub fn den(&self) -> Int {
        lcm_all(self.0.iter().map(|c| c.denom()))
    }

    /// `(den·x_1, …, den·x_n, den)`.
    pub fn homogeneous(&self) -> HomVector {
        let den = self.den();
        let scale = rat_int(den.clone());
        let mut entries: Vec<Int> = self.0.iter().map(|c| (c * &scale).to_integer()).collect();
        entries.push(den);
        HomVector(entries)
    }

    /// The unique rational point whose homogeneous correspondent is `h`.
    pub fn from_homogeneous(h: &[Int]) -> Result<Self> {
        Ok(HomVector::new(h.to_vec())?.to_point())
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(c))?;
        }
        write!(f, ")")
    }
}

/// Primitive integer vector with positive last entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomVector(Vec<Int>);

impl HomVector {
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        match entries.last() {
            Some(last) if last.is_positive() => {}
            _ => return Err(Error::NonPositiveLast),
        }
        if !gcd_all(&entries).is_one() {
            return Err(Error::NotPrimitive);
        }
        Ok(HomVector(entries))
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Int> {
        self.0
    }

    pub fn to_point(&self) -> RatPoint {
        let (last, head) = self.0.split_last().expect("non-empty");
        RatPoint::new(
            head.iter()
                .map(|v| Rational::new(v.clone(), last.clone()))
                .collect(),
        )
    }
}

/// Anything the affine group acts on coordinatewise.
pub trait AffinePoint: Sized {
    fn dim(&self) -> usize;

    /// `U x + t`; the caller guarantees matching dimensions.
    fn apply_unchecked(&self, g: &AffineWitness) -> Self;
}

impl AffinePoint for RatPoint {
    fn dim(&self) -> usize {
        self.0.len()
    }

    fn apply_unchecked(&self, g: &AffineWitness) -> Self {
        let coords = g
            .u
            .rows()
            .iter()
            .zip(&g.t)
            .map(|(row, t)| {
                row.iter()
                    .zip(&self.0)
                    .fold(rat_int(t.clone()), |acc, (a, x)| acc + x * rat_int(a.clone()))
            })
            .collect();
        RatPoint(coords)
    }
}

/// An element `x ↦ U x + t` of `GL(n, Z) ⋉ Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWitness {
    u: IntMatrix,
    t: Vec<Int>,
}

impl AffineWitness {
    pub fn new(u: IntMatrix, t: Vec<Int>) -> Result<Self> {
        if !u.is_square() || u.nrows() != t.len() {
            return Err(Error::DimensionMismatch {
                expected: u.nrows(),
                found: t.len(),
            });
        }
        if !u.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(AffineWitness { u, t })
    }

    pub fn identity(n: usize) -> Self {
        AffineWitness {
            u: IntMatrix::identity(n),
            t: vec![Int::zero(); n],
        }
    }

    pub fn translation(t: Vec<Int>) -> Self {
        AffineWitness {
            u: IntMatrix::identity(t.len()),
            t,
        }
    }

    /// Reads `(U, t)` off a block matrix `[[U, t], [0, 1]]`.
    pub fn from_block(m: &IntMatrix) -> Result<Self> {
        let n = m.nrows().checked_sub(1).ok_or(Error::InvalidArgument(
            "empty block matrix".into(),
        ))?;
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let last = m.row(n);
        if !last[..n].iter().all(Zero::is_zero) || !last[n].is_one() {
            return Err(Error::InvalidArgument(
                "block matrix must end with row (0, …, 0, 1)".into(),
            ));
        }
        let u = IntMatrix::from_rows(m.rows()[..n].iter().map(|r| r[..n].to_vec()).collect(), n);
        let t = m.rows()[..n].iter().map(|r| r[n].clone()).collect();
        Self::new(u, t)
    }

    pub fn to_block(&self) -> IntMatrix {
        let n = self.n();
        let mut rows: Vec<Vec<Int>> = self
            .u
            .rows()
            .iter()
            .zip(&self.t)
            .map(|(r, t)| {
                let mut row = r.clone();
                row.push(t.clone());
                row
            })
            .collect();
        let mut last = vec![Int::zero(); n + 1];
        last[n] = Int::one();
        rows.push(last);
        IntMatrix::from_rows(rows, n + 1)
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.u
    }

    pub fn translation_part(&self) -> &[Int] {
        &self.t
    }

    pub fn apply<P: AffinePoint>(&self, p: &P) -> Result<P> {
        if p.dim() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: p.dim(),
            });
        }
        Ok(p.apply_unchecked(self))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineWitness) -> Result<Self> {
        if inner.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: inner.n(),
            });
        }
        let u = self.u.mul(&inner.u);
        let t = self
            .u
            .mul_vec(&inner.t)
            .into_iter()
            .zip(&self.t)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AffineWitness { u, t })
    }

    pub fn inverse(&self) -> Self {
        let inv = self
            .u
            .inverse_unimodular()
            .expect("witness matrices are unimodular");
        let t = inv.mul_vec(&self.t).into_iter().map(|v| -v).collect();
        AffineWitness { u: inv, t }
    }
}

impl fmt::Display for AffineWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U = {}, t = [", self.u)?;
        for (i, v) in self.t.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Rational simplex given by affinely independent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatSimplex {
    vertices: Vec<RatPoint>,
}

impl RatSimplex {
    pub fn new(vertices: Vec<RatPoint>) -> Result<Self> {
        let n = vertices
            .first()
            .ok_or_else(|| Error::InvalidArgument("a simplex needs a vertex".into()))?
            .dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        if vertices.len() > n + 1 {
            return Err(Error::NotAffinelyIndependent);
        }
        let simplex = RatSimplex { vertices };
        if hnf(&simplex.homogeneous_matrix()).rank() != simplex.vertices.len() {
            return Err(Error::NotAffinelyIndependent);
        }
        Ok(simplex)
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Simplex dimension (number of vertices minus one).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn denominators(&self) -> Vec<Int> {
        self.vertices.iter().map(RatPoint::den).collect()
    }

    /// Rows are the homogeneous correspondents of the vertices.
    pub fn homogeneous_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.vertices
                .iter()
                .map(|v| v.homogeneous().into_entries())
                .collect(),
            self.n() + 1,
        )
    }

    /// Whether the homogeneous correspondents extend to a basis of `Z^{n+1}`.
    pub fn is_regular(&self) -> bool {
        max_minor_gcd(&self.homogeneous_matrix()).is_one()
    }

    pub fn map(&self, g: &AffineWitness) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| g.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatSimplex { vertices })
    }
}

/// The affine map sending the vertices of `source` to those of `target`, in
/// order, when their denominators agree vertexwise.
///
/// Both simplexes must be regular and full-dimensional. The map is read off
/// the integer matrix carrying one homogeneous basis onto the other.
pub fn simplex_transport(source: &RatSimplex, target: &RatSimplex) -> Result<Option<AffineWitness>> {
    let n = source.n();
    if target.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: target.n(),
        });
    }
    for s in [source, target] {
        if s.dim() != n {
            return Err(Error::InvalidArgument(format!(
                "transport needs full {n}-simplexes, got a {}-simplex",
                s.dim()
            )));
        }
        if !s.is_regular() {
            return Err(Error::NotRegular);
        }
    }
    if source.denominators() != target.denominators() {
        return Ok(None);
    }
    // M ṽ_i = w̃_i for all i, i.e. M V^T = W^T.
    let v_t = source.homogeneous_matrix().transpose();
    let w_t = target.homogeneous_matrix().transpose();
    let v_t_inv = v_t
        .inverse_unimodular()
        .expect("regular full simplexes have unimodular homogeneous matrices");
    let m = w_t.mul(&v_t_inv);
    AffineWitness::from_block(&m)
        .map(Some)
        .map_err(|e| Error::InternalVerificationFailure(format!("transport block: {e}")))
}

fn add_scaled(target: &mut [Int], source: &[Int], k: &Int) {
    if k.is_zero() {
        return;
    }
    for (x, y) in target.iter_mut().zip(source) {
        *x += k * y;
    }
}

fn vertices_from_rows(rows: Vec<Vec<Int>>) -> Result<RatSimplex> {
    let vertices = rows
        .iter()
        .map(|r| RatPoint::from_homogeneous(r))
        .collect::<Result<Vec<_>>>()?;
    RatSimplex::new(vertices)
}

/// A regular `dim(F)`-simplex inside `F` whose first vertex is `v0`.
///
/// `ṽ_0` is completed to a basis of the homogenization lattice of `F`; any
/// completion row with non-positive last entry is shifted by a multiple of
/// `ṽ_0`.
pub fn regular_simplex_in_space(space: &RatAffineSpace, v0: &RatPoint) -> Result<RatSimplex> {
    if v0.dim() != space.n() {
        return Err(Error::DimensionMismatch {
            expected: space.n(),
            found: v0.dim(),
        });
    }
    if !space.contains(v0) {
        return Err(Error::PointNotInSpace);
    }
    let v0h = v0.homogeneous().into_entries();
    let lattice = space.hom_lattice();
    let coords = solve_integer_system(&lattice.transpose(), &v0h).ok_or_else(|| {
        Error::InternalVerificationFailure("homogeneous point outside its lattice".into())
    })?;
    let change = complete_to_basis(&IntMatrix::from_rows(vec![coords], lattice.nrows()))?;
    let mut rows = change.mul(lattice).into_rows();
    debug_assert_eq!(rows[0], v0h);

    let den0 = &v0h[v0h.len() - 1];
    for row in rows.iter_mut().skip(1) {
        let last = row[row.len() - 1].clone();
        if !last.is_positive() {
            let k = (-last).div_floor(den0) + Int::one();
            add_scaled(row, &v0h, &k);
        }
    }
    vertices_from_rows(rows)
}

/// A regular `dim(F)`-simplex in `F` all of whose vertices have denominator
/// `d_F`.
pub fn homogeneous_denominator_simplex(space: &RatAffineSpace) -> Result<RatSimplex> {
    let v0 = space.min_denominator_point();
    let start = regular_simplex_in_space(space, &v0)?;
    let d = space.d();
    let mut rows = start.homogeneous_matrix().into_rows();
    let v0h = rows[0].clone();
    for row in rows.iter_mut().skip(1) {
        let den = row[row.len() - 1].clone();
        // m·d < den <= (m + 1)·d
        let m = ceil_div(&den, d) - Int::one();
        add_scaled(row, &v0h, &-m);
    }
    vertices_from_rows(rows)
}

/// A regular `n`-simplex whose first `dim(F) + 1` vertices lie in `F` with
/// denominator `d_F`, and whose remaining vertices have denominator `c_F`.
pub fn controlled_full_simplex(space: &RatAffineSpace) -> Result<RatSimplex> {
    let n = space.n();
    let e = space.dim();
    let base = homogeneous_denominator_simplex(space)?;
    if e == n {
        return Ok(base);
    }
    let inner = base.homogeneous_matrix();
    let full = complete_to_basis(&inner)?;
    let completion: Vec<Vec<Int>> = full.rows()[e + 1..].to_vec();

    let (apex, rest) = if e + 1 == n {
        let (c, apex) = min_positive_last_in_coset(&completion[0], &inner)?;
        if &c != space.c() {
            return Err(Error::InternalVerificationFailure(format!(
                "coset minimum {c} disagrees with c_F = {}",
                space.c()
            )));
        }
        (apex, Vec::new())
    } else {
        unit_last_apex(&completion, inner.row(0), space.d())?
    };

    let c = apex[n].clone();
    let mut rows = inner.into_rows();
    rows.push(apex.clone());
    for mut row in rest {
        // m·c < last <= (m + 1)·c
        let m = ceil_div(&row[n], &c) - Int::one();
        add_scaled(&mut row, &apex, &-m);
        rows.push(row);
    }
    vertices_from_rows(rows)
}

/// For codimension at least two: rewrites the completion rows so that the
/// first one has last entry 1.
///
/// Finds a primitive `a` with `a·ℓ ≡ 1 (mod d)` where `ℓ` are the last
/// entries of the completion rows, completes `a` to a unimodular matrix and
/// shifts the first new row by a multiple of `ṽ_0` (last entry `d`).
fn unit_last_apex(completion: &[Vec<Int>], v0h: &[Int], d: &Int) -> Result<(Vec<Int>, Vec<Vec<Int>>)> {
    let k = completion.len();
    let width = v0h.len();
    let last = width - 1;
    let lasts: Vec<Int> = completion.iter().map(|r| r[last].clone()).collect();

    let mut a: Vec<Int> = if d.is_one() {
        let mut unit = vec![Int::zero(); k];
        unit[0] = Int::one();
        unit
    } else {
        let mut vals = lasts.clone();
        vals.push(d.clone());
        let (g, coeffs) = xgcd_all(&vals);
        debug_assert!(g.is_one());
        coeffs[..k].to_vec()
    };

    if !gcd_all(&a).is_one() {
        if a[1..].iter().all(Zero::is_zero) {
            a[1] += d;
        }
        let tail = gcd_all(&a[1..]);
        let mut steps = Int::zero();
        while !a[0].gcd(&tail).is_one() {
            a[0] += d;
            steps += 1;
            if steps > tail {
                return Err(Error::InternalVerificationFailure(
                    "no primitive lift of the apex coefficients".into(),
                ));
            }
        }
    }

    let change = complete_to_basis(&IntMatrix::from_rows(vec![a], k))?;
    let rows = change
        .mul(&IntMatrix::from_rows(completion.to_vec(), width))
        .into_rows();
    let mut apex = rows[0].clone();
    let shift = (Int::one() - &apex[last]) / d;
    add_scaled(&mut apex, v0h, &shift);
    debug_assert!(apex[last].is_one());
    Ok((apex, rows[1..].to_vec()))
}
