//! Points of `R^n` over a declared symbol basis, their complete invariant
//! `(G_x, c_{F_x})`, orbit equivalence and witness construction.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{fmt_rational, rat_int, Int, Rational};
use crate::error::{Error, Result};
use crate::farey::{simplex_transport, AffinePoint, AffineWitness, RatPoint, RatSimplex};
use crate::lattice::{
    complete_to_basis, hnf, integer_kernel, integer_rows, lattice_canon, solve_integer_linear,
    solve_integer_system, IntMatrix, LatticeBasis,
};
use crate::space::{canonical_space, space_equiv, RatAffineSpace, SpaceInvariants};

/// Residual below which a numeric integer relation among the declared
/// symbol values is reported.
const RELATION_TOLERANCE: f64 = 1e-9;

/// The ordered basis `(1, α_1, …, α_k)` in which coordinates are written.
///
/// The symbols are trusted to be linearly independent over `Q` together with
/// `1`. Numeric values, when given, are only used for a warning-level sanity
/// check. Equality compares names only.
#[derive(Clone, Debug)]
pub struct SymBasis {
    names: Vec<String>,
    values: Option<Vec<f64>>,
}

impl PartialEq for SymBasis {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for SymBasis {}

impl Hash for SymBasis {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

fn valid_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymBasis {
    /// Basis of `Q`: rational points only.
    pub fn rational() -> Self {
        SymBasis {
            names: Vec::new(),
            values: None,
        }
    }

    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in &names {
            if !valid_symbol(name) {
                return Err(Error::InvalidArgument(format!("bad symbol name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidArgument(format!("symbol {name} declared twice")));
            }
        }
        Ok(SymBasis {
            names,
            values: None,
        })
    }

    /// Basis with numeric values attached; logs a warning when the values
    /// satisfy a small integer relation.
    pub fn with_values<S: Into<String>>(pairs: impl IntoIterator<Item = (S, f64)>) -> Result<Self> {
        let (names, values): (Vec<String>, Vec<f64>) =
            pairs.into_iter().map(|(n, v)| (n.into(), v)).unzip();
        let mut basis = Self::new(names)?;
        basis.values = Some(values);
        if let Some(rel) = basis.numeric_relation() {
            log::warn!(
                "declared symbols look Q-linearly dependent with 1 (relation {rel:?}); \
                 results assume independence"
            );
        }
        Ok(basis)
    }

    /// Number of symbols besides the constant.
    pub fn k(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    /// Coordinate slot of a symbol (the constant occupies slot 0).
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }

    /// A small integer vector `(c_0, c_1, …, c_k)` with
    /// `|c_0 + Σ c_j α_j| < 1e-9`, searched over a bounded box.
    pub fn numeric_relation(&self) -> Option<Vec<i64>> {
        let values = self.values.as_ref()?;
        let k = values.len();
        let bound: i64 = match k {
            0 => return None,
            1 | 2 => 24,
            3 => 8,
            4 | 5 => 3,
            _ => return None,
        };
        let mut coeffs = vec![-bound; k];
        loop {
            if coeffs.iter().any(|&c| c != 0) {
                let s: f64 = coeffs.iter().zip(values).map(|(&c, v)| c as f64 * v).sum();
                let nearest = s.round();
                if (s - nearest).abs() < RELATION_TOLERANCE && nearest.abs() <= bound as f64 {
                    let mut rel = vec![-(nearest as i64)];
                    rel.extend(&coeffs);
                    return Some(rel);
                }
            }
            let mut i = 0;
            loop {
                if i == k {
                    return None;
                }
                if coeffs[i] < bound {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = -bound;
                i += 1;
            }
        }
    }
}

/// A point of `R^n` whose coordinates are rational combinations of the
/// basis `(1, α_1, …, α_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymPoint {
    basis: SymBasis,
    coords: Vec<Vec<Rational>>,
}

impl SymPoint {
    pub fn new(basis: SymBasis, coords: Vec<Vec<Rational>>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("points need at least one coordinate".into()));
        }
        let width = basis.k() + 1;
        if let Some(bad) = coords.iter().find(|c| c.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: bad.len(),
            });
        }
        Ok(SymPoint { basis, coords })
    }

    pub fn from_rat(p: &RatPoint) -> Self {
        SymPoint {
            basis: SymBasis::rational(),
            coords: p.coords().iter().map(|c| vec![c.clone()]).collect(),
        }
    }

    pub fn basis(&self) -> &SymBasis {
        &self.basis
    }

    /// Coordinate `i` is `Σ_j coords[i][j] · basis_j`.
    pub fn coords(&self) -> &[Vec<Rational>] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// The rational point, when no symbol occurs.
    pub fn to_rational(&self) -> Option<RatPoint> {
        self.coords
            .iter()
            .all(|c| c[1..].iter().all(Zero::is_zero))
            .then(|| RatPoint::new(self.coords.iter().map(|c| c[0].clone()).collect()))
    }

    /// Floating evaluation when symbol values are known.
    pub fn approximate(&self) -> Option<Vec<f64>> {
        let values = self.basis.values()?;
        Some(
            self.coords
                .iter()
                .map(|c| {
                    c[0].to_f64().unwrap_or(f64::NAN)
                        + c[1..]
                            .iter()
                            .zip(values)
                            .map(|(q, v)| q.to_f64().unwrap_or(f64::NAN) * v)
                            .sum::<f64>()
                })
                .collect(),
        )
    }

    /// Text form of coordinate `i`, e.g. `1/2 + 3*a - b`.
    pub fn format_coord(&self, i: usize) -> String {
        let c = &self.coords[i];
        let mut out = String::new();
        for (j, q) in c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mag = q.abs();
            if out.is_empty() {
                if q.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if q.is_negative() { " - " } else { " + " });
            }
            if j == 0 {
                out.push_str(&fmt_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{}*", fmt_rational(&mag)));
                }
                out.push_str(&self.basis.names[j - 1]);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for SymPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.format_coord(i))?;
        }
        write!(f, ")")
    }
}

impl AffinePoint for SymPoint {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn apply_unchecked(&self, g: &AffineWitness) -> Self {
        let width = self.basis.k() + 1;
        let coords = g
            .matrix()
            .rows()
            .iter()
            .zip(g.translation_part())
            .map(|(row, t)| {
                let mut out = vec![Rational::zero(); width];
                out[0] = rat_int(t.clone());
                for (a, x) in row.iter().zip(&self.coords) {
                    if a.is_zero() {
                        continue;
                    }
                    let a = rat_int(a.clone());
                    for (o, v) in out.iter_mut().zip(x) {
                        *o += &a * v;
                    }
                }
                out
            })
            .collect();
        SymPoint {
            basis: self.basis.clone(),
            coords,
        }
    }
}

/// `G_x = Z + x_1 Z + … + x_n Z`, as a canonical lattice in `Q^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupInvariant {
    basis: SymBasis,
    lattice: LatticeBasis,
}

impl GroupInvariant {
    /// The group generated by `1` and the given elements.
    pub fn generated_by(basis: SymBasis, elements: &[Vec<Rational>]) -> Result<Self> {
        let width = basis.k() + 1;
        if let Some(bad) = elements.iter().find(|c| c.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: bad.len(),
            });
        }
        let mut gens = vec![unit(width)];
        gens.extend(elements.iter().cloned());
        Ok(GroupInvariant {
            lattice: lattice_canon(&gens, width),
            basis,
        })
    }

    pub fn basis(&self) -> &SymBasis {
        &self.basis
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// The largest `d` with `1/d ∈ G`.
    pub fn rational_denominator(&self) -> Int {
        let (m, den) = self.lattice.to_integer_rows();
        let width = m.ncols();
        let reversed = IntMatrix::from_rows(
            m.rows()
                .iter()
                .map(|r| r.iter().rev().cloned().collect())
                .collect(),
            width,
        );
        let form = hnf(&reversed);
        let last = form.rank() - 1;
        assert_eq!(form.pivots[last], width - 1, "group does not contain 1");
        let generator = form.basis.get(last, width - 1);
        debug_assert!(den.is_multiple_of(generator));
        den / generator
    }
}

fn unit(width: usize) -> Vec<Rational> {
    let mut e0 = vec![Rational::zero(); width];
    e0[0] = Rational::one();
    e0
}

/// `(G_x, c_{F_x})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitInvariant {
    pub group: GroupInvariant,
    pub c: Int,
}

impl OrbitInvariant {
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn e(&self) -> usize {
        self.rank() - 1
    }

    pub fn d(&self) -> Int {
        self.group.rational_denominator()
    }
}

pub fn group_of(x: &SymPoint) -> GroupInvariant {
    GroupInvariant::generated_by(x.basis.clone(), &x.coords).expect("point widths match its basis")
}

/// The smallest rational affine space containing `x`, cut out by the integer
/// relations `k_1 x_1 + … + k_n x_n + k_0 = 0`.
pub fn minimal_space(x: &SymPoint) -> RatAffineSpace {
    let n = x.n();
    let width = x.basis.k() + 1;
    // Row j lists the j-th symbol component of x_1, …, x_n, then of 1.
    let components: Vec<Vec<Rational>> = (0..width)
        .map(|j| {
            let mut row: Vec<Rational> = x.coords.iter().map(|c| c[j].clone()).collect();
            row.push(if j == 0 { Rational::one() } else { Rational::zero() });
            row
        })
        .collect();
    let relations = integer_kernel(&integer_rows(&components, n + 1));
    RatAffineSpace::from_relations(n, &relations).expect("x satisfies its own relations")
}

pub fn invariant_of(x: &SymPoint) -> Result<OrbitInvariant> {
    let group = group_of(x);
    let space = minimal_space(x);
    if group.rank() != space.dim() + 1 {
        return Err(Error::InternalVerificationFailure(format!(
            "rank(G_x) = {} but dim(F_x) = {}",
            group.rank(),
            space.dim()
        )));
    }
    if &group.rational_denominator() != space.d() {
        return Err(Error::InternalVerificationFailure(
            "d_F disagrees with the rational part of G_x".into(),
        ));
    }
    Ok(OrbitInvariant {
        group,
        c: space.c().clone(),
    })
}

fn check_compatible(x: &SymPoint, y: &SymPoint) -> Result<()> {
    if x.basis != y.basis {
        return Err(Error::BasisMismatch);
    }
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: y.n(),
        });
    }
    Ok(())
}

pub fn orbit_equiv(x: &SymPoint, y: &SymPoint) -> Result<bool> {
    check_compatible(x, y)?;
    Ok(invariant_of(x)? == invariant_of(y)?)
}

/// An explicit `γ` with `γ(x) = y`, or `None` when `x` and `y` lie in
/// different orbits. The returned map is always checked exactly.
pub fn witness(x: &SymPoint, y: &SymPoint) -> Result<Option<AffineWitness>> {
    check_compatible(x, y)?;
    let inv = invariant_of(x)?;
    if inv != invariant_of(y)? {
        return Ok(None);
    }
    let n = x.n();
    let gamma = if inv.rank() == n + 1 {
        change_of_basis(&x.coords, &y.coords)?
    } else {
        through_canonical_space(x, y, &inv)?
    };
    if gamma.apply(x)? != *y {
        return Err(Error::InternalVerificationFailure(format!(
            "constructed map sends {x} to {}, not {y}",
            gamma.apply(x)?
        )));
    }
    Ok(Some(gamma))
}

/// Full-rank case: `{1, x_1, …, x_n}` and `{1, y_1, …, y_n}` are two bases
/// of the same group, so `y_i = Σ_j U_ij x_j + t_i` with integer `U`, `t`.
fn change_of_basis(xs: &[Vec<Rational>], ys: &[Vec<Rational>]) -> Result<AffineWitness> {
    let n = xs.len();
    let width = xs[0].len();
    let system: Vec<Vec<Rational>> = (0..width)
        .map(|j| {
            let mut row: Vec<Rational> = xs.iter().map(|c| c[j].clone()).collect();
            row.push(if j == 0 { Rational::one() } else { Rational::zero() });
            row
        })
        .collect();
    let mut u = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    for y in ys {
        let mut sol = solve_integer_linear(&system, y)?.ok_or_else(|| {
            Error::InternalVerificationFailure("coordinate outside the common group".into())
        })?;
        t.push(sol.pop().expect("solution has n + 1 entries"));
        u.push(sol);
    }
    AffineWitness::new(IntMatrix::from_rows(u, n), t).map_err(|e| {
        Error::InternalVerificationFailure(format!("change of basis is not invertible: {e}"))
    })
}

/// Lower-rank case: move both points into the canonical space of their
/// class, flatten its free coordinates by `η(z) = d·(z_1, …, z_e)`, solve the
/// full-rank problem there and pull the result back with a simplex
/// transport.
fn through_canonical_space(x: &SymPoint, y: &SymPoint, inv: &OrbitInvariant) -> Result<AffineWitness> {
    let n = x.n();
    let e = inv.e();
    let d = inv.d();
    let class = SpaceInvariants {
        e,
        d: d.clone(),
        c: inv.c.clone(),
    };
    let (canon, p) = canonical_space(&class, n)?;
    let missing = || Error::InternalVerificationFailure("equal invariants but no space map".into());
    let gamma1 = space_equiv(&minimal_space(x), &canon)?.ok_or_else(missing)?;
    let gamma2 = space_equiv(&minimal_space(y), &canon)?.ok_or_else(missing)?;

    let gamma4 = if e == 0 {
        AffineWitness::identity(n)
    } else {
        let x1 = gamma1.apply(x)?;
        let y1 = gamma2.apply(y)?;
        let scale = rat_int(d.clone());
        let flatten = |z: &SymPoint| -> Vec<Vec<Rational>> {
            z.coords[..e]
                .iter()
                .map(|c| c.iter().map(|v| v * &scale).collect())
                .collect()
        };
        let gamma3 = change_of_basis(&flatten(&x1), &flatten(&y1))?;
        let p_over_d = Rational::new(p.clone(), d.clone());
        let lift = |u: &RatPoint| -> RatPoint {
            let mut coords: Vec<Rational> = u.coords().iter().map(|v| v / &scale).collect();
            coords.resize(n, p_over_d.clone());
            RatPoint::new(coords)
        };

        let mut flat_vertices = vec![RatPoint::origin(e)];
        for i in 0..e {
            let mut xi = vec![Rational::zero(); e];
            xi[i] = Rational::one();
            flat_vertices.push(RatPoint::new(xi));
        }
        let mut source: Vec<RatPoint> = flat_vertices.iter().map(lift).collect();
        let mut target = flat_vertices
            .iter()
            .map(|v| gamma3.apply(v).map(|w| lift(&w)))
            .collect::<Result<Vec<_>>>()?;
        let trailing = trailing_vertices(n, e, &p, &d, &inv.c);
        source.extend(trailing.iter().cloned());
        target.extend(trailing);
        simplex_transport(&RatSimplex::new(source)?, &RatSimplex::new(target)?)?.ok_or_else(|| {
            Error::InternalVerificationFailure("flattened simplexes disagree on denominators".into())
        })?
    };

    gamma2.inverse().compose(&gamma4.compose(&gamma1)?)
}

/// Vertices completing the canonical simplex of `{y_{e+1} = … = y_n = p/d}`
/// to a regular `n`-simplex: the origin and the unit vectors `ξ_{e+2}, …, ξ_n`
/// when `c = 1`, otherwise the single point `(0, …, 0, q/c)` with
/// `p·c − q·d = 1`.
fn trailing_vertices(n: usize, e: usize, p: &Int, d: &Int, c: &Int) -> Vec<RatPoint> {
    if c.is_one() {
        let mut out = vec![RatPoint::origin(n)];
        for i in e + 1..n {
            let mut xi = vec![Rational::zero(); n];
            xi[i] = Rational::one();
            out.push(RatPoint::new(xi));
        }
        out
    } else {
        let q = (p * c - Int::one()) / d;
        let mut coords = vec![Rational::zero(); n];
        coords[n - 1] = Rational::new(q, c.clone());
        vec![RatPoint::new(coords)]
    }
}

/// Number of orbits of points with `G_x = g`, and one representative per
/// orbit.
///
/// With `rank(g) = n` there is one orbit per admissible `c`; otherwise the
/// group alone decides and there is a single orbit. A rank `n + 1` group can
/// only arise when `1` is a basis element, so for `d > 1` it has no points at
/// all and the count is zero.
pub fn count_orbits(g: &GroupInvariant, n: usize) -> Result<(usize, Vec<SymPoint>)> {
    let rank = g.rank();
    if rank > n + 1 {
        return Err(Error::RankTooLarge {
            rank,
            limit: n + 1,
        });
    }
    if !g.lattice.contains(&unit(g.basis.k() + 1)) {
        return Err(Error::InvalidArgument("group does not contain 1".into()));
    }
    let d = g.rational_denominator();
    if rank == n + 1 && !d.is_one() {
        return Ok((0, Vec::new()));
    }

    // Complete (1/d)·1 to a basis {1/d, β_1, …, β_e} of g.
    let (m, den) = g.lattice.to_integer_rows();
    let mut target = vec![Int::zero(); m.ncols()];
    target[0] = &den / &d;
    let coords = solve_integer_system(&m.transpose(), &target)
        .ok_or_else(|| Error::InternalVerificationFailure("1/d outside g".into()))?;
    let change = complete_to_basis(&IntMatrix::from_rows(vec![coords], rank))?;
    let scale = rat_int(den);
    let betas: Vec<Vec<Rational>> = change.mul(&m).rows()[1..]
        .iter()
        .map(|r| r.iter().map(|v| rat_int(v.clone()) / &scale).collect())
        .collect();

    let cs: Vec<Int> = if rank == n {
        let half = std::cmp::max(Int::one(), &d / 2);
        let mut cs = Vec::new();
        let mut c = Int::one();
        while c <= half {
            if c.gcd(&d).is_one() {
                cs.push(c.clone());
            }
            c += 1;
        }
        cs
    } else {
        vec![Int::one()]
    };

    let mut reps = Vec::with_capacity(cs.len());
    for c in &cs {
        let p = crate::space::modular_inverse(c, &d);
        let mut p_over_d = vec![Rational::zero(); m.ncols()];
        p_over_d[0] = Rational::new(p, d.clone());
        let mut coords = betas.clone();
        coords.resize(n, p_over_d);
        let rep = SymPoint::new(g.basis.clone(), coords)?;
        let got = invariant_of(&rep)?;
        if &got.group != g || &got.c != c {
            return Err(Error::InternalVerificationFailure(format!(
                "representative {rep} has the wrong invariant"
            )));
        }
        reps.push(rep);
    }
    Ok((reps.len(), reps))
}

/// Euler's totient by trial division.
pub fn euler_phi(d: u64) -> u64 {
    assert!(d >= 1, "totient of zero");
    let mut rest = d;
    let mut phi = d;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}
