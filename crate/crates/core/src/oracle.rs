//! Independent ground truth at desk scale: bounded orbit search, the literal
//! definition of `c_F`, the closed form for `n = 1`, and witness checking.
//!
//! Everything here is deliberately naive so that it can check the
//! constructive routines rather than share their bugs.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{rat_int, Int, Rational};
use crate::error::{Error, Result};
use crate::farey::{AffinePoint, AffineWitness, RatPoint};
use crate::lattice::{max_minor_gcd, IntMatrix};
use crate::space::RatAffineSpace;

/// Limits for [`bfs_orbit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_word_length: usize,
    /// Points with a coordinate of larger absolute value are discarded.
    pub coordinate_bound: Rational,
    pub node_cap: usize,
}

impl SearchBudget {
    pub fn new(max_word_length: usize, coordinate_bound: Rational, node_cap: usize) -> Result<Self> {
        if max_word_length == 0 || !coordinate_bound.is_positive() || node_cap == 0 {
            return Err(Error::InvalidArgument("search budget entries must be positive".into()));
        }
        Ok(SearchBudget {
            max_word_length,
            coordinate_bound,
            node_cap,
        })
    }
}

/// Result of a bounded orbit search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSample {
    pub points: BTreeSet<RatPoint>,
    /// False when the node cap cut the search short.
    pub complete: bool,
}

/// Points reachable from `x` by words of bounded length in the generators
/// swap of coordinates `1` and `i`, sign change of coordinate 1,
/// `y_1 ± y_2`, and unit translations, staying inside the coordinate bound.
pub fn bfs_orbit(x: &RatPoint, budget: &SearchBudget) -> Result<OrbitSample> {
    let n = x.dim();
    let den = x.den();
    let too_big = || Error::InvalidArgument("orbit search needs small numerators".into());
    let den_i = den.to_i64().ok_or_else(too_big)?;
    let bound = (&budget.coordinate_bound * rat_int(den.clone()))
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(too_big)?;
    let start: Vec<i64> = x
        .coords()
        .iter()
        .map(|c| (c * rat_int(den.clone())).to_integer().to_i64())
        .collect::<Option<_>>()
        .ok_or_else(too_big)?;

    let neighbours = |p: &[i64]| -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(3 * n + 2);
        let mut q = p.to_vec();
        q[0] = -q[0];
        out.push(q);
        for i in 1..n {
            let mut q = p.to_vec();
            q.swap(0, i);
            out.push(q);
        }
        if n >= 2 {
            for sign in [1, -1] {
                let mut q = p.to_vec();
                q[0] += sign * p[1];
                out.push(q);
            }
        }
        for i in 0..n {
            for sign in [1, -1] {
                let mut q = p.to_vec();
                q[i] += sign * den_i;
                out.push(q);
            }
        }
        out
    };

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut complete = true;
    if start.iter().all(|v| v.abs() <= bound) {
        seen.insert(start.clone());
    }
    let mut frontier = vec![start];
    'search: for _ in 0..budget.max_word_length {
        let mut next = Vec::new();
        for p in &frontier {
            for q in neighbours(p) {
                if q.iter().any(|v| v.abs() > bound) || seen.contains(&q) {
                    continue;
                }
                if seen.len() >= budget.node_cap {
                    complete = false;
                    break 'search;
                }
                seen.insert(q.clone());
                next.push(q);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    let points = seen
        .into_iter()
        .map(|p| {
            RatPoint::new(
                p.into_iter()
                    .map(|v| Rational::new(Int::from(v), den.clone()))
                    .collect(),
            )
        })
        .collect();
    Ok(OrbitSample { points, complete })
}

/// `c_F` of a hyperplane by direct search: the least `s <= den_cap` such
/// that some point `v = a/s` with `|a_i| <= s + 1` completes a basis of the
/// homogenization lattice of `F` to a basis of `Z^{n+1}`.
///
/// Completion is tested through the cofactor vector `w` of the lattice basis
/// (`w·ṽ` is the determinant of the extended matrix), and every hit is
/// re-checked with an exact minor computation.
pub fn c_by_definition(space: &RatAffineSpace, den_cap: u64) -> Result<Option<Int>> {
    let n = space.n();
    if space.dim() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "definitional c_F search needs a hyperplane, got dimension {} in R^{n}",
            space.dim()
        )));
    }
    let lattice = space.hom_lattice();
    let cofactors: Vec<i64> = (0..=n)
        .map(|j| {
            let minor = IntMatrix::from_rows(
                lattice
                    .rows()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect(),
                n,
            );
            let det = minor.determinant();
            if j % 2 == 0 { det } else { -det }.to_i64()
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("lattice entries too large".into()))?;

    for s in 1..=den_cap as i64 {
        let reach = s + 1;
        let mut a = vec![-reach; n];
        loop {
            let det: i64 = a.iter().zip(&cofactors).map(|(x, w)| x * w).sum::<i64>() + s * cofactors[n];
            if det.abs() == 1 && a.iter().fold(s, |g, &v| g.gcd(&v)) == 1 {
                let mut hom: Vec<Int> = a.iter().map(|&v| Int::from(v)).collect();
                hom.push(Int::from(s));
                let mut extended = lattice.clone();
                extended.push_row(hom);
                if !max_minor_gcd(&extended).is_one() {
                    return Err(Error::InternalVerificationFailure(
                        "cofactor test disagrees with the minor computation".into(),
                    ));
                }
                return Ok(Some(Int::from(s)));
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                if a[i] < reach {
                    a[i] += 1;
                    break;
                }
                a[i] = -reach;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(None)
}

/// `(d, c)` of a rational number `p/q`, read off its reduced fraction.
///
/// The orbit of `p/q` under `t ↦ ±t + m` is `{±p mod q}`. The invariant
/// `c` is the least denominator of a point forming a regular segment with
/// `p/q`, i.e. the least positive `s` with `p·s ≡ ±1 (mod q)`; so `c` is the
/// smaller of `±p^{-1} mod q`, not of `±p`.
pub fn n1_classify(x: &Rational) -> (Int, Int) {
    let q = x.denom().clone();
    if q <= Int::from(2) {
        return (q, Int::one());
    }
    let p = x.numer().mod_floor(&q);
    let ext = p.extended_gcd(&q);
    let inv = (ext.x * ext.gcd.signum()).mod_floor(&q);
    let c = std::cmp::min(inv.clone(), &q - &inv);
    (q, c)
}

/// Whether `g` is an integer affine map with `g(x) = y`.
pub fn verify_witness<P: AffinePoint + PartialEq>(g: &AffineWitness, x: &P, y: &P) -> bool {
    g.matrix().is_unimodular() && matches!(g.apply(x), Ok(ref z) if z == y)
}

/// True when the denominators of all sampled points equal `den(x)`.
pub fn denominators_preserved(x: &RatPoint, sample: &OrbitSample) -> bool {
    let den = x.den();
    sample.points.iter().all(|p| p.den() == den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, vec_from_i64};

    fn pt(coords: &[(i64, i64)]) -> RatPoint {
        RatPoint::from_i64_pairs(coords)
    }

    fn hyperplane(n: usize, value: Rational) -> RatAffineSpace {
        let mut h = vec![rat(0, 1); n];
        h[n - 1] = rat(1, 1);
        RatAffineSpace::from_equations(n, &[(h, value)]).unwrap()
    }

    #[test]
    fn bfs_on_the_line() {
        let budget = SearchBudget::new(3, rat(10, 1), 10_000).unwrap();
        let sample = bfs_orbit(&pt(&[(0, 1)]), &budget).unwrap();
        let expected: BTreeSet<RatPoint> = (-3..=3).map(|k| pt(&[(k, 1)])).collect();
        assert_eq!(sample.points, expected);
        assert!(sample.complete);

        let budget = SearchBudget::new(6, rat(1, 1), 10_000).unwrap();
        let sample = bfs_orbit(&pt(&[(1, 5)]), &budget).unwrap();
        assert!(sample.points.contains(&pt(&[(4, 5)])));
        assert!(!sample.points.contains(&pt(&[(2, 5)])));
        assert!(denominators_preserved(&pt(&[(1, 5)]), &sample));
    }

    #[test]
    fn bfs_in_the_plane() {
        let budget = SearchBudget::new(8, rat(2, 1), 100_000).unwrap();
        let sample = bfs_orbit(&pt(&[(1, 5), (0, 1)]), &budget).unwrap();
        assert!(sample.points.contains(&pt(&[(2, 5), (0, 1)])));
    }

    #[test]
    fn bfs_reports_truncation() {
        let budget = SearchBudget::new(8, rat(5, 1), 10).unwrap();
        let sample = bfs_orbit(&pt(&[(1, 3), (1, 2)]), &budget).unwrap();
        assert!(!sample.complete);
        assert_eq!(sample.points.len(), 10);
    }

    #[test]
    fn definitional_c() {
        assert_eq!(c_by_definition(&hyperplane(2, rat(3, 5)), 5).unwrap(), Some(int(2)));
        assert_eq!(c_by_definition(&hyperplane(2, rat(1, 5)), 5).unwrap(), Some(int(1)));
        let f = RatAffineSpace::from_equations(2, &[(vec![rat(1, 1), rat(0, 1)], rat(1, 2))]).unwrap();
        assert_eq!(c_by_definition(&f, 2).unwrap(), Some(int(1)));
        // conv(3/7, 1/2) is regular, so c = 2 although 3/7 is not ±2/7.
        assert_eq!(c_by_definition(&hyperplane(1, rat(3, 7)), 1).unwrap(), None);
        assert_eq!(c_by_definition(&hyperplane(1, rat(3, 7)), 5).unwrap(), Some(int(2)));
        assert!(c_by_definition(&RatAffineSpace::whole(2), 3).is_err());
    }

    #[test]
    fn closed_form_on_the_line() {
        assert_eq!(n1_classify(&rat(2, 5)), (int(5), int(2)));
        assert_eq!(n1_classify(&rat(1, 7)), (int(7), int(1)));
        assert_eq!(n1_classify(&rat(0, 1)), (int(1), int(1)));
        assert_eq!(n1_classify(&rat(-3, 5)), (int(5), int(2)));
        assert_eq!(n1_classify(&rat(3, 7)), (int(7), int(2)));
        assert_eq!(n1_classify(&rat(1, 2)), (int(2), int(1)));
    }

    #[test]
    fn witness_checks() {
        let x = pt(&[(2, 5)]);
        let y = pt(&[(3, 5)]);
        assert!(verify_witness(&AffineWitness::identity(1), &x, &x));
        let flip = AffineWitness::new(IntMatrix::from_i64(&[&[-1]]), vec_from_i64(&[1])).unwrap();
        assert!(verify_witness(&flip, &x, &y));
        let shift = AffineWitness::translation(vec_from_i64(&[1]));
        assert!(!verify_witness(&shift, &x, &y));
    }
}
