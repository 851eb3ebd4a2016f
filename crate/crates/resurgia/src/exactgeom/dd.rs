//! Incremental double description over exact integers.
//!
//! Works on the homogenized cone `{(x, t) : x >= 0, t >= 0, <h_j, x> >= c_j t}`
//! in dimension `n + 1`. Rays with positive last coordinate dehomogenize to
//! vertices of the polyhedron; rays with zero last coordinate are recession
//! directions and, for the nonnegative-normal constraint systems used here,
//! are always the coordinate axes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Point, Rational};

/// Hard ceilings: beyond these the computation errors out instead of thrashing.
const MAX_CONSTRAINTS: usize = 128;
const MAX_RAYS: usize = 50_000;

struct Ray {
    coords: Vec<BigInt>,
    /// Bit i set iff constraint i (in processing order) is tight on this ray.
    tight: u128,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Enumerates the vertices of `{ x in R^n_{>=0} : <row.0, x> >= row.1 }`.
///
/// Returns `None` when the system is infeasible over the orthant.
pub(crate) fn enumerate_vertices(
    dim: usize,
    rows: &[(Vec<BigInt>, BigInt)],
) -> Result<Option<Vec<Point>>> {
    let hdim = dim + 1;
    let total = hdim + rows.len();
    if total > MAX_CONSTRAINTS {
        return Err(Error::BudgetExceeded(format!(
            "{} constraints exceeds the ceiling of {}",
            total, MAX_CONSTRAINTS
        )));
    }

    // Homogenized constraint rows, orthant first.
    let mut cons: Vec<Vec<BigInt>> = Vec::with_capacity(total);
    for i in 0..hdim {
        let mut e = vec![BigInt::zero(); hdim];
        e[i] = BigInt::from(1);
        cons.push(e);
    }
    for (h, c) in rows {
        debug_assert_eq!(h.len(), dim);
        let mut row: Vec<BigInt> = h.clone();
        row.push(-c.clone());
        cons.push(row);
    }

    // The orthant cone is simplicial: its extreme rays are the unit vectors.
    let mut rays: Vec<Ray> = (0..hdim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); hdim];
            e[i] = BigInt::from(1);
            Ray { coords: e, tight: 0 }
        })
        .collect();
    let retight = |r: &mut Ray, upto: usize, cons: &[Vec<BigInt>]| {
        r.tight = 0;
        for (i, c) in cons[..upto].iter().enumerate() {
            if dot(c, &r.coords).is_zero() {
                r.tight |= 1u128 << i;
            }
        }
    };
    for r in &mut rays {
        retight(r, hdim, &cons);
    }

    for k in hdim..total {
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(&cons[k], &r.coords)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight |= 1u128 << k;
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut fresh: Vec<Vec<BigInt>> = Vec::new();
        for &p in &pos {
            for &m in &neg {
                let common = rays[p].tight & rays[m].tight;
                // Combinatorial adjacency: no third ray is tight on a superset
                // of the common tight set.
                if common.count_ones() as usize + 2 < hdim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(j, r)| {
                    j == p || j == m || (r.tight & common) != common
                });
                if !adjacent {
                    continue;
                }
                let vp = &vals[p];
                let vm = &vals[m];
                let coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[m].coords)
                    .map(|(a, b)| vp * b - vm * a)
                    .collect();
                fresh.push(primitive(coords));
            }
        }
        fresh.sort();
        fresh.dedup();

        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if !vals[i].is_negative() {
                next.push(r);
            }
        }
        for coords in fresh {
            next.push(Ray { coords, tight: 0 });
        }
        if next.len() > MAX_RAYS {
            return Err(Error::BudgetExceeded(format!(
                "ray count {} exceeds the ceiling of {}",
                next.len(),
                MAX_RAYS
            )));
        }
        for r in &mut next {
            retight(r, k + 1, &cons);
        }
        rays = next;
    }

    let mut vertices: Vec<Point> = Vec::new();
    for r in &rays {
        let t = &r.coords[dim];
        if t.is_positive() {
            let coords = r.coords[..dim]
                .iter()
                .map(|c| Rational::new(c.clone(), t.clone()))
                .collect();
            vertices.push(Point::new(coords));
        } else {
            // A recession ray; with nonnegative normals it must be an axis.
            debug_assert_eq!(
                r.coords.iter().filter(|c| !c.is_zero()).count(),
                1,
                "unexpected non-axis recession ray"
            );
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    vertices.sort();
    vertices.dedup();
    Ok(Some(vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn rows(data: &[(&[i64], i64)]) -> Vec<(Vec<BigInt>, BigInt)> {
        data.iter()
            .map(|(h, c)| (h.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*c)))
            .collect()
    }

    #[test]
    fn unit_simplex() {
        let v = enumerate_vertices(2, &rows(&[(&[1, 1], 1)])).unwrap().unwrap();
        assert_eq!(
            v,
            vec![Point::from_integers(&[0, 1]), Point::from_integers(&[1, 0])]
        );
    }

    #[test]
    fn triangle_symbolic_halfspaces() {
        let v = enumerate_vertices(3, &rows(&[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]))
            .unwrap()
            .unwrap();
        let half = Point::new(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(v.len(), 4);
        assert!(v.contains(&half));
        assert!(v.contains(&Point::from_integers(&[1, 1, 0])));
        assert!(v.contains(&Point::from_integers(&[1, 0, 1])));
        assert!(v.contains(&Point::from_integers(&[0, 1, 1])));
    }

    #[test]
    fn no_constraints_gives_origin() {
        let v = enumerate_vertices(3, &[]).unwrap().unwrap();
        assert_eq!(v, vec![Point::zero(3)]);
    }

    #[test]
    fn infeasible_is_none() {
        // <0-normal, x> >= 1 is impossible; normals must be nonzero in the
        // public API, but the enumerator handles it as plain infeasibility.
        let v = enumerate_vertices(2, &rows(&[(&[0, 0], 1)])).unwrap();
        assert!(v.is_none());
    }

    #[test]
    fn redundant_constraints_do_not_change_vertices() {
        let v = enumerate_vertices(2, &rows(&[(&[1, 1], 1), (&[2, 2], 1)])).unwrap().unwrap();
        assert_eq!(
            v,
            vec![Point::from_integers(&[0, 1]), Point::from_integers(&[1, 0])]
        );
        let _ = rat(0);
    }
}
