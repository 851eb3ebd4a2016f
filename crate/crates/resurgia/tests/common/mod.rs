//! Shared test helpers: independent oracles (exhaustive constraint-subset
//! vertex enumeration, brute-force pairings) and deterministic random data.
//!
//! The oracles deliberately avoid the library's double-description code path:
//! vertices come from solving square subsystems exactly, pairings from raw
//! point arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use resurgia::exactgeom::{ExtRational, Halfspace, QPolyhedron};
use resurgia::monomials::{MonomialIdeal, Ring};
use resurgia::rational::{Point, Rational};

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Solves `A x = b` exactly; `None` when the system is singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for c in col..n {
            a[col][c] = &a[col][c] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                a[r][c] = &a[r][c] - &f * &a[col][c];
            }
            b[r] = &b[r] - &f * &b[col];
        }
    }
    Some(b)
}

/// Exhaustive constraint-subset vertex enumeration for
/// `{x >= 0 : <h, x> >= c for each row}`: every size-`dim` subset of the
/// constraints (coordinates included) is solved as an equality system and
/// kept when feasible. This is exactly the basic-feasible-solution set.
pub fn oracle_vertices(dim: usize, rows: &[(Vec<i64>, i64)]) -> Vec<Point> {
    let total = dim + rows.len();
    let row_of = |idx: usize| -> (Vec<Rational>, Rational) {
        if idx < dim {
            let mut r = vec![Rational::zero(); dim];
            r[idx] = Rational::one();
            (r, Rational::zero())
        } else {
            let (h, c) = &rows[idx - dim];
            (h.iter().map(|&x| rat(x)).collect(), rat(*c))
        }
    };
    let feasible = |x: &[Rational]| {
        x.iter().all(|c| !c.is_negative())
            && rows.iter().all(|(h, c)| {
                h.iter()
                    .zip(x)
                    .map(|(a, b)| rat(*a) * b)
                    .sum::<Rational>()
                    >= rat(*c)
            })
    };
    let mut found: Vec<Point> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    // iterate over all size-dim subsets of 0..total
    loop {
        let (a, b): (Vec<Vec<Rational>>, Vec<Rational>) =
            subset.iter().map(|&i| row_of(i)).unzip();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let p = Point::new(x);
                if !found.contains(&p) {
                    found.push(p);
                }
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                found.sort();
                return found;
            }
            i -= 1;
            if subset[i] + (dim - i) < total {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The vertices of `conv(points) + orthant` by the oracle route: enumerate
/// polar vertices from constraint subsets, then re-enumerate primal vertices
/// from the facets they induce.
pub fn oracle_hull_vertices(dim: usize, points: &[Point]) -> Vec<Point> {
    let facets = oracle_hull_facets(dim, points);
    oracle_vertices(dim, &facets)
}

/// Facets (integer normal, offset) of `conv(points) + orthant` via the polar:
/// the facets correspond to vertices of `{y >= 0 : <p, y> >= 1}`.
pub fn oracle_hull_facets(dim: usize, points: &[Point]) -> Vec<(Vec<i64>, i64)> {
    // clear denominators: <p, y> >= 1 scaled to integers
    let rows: Vec<(Vec<i64>, i64)> = points
        .iter()
        .map(|p| {
            let lcm = p
                .coords()
                .iter()
                .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
            let h: Vec<i64> = p
                .coords()
                .iter()
                .map(|c| {
                    let v = c.numer() * (&lcm / c.denom());
                    i64::try_from(&v).expect("small test coordinates")
                })
                .collect();
            (h, i64::try_from(&lcm).expect("small test coordinates"))
        })
        .collect();
    let polar_vertices = oracle_vertices(dim, &rows);
    let mut facets: Vec<(Vec<i64>, i64)> = Vec::new();
    for v in polar_vertices {
        if v.is_zero() {
            continue;
        }
        // normal = v scaled to primitive integers, offset accordingly
        let lcm = v
            .coords()
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let mut normal: Vec<BigInt> =
            v.coords().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut g = BigInt::zero();
        for c in &normal {
            g = num_integer::gcd(g, c.clone());
        }
        let mut offset = lcm;
        if !g.is_zero() && !g.is_one() {
            for c in &mut normal {
                *c = &*c / &g;
            }
            // offset / g may not be integral; keep exact by scaling the other way
            if (&offset % &g).is_zero() {
                offset = &offset / &g;
            } else {
                for c in &mut normal {
                    *c = &*c * &g;
                }
            }
        }
        let row = (
            normal
                .iter()
                .map(|c| i64::try_from(c).expect("small test coordinates"))
                .collect::<Vec<i64>>(),
            i64::try_from(&offset).expect("small test coordinates"),
        );
        if !facets.contains(&row) {
            facets.push(row);
        }
    }
    facets.sort();
    facets
}

/// Brute-force `min <a, b>` over the generating point sets, independent of
/// computed vertex lists.
pub fn oracle_min_pairing(pa: &[Point], pb: &[Point]) -> Rational {
    let mut best: Option<Rational> = None;
    for a in pa {
        for b in pb {
            let v = a.dot(b);
            if best.as_ref().is_none_or(|m| v < *m) {
                best = Some(v);
            }
        }
    }
    best.expect("nonempty point sets")
}

/// Brute-force `sup { c / <h, u> }` over vertex/facet pairs.
pub fn oracle_sup_noncontainment(vertices: &[Point], facets: &[(Vec<i64>, i64)]) -> ExtRational {
    if facets.is_empty() {
        return ExtRational::MinusInfinity;
    }
    let mut best = ExtRational::MinusInfinity;
    for u in vertices {
        for (h, c) in facets {
            let pairing: Rational = h.iter().zip(u.coords()).map(|(a, b)| rat(*a) * b).sum();
            let value = if pairing.is_zero() {
                ExtRational::PlusInfinity
            } else {
                ExtRational::Finite(rat(*c) / pairing)
            };
            if value > best {
                best = value;
            }
        }
    }
    best
}

/// Random nonzero lattice points with coordinates in `1..=max_coord` on at
/// least one axis (never the origin).
pub fn random_points<R: Rng>(rng: &mut R, dim: usize, count: usize, max_coord: u32) -> Vec<Point> {
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let coords: Vec<i64> =
            (0..dim).map(|_| rng.gen_range(0..=max_coord) as i64).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        points.push(Point::from_integers(&coords));
    }
    points
}

pub fn random_upward_body<R: Rng>(rng: &mut R, dim: usize, max_vertices: usize) -> QPolyhedron {
    let count = rng.gen_range(1..=max_vertices);
    QPolyhedron::hull_plus_orthant(&random_points(rng, dim, count, 6)).unwrap()
}

/// Random proper nonzero squarefree monomial ideal in `n <= 5` variables.
pub fn random_squarefree_ideal<R: Rng>(rng: &mut R, n: usize) -> MonomialIdeal {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(names).unwrap();
    loop {
        let count = rng.gen_range(1..=4);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect())
            .collect();
        let gens: Vec<Vec<u32>> =
            gens.into_iter().filter(|g| g.iter().any(|&e| e > 0)).collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = MonomialIdeal::new(ring.clone(), gens).unwrap();
        if !ideal.is_zero() && !ideal.is_unit() {
            return ideal;
        }
    }
}

pub fn facet_rows(p: &QPolyhedron) -> Vec<(Vec<i64>, i64)> {
    let mut rows: Vec<(Vec<i64>, i64)> = p
        .facets()
        .iter()
        .map(|h| {
            (
                h.normal()
                    .iter()
                    .map(|c| i64::try_from(c).expect("small test coordinates"))
                    .collect(),
                i64::try_from(h.offset()).expect("small test coordinates"),
            )
        })
        .collect();
    rows.sort();
    rows
}

pub fn halfspace(normal: &[i64], offset: i64) -> Halfspace {
    Halfspace::from_integers(normal, offset).unwrap()
}
