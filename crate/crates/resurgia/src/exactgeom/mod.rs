//! Exact rational polyhedral kernel for upward-closed polyhedra in the
//! nonnegative orthant.
//!
//! Every body here has the form `conv(V) + R^n_{>=0}`: the recession cone is
//! always the full orthant. That pins down a very small dual description:
//! a minimal vertex list plus the non-coordinate facets `<h, x> >= c` with
//! `h >= 0` integral primitive and `c > 0`. The coordinate constraints
//! `x_i >= 0` are implicit. A body contains the origin iff it is the whole
//! orthant, in which case the facet list is empty.

mod dd;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Point, Rational};

/// A non-coordinate halfspace `<normal, x> >= offset` in primitive integer form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl Halfspace {
    /// Builds the primitive form of `<normal, x> >= offset`.
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Result<Self> {
        if normal.iter().all(|c| c.is_zero()) || normal.iter().any(|c| c.is_negative()) {
            return Err(Error::BadHalfspace);
        }
        if offset.is_negative() {
            return Err(Error::BadHalfspace);
        }
        let mut g = offset.clone();
        for c in &normal {
            g = g.gcd(c);
        }
        if g.is_zero() || g.is_one() {
            return Ok(Halfspace { normal, offset });
        }
        Ok(Halfspace {
            normal: normal.into_iter().map(|c| c / &g).collect(),
            offset: offset / g,
        })
    }

    pub fn from_integers(normal: &[i64], offset: i64) -> Result<Self> {
        Halfspace::new(normal.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(offset))
    }

    /// Primitive halfspace `<u, x> >= 1` scaled to clear denominators.
    fn from_polar_vertex(u: &Point) -> Self {
        let mut lcm = BigInt::one();
        for c in u.coords() {
            lcm = lcm.lcm(c.denom());
        }
        let normal: Vec<BigInt> = u
            .coords()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Halfspace::new(normal, lcm).expect("polar vertex is nonzero and nonnegative")
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn eval(&self, x: &Point) -> Rational {
        self.normal
            .iter()
            .zip(x.coords())
            .map(|(h, c)| Rational::from_integer(h.clone()) * c)
            .sum()
    }

    pub fn satisfied_by(&self, x: &Point) -> bool {
        self.eval(x) >= Rational::from_integer(self.offset.clone())
    }

    /// The point `normal / offset`, a vertex of the polar body.
    fn polar_point(&self) -> Point {
        Point::new(
            self.normal
                .iter()
                .map(|h| Rational::new(h.clone(), self.offset.clone()))
                .collect(),
        )
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}, x> >= {}", self.normal, self.offset)
    }
}

/// Totally ordered extension of the rationals used for suprema conventions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ExtRational {
    MinusInfinity,
    Finite(Rational),
    PlusInfinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn div_by(&self, k: i64) -> ExtRational {
        match self {
            ExtRational::Finite(r) => {
                ExtRational::Finite(r / Rational::from_integer(BigInt::from(k)))
            }
            other => other.clone(),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::MinusInfinity => write!(f, "-inf"),
            ExtRational::PlusInfinity => write!(f, "+inf"),
            ExtRational::Finite(r) => write!(f, "{}", format_rational(r)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    /// The infeasible body, kept distinct from the full orthant.
    Empty,
    Body {
        vertices: Vec<Point>,
        facets: Vec<Halfspace>,
    },
}

/// An upward-closed rational polyhedron `conv(vertices) + R^n_{>=0}` with both
/// dual descriptions maintained eagerly. Equality is representation
/// independent: both lists are minimal and sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPolyhedron {
    dim: usize,
    repr: Repr,
}

impl QPolyhedron {
    pub fn empty(dim: usize) -> Self {
        QPolyhedron { dim, repr: Repr::Empty }
    }

    pub fn orthant(dim: usize) -> Self {
        QPolyhedron {
            dim,
            repr: Repr::Body {
                vertices: vec![Point::zero(dim)],
                facets: Vec::new(),
            },
        }
    }

    /// `conv(points) + R^n_{>=0}` with both descriptions minimized.
    pub fn hull_plus_orthant(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let dim = points[0].dim();
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
            if !p.is_nonnegative() {
                return Err(Error::NegativeCoordinate);
            }
        }
        if points.iter().any(|p| p.is_zero()) {
            return Ok(QPolyhedron::orthant(dim));
        }
        // Facets of P are the vertices of its polar: enumerate the vertices of
        // { y >= 0 : <p, y> >= 1 for every generator p }. Redundant generators
        // only add redundant constraints there.
        let rows: Vec<(Vec<BigInt>, BigInt)> = points.iter().map(point_row).collect();
        let polar_vertices = dd::enumerate_vertices(dim, &rows)?
            .expect("polar of an origin-free upward-closed body is nonempty");
        let facets: Vec<Halfspace> = polar_vertices
            .iter()
            .map(Halfspace::from_polar_vertex)
            .collect();
        Self::from_minimal_facets(dim, facets)
    }

    /// Intersection of the given halfspaces with the nonnegative orthant.
    /// Infeasible systems yield the distinct empty body, not an error.
    pub fn from_halfspaces(dim: usize, constraints: &[Halfspace]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        for h in constraints {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: h.dim() });
            }
        }
        // Offset-zero halfspaces with nonnegative normals are implied by the
        // orthant.
        let active: Vec<&Halfspace> = constraints.iter().filter(|h| h.offset.is_positive()).collect();
        if active.is_empty() {
            return Ok(QPolyhedron::orthant(dim));
        }
        let rows: Vec<(Vec<BigInt>, BigInt)> = active
            .iter()
            .map(|h| (h.normal.clone(), h.offset.clone()))
            .collect();
        match dd::enumerate_vertices(dim, &rows)? {
            None => Ok(QPolyhedron::empty(dim)),
            // Re-derive the facet list from the vertices so that redundant
            // input constraints are dropped.
            Some(vertices) => Self::hull_plus_orthant(&vertices),
        }
    }

    /// Builds the body from a known-irredundant facet list by enumerating its
    /// vertices.
    fn from_minimal_facets(dim: usize, mut facets: Vec<Halfspace>) -> Result<Self> {
        facets.sort();
        facets.dedup();
        let rows: Vec<(Vec<BigInt>, BigInt)> = facets
            .iter()
            .map(|h| (h.normal.clone(), h.offset.clone()))
            .collect();
        let vertices = dd::enumerate_vertices(dim, &rows)?
            .expect("a system of positive-offset halfspaces over the orthant is feasible");
        Ok(QPolyhedron {
            dim,
            repr: Repr::Body { vertices, facets },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.repr, Repr::Empty)
    }

    /// True iff the body is the full orthant, equivalently contains the origin.
    pub fn is_orthant(&self) -> bool {
        matches!(&self.repr, Repr::Body { facets, .. } if facets.is_empty())
    }

    /// Minimal vertex list, sorted. Panics on the empty body.
    pub fn vertices(&self) -> &[Point] {
        match &self.repr {
            Repr::Body { vertices, .. } => vertices,
            Repr::Empty => &[],
        }
    }

    /// Minimal non-coordinate facet list, sorted.
    pub fn facets(&self) -> &[Halfspace] {
        match &self.repr {
            Repr::Body { facets, .. } => facets,
            Repr::Empty => &[],
        }
    }

    /// Membership test; the empty body contains nothing.
    pub fn contains_point(&self, x: &Point) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        match &self.repr {
            Repr::Empty => Ok(false),
            Repr::Body { facets, .. } => {
                Ok(x.is_nonnegative() && facets.iter().all(|h| h.satisfied_by(x)))
            }
        }
    }

    /// The polar body `{a : <a, b> >= 1 for all b in P}`. Empty when the body
    /// contains the origin.
    pub fn polar(&self) -> Result<QPolyhedron> {
        match &self.repr {
            Repr::Empty => Err(Error::EmptyPolyhedron),
            Repr::Body { facets, .. } => {
                if facets.is_empty() {
                    return Ok(QPolyhedron::empty(self.dim));
                }
                let gens: Vec<Point> = facets.iter().map(Halfspace::polar_point).collect();
                QPolyhedron::hull_plus_orthant(&gens)
            }
        }
    }

    /// `polar(polar(P)) == P`; a self-test primitive.
    pub fn bipolar_check(&self) -> Result<bool> {
        let once = self.polar()?;
        if once.is_empty() {
            return Ok(false);
        }
        Ok(&once.polar()? == self)
    }

    pub fn scale(&self, lambda: &Rational) -> Result<QPolyhedron> {
        if !lambda.is_positive() {
            return Err(Error::NonpositiveScale);
        }
        match &self.repr {
            Repr::Empty => Ok(self.clone()),
            Repr::Body { vertices, facets } => {
                let new_vertices: Vec<Point> = vertices.iter().map(|v| v.scaled(lambda)).collect();
                let new_facets: Vec<Halfspace> = facets
                    .iter()
                    .map(|h| {
                        let scaled_offset = Rational::from_integer(h.offset.clone()) * lambda;
                        let normal: Vec<BigInt> = h
                            .normal
                            .iter()
                            .map(|c| c * scaled_offset.denom())
                            .collect();
                        Halfspace::new(normal, scaled_offset.numer().clone())
                            .expect("scaling preserves halfspace validity")
                    })
                    .collect();
                let mut facets = new_facets;
                facets.sort();
                Ok(QPolyhedron {
                    dim: self.dim,
                    repr: Repr::Body { vertices: new_vertices, facets },
                })
            }
        }
    }

    /// `Q subseteq self`, decided vertex-by-facet; valid because both
    /// recession cones are the orthant.
    pub fn contains(&self, q: &QPolyhedron) -> Result<bool> {
        if self.dim != q.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: q.dim });
        }
        match (&self.repr, &q.repr) {
            (_, Repr::Empty) => Ok(true),
            (Repr::Empty, _) => Ok(false),
            (Repr::Body { facets, .. }, Repr::Body { vertices, .. }) => {
                Ok(vertices.iter().all(|v| facets.iter().all(|h| h.satisfied_by(v))))
            }
        }
    }

    /// `sup { lambda > 0 : lambda * P not subseteq Q }` where `P = self`.
    ///
    /// `-inf` when `Q` has no non-coordinate facet (containment holds for
    /// every positive scale); `+inf` when some facet of `Q` pairs to zero
    /// against a vertex of `P`, or when `Q` is empty.
    pub fn sup_noncontainment(&self, q: &QPolyhedron) -> Result<ExtRational> {
        Ok(self.sup_noncontainment_witness(q)?.0)
    }

    /// As [`sup_noncontainment`](Self::sup_noncontainment) but also returns
    /// the achieving vertex/facet pair for finite and `+inf` values.
    pub fn sup_noncontainment_witness(
        &self,
        q: &QPolyhedron,
    ) -> Result<(ExtRational, Option<(Point, Halfspace)>)> {
        if self.dim != q.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: q.dim });
        }
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if q.is_empty() {
            return Ok((ExtRational::PlusInfinity, None));
        }
        if q.facets().is_empty() {
            return Ok((ExtRational::MinusInfinity, None));
        }
        let mut best: Option<(ExtRational, Point, Halfspace)> = None;
        for u in self.vertices() {
            for h in q.facets() {
                let pairing = h.eval(u);
                let value = if pairing.is_zero() {
                    ExtRational::PlusInfinity
                } else {
                    ExtRational::Finite(Rational::from_integer(h.offset.clone()) / pairing)
                };
                let better = match &best {
                    None => true,
                    Some((bv, bu, bh)) => {
                        value > *bv || (value == *bv && (u, h) < (bu, bh))
                    }
                };
                if better {
                    best = Some((value, u.clone(), h.clone()));
                }
            }
        }
        let (value, u, h) = best.expect("both vertex and facet lists are nonempty");
        Ok((value, Some((u, h))))
    }

    /// `min { <a, b> : a in P, b in Q }`, attained at a vertex pair.
    pub fn min_pairing(&self, q: &QPolyhedron) -> Result<Rational> {
        Ok(self.min_pairing_witness(q)?.0)
    }

    pub fn min_pairing_witness(&self, q: &QPolyhedron) -> Result<(Rational, (Point, Point))> {
        if self.dim != q.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: q.dim });
        }
        if self.is_empty() || q.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mut best: Option<(Rational, (Point, Point))> = None;
        for u in self.vertices() {
            for v in q.vertices() {
                let val = u.dot(v);
                let better = match &best {
                    None => true,
                    Some((bv, bw)) => val < *bv || (val == *bv && (u, v) < (&bw.0, &bw.1)),
                };
                if better {
                    best = Some((val, (u.clone(), v.clone())));
                }
            }
        }
        Ok(best.expect("vertex lists are nonempty"))
    }

    /// Smallest `lambda > 0` with `lambda * x` in the body, i.e. where the ray
    /// through `x` first enters. `+inf` when the ray misses the body, `0` for
    /// the full orthant (every positive scale is inside).
    pub fn first_ray_exit(&self, x: &Point) -> Result<ExtRational> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !x.is_nonnegative() {
            return Err(Error::NegativeCoordinate);
        }
        match &self.repr {
            Repr::Empty => Ok(ExtRational::PlusInfinity),
            Repr::Body { facets, .. } => {
                let mut best = Rational::zero();
                for h in facets {
                    let pairing = h.eval(x);
                    if pairing.is_zero() {
                        return Ok(ExtRational::PlusInfinity);
                    }
                    let lam = Rational::from_integer(h.offset.clone()) / pairing;
                    if lam > best {
                        best = lam;
                    }
                }
                Ok(ExtRational::Finite(best))
            }
        }
    }

    pub fn to_json_value(&self) -> Value {
        match &self.repr {
            Repr::Empty => json!({"dim": self.dim, "empty": true}),
            Repr::Body { vertices, facets } => {
                let vs: Vec<Value> = vertices
                    .iter()
                    .map(|v| {
                        Value::Array(
                            v.coords()
                                .iter()
                                .map(|c| Value::String(format_rational(c)))
                                .collect(),
                        )
                    })
                    .collect();
                let fs: Vec<Value> = facets
                    .iter()
                    .map(|h| {
                        json!({
                            "normal": h.normal.iter().map(bigint_json).collect::<Vec<_>>(),
                            "offset": bigint_json(&h.offset),
                        })
                    })
                    .collect();
                json!({"dim": self.dim, "vertices": vs, "facets": fs})
            }
        }
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad_json("expected object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad_json("missing dim"))? as usize;
        if obj.get("empty").and_then(Value::as_bool) == Some(true) {
            return Ok(QPolyhedron::empty(dim));
        }
        let vs = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad_json("missing vertices"))?;
        let mut points = Vec::with_capacity(vs.len());
        for row in vs {
            let row = row.as_array().ok_or_else(|| bad_json("vertex must be an array"))?;
            let coords: Result<Vec<Rational>> = row
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| bad_json("coordinate must be a string"))
                        .and_then(parse_rational)
                })
                .collect();
            points.push(Point::new(coords?));
        }
        // Rebuild from the vertex description; the facet list is re-derived
        // so malformed input cannot produce an inconsistent body.
        QPolyhedron::hull_plus_orthant(&points)
    }
}

impl fmt::Debug for QPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Empty => write!(f, "QPolyhedron::empty({})", self.dim),
            Repr::Body { vertices, facets } => f
                .debug_struct("QPolyhedron")
                .field("dim", &self.dim)
                .field("vertices", vertices)
                .field("facets", facets)
                .finish(),
        }
    }
}

fn point_row(p: &Point) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for c in p.coords() {
        lcm = lcm.lcm(c.denom());
    }
    let row = p
        .coords()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (row, lcm)
}

fn bigint_json(x: &BigInt) -> Value {
    // Facet data stays tiny under the budget ceilings; i64 is plenty.
    let v: i64 = x.try_into().expect("facet coefficient exceeds i64");
    Value::from(v)
}

fn bad_json(msg: &str) -> Error {
    Error::Invalid(format!("polyhedron json: {msg}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn pts(data: &[&[i64]]) -> Vec<Point> {
        data.iter().map(|row| Point::from_integers(row)).collect()
    }

    #[test]
    fn hull_two_generators() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(p.vertices(), &pts(&[&[0, 3], &[2, 0]])[..]);
        assert_eq!(p.facets(), &[Halfspace::from_integers(&[3, 2], 6).unwrap()]);
    }

    #[test]
    fn absorbed_point_is_dropped() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1], &[2, 2]])).unwrap();
        assert_eq!(p.vertices(), &pts(&[&[1, 1]])[..]);
        let q = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1]])).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn symbolic_polyhedron_vertices_example() {
        let gens = vec![
            Point::from_integers(&[4, 3, 0]),
            Point::from_integers(&[2, 0, 3]),
            Point::from_integers(&[0, 2, 4]),
            Point::new(vec![ratio(3, 2), ratio(1, 2), ratio(5, 2)]),
        ];
        let p = QPolyhedron::hull_plus_orthant(&gens).unwrap();
        assert_eq!(p.vertices().len(), 4);
        for g in &gens {
            assert!(p.vertices().contains(g));
        }
    }

    #[test]
    fn from_halfspaces_simplex_and_orthant() {
        let p = QPolyhedron::from_halfspaces(2, &[Halfspace::from_integers(&[1, 1], 1).unwrap()])
            .unwrap();
        assert_eq!(p.vertices(), &pts(&[&[0, 1], &[1, 0]])[..]);

        let orthant = QPolyhedron::from_halfspaces(2, &[]).unwrap();
        assert!(orthant.is_orthant());
        assert_eq!(orthant.vertices(), &[Point::zero(2)][..]);
        assert!(orthant.facets().is_empty());
    }

    #[test]
    fn from_halfspaces_triangle() {
        let hs = [
            Halfspace::from_integers(&[1, 1, 0], 1).unwrap(),
            Halfspace::from_integers(&[0, 1, 1], 1).unwrap(),
            Halfspace::from_integers(&[1, 0, 1], 1).unwrap(),
        ];
        let p = QPolyhedron::from_halfspaces(3, &hs).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p
            .vertices()
            .contains(&Point::new(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)])));
    }

    #[test]
    fn polar_basics() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1]])).unwrap();
        let polar = p.polar().unwrap();
        assert_eq!(polar, QPolyhedron::hull_plus_orthant(&pts(&[&[1, 0], &[0, 1]])).unwrap());

        let orthant = QPolyhedron::orthant(2);
        assert!(orthant.polar().unwrap().is_empty());
    }

    #[test]
    fn bipolar_instances() {
        for gens in [pts(&[&[1, 1]]), pts(&[&[2, 0], &[0, 3]])] {
            let p = QPolyhedron::hull_plus_orthant(&gens).unwrap();
            assert!(p.bipolar_check().unwrap());
        }
    }

    #[test]
    fn scale_identity_and_doubling() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1]])).unwrap();
        assert_eq!(p.scale(&rat(1)).unwrap(), p);
        assert_eq!(
            p.scale(&rat(2)).unwrap(),
            QPolyhedron::hull_plus_orthant(&pts(&[&[2, 2]])).unwrap()
        );
        assert!(p.scale(&rat(0)).is_err());
        // antitone: gamma <= lambda implies scale(lambda) inside scale(gamma)
        let big = p.scale(&ratio(1, 2)).unwrap();
        let small = p.scale(&ratio(3, 2)).unwrap();
        assert!(big.contains(&small).unwrap());
        assert!(!small.contains(&big).unwrap());
    }

    #[test]
    fn sup_noncontainment_conventions() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1]])).unwrap();
        let q = QPolyhedron::hull_plus_orthant(&pts(&[&[2, 2]])).unwrap();
        assert_eq!(p.sup_noncontainment(&q).unwrap(), ExtRational::Finite(rat(2)));

        // powers of (x) versus powers of (y): the facet y >= 1 pairs to zero
        let px = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 0]])).unwrap();
        let py = QPolyhedron::hull_plus_orthant(&pts(&[&[0, 1]])).unwrap();
        assert_eq!(px.sup_noncontainment(&py).unwrap(), ExtRational::PlusInfinity);

        assert_eq!(
            p.sup_noncontainment(&QPolyhedron::orthant(2)).unwrap(),
            ExtRational::MinusInfinity
        );
    }

    #[test]
    fn min_pairing_simplex() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1]])).unwrap();
        let q = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.min_pairing(&q).unwrap(), rat(1));
    }

    #[test]
    fn first_ray_exit_diagonal() {
        let p = QPolyhedron::hull_plus_orthant(&pts(&[&[1, 1]])).unwrap();
        assert_eq!(
            p.first_ray_exit(&Point::from_integers(&[1, 1])).unwrap(),
            ExtRational::Finite(rat(1))
        );
        assert!(p.first_ray_exit(&Point::zero(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = QPolyhedron::hull_plus_orthant(&[
            Point::from_integers(&[2, 0]),
            Point::new(vec![ratio(1, 2), rat(3)]),
        ])
        .unwrap();
        let v = p.to_json_value();
        let back = QPolyhedron::from_json_value(&v).unwrap();
        assert_eq!(p, back);
        let empty = QPolyhedron::empty(3);
        assert_eq!(QPolyhedron::from_json_value(&empty.to_json_value()).unwrap(), empty);
    }
}
