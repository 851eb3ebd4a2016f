//! Exact algebra of monomial ideals: minimal generators, products, powers,
//! intersections, membership, Alexander duality, symbolic powers and the
//! bridge to Newton/symbolic polyhedra.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactgeom::{Halfspace, QPolyhedron};
use crate::rational::{Point, Rational};

static GENERATOR_CEILING: AtomicUsize = AtomicUsize::new(100_000);

/// Generator-count ceiling; blowups beyond it become explicit errors.
pub fn generator_ceiling() -> usize {
    GENERATOR_CEILING.load(Ordering::Relaxed)
}

pub fn set_generator_ceiling(limit: usize) {
    GENERATOR_CEILING.store(limit.max(1), Ordering::Relaxed);
}

const MAX_VARIABLES: usize = 20;
const MAX_TRANSVERSALS: usize = 10_000;

pub type Exponent = u32;

/// The ambient polynomial ring, identified by its ordered variable list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new(vars: Vec<String>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Invalid("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Invalid("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring { vars })
    }

    pub fn with_names(names: &[&str]) -> Self {
        Ring::new(names.iter().map(|s| s.to_string()).collect()).expect("valid names")
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// A monomial ideal given by its minimal generators, stored as exponent
/// vectors in lexicographic order. The zero ideal has no generators; the unit
/// ideal is generated by the constant monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Ring,
    gens: Vec<Vec<Exponent>>,
}

fn divides(a: &[Exponent], b: &[Exponent]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Minimalizes the generator list: drops any generator divisible by
    /// another and sorts the survivors.
    pub fn new(ring: Ring, gens: Vec<Vec<Exponent>>) -> Result<Self> {
        let n = ring.n();
        for g in &gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.len() });
            }
        }
        if gens.len() > generator_ceiling() {
            return Err(Error::BudgetExceeded(format!(
                "{} generators exceeds the ceiling of {}",
                gens.len(),
                generator_ceiling()
            )));
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Vec<Exponent>> = Vec::with_capacity(gens.len());
        'outer: for (i, g) in gens.iter().enumerate() {
            for (j, h) in gens.iter().enumerate() {
                if i != j && divides(h, g) {
                    continue 'outer;
                }
            }
            minimal.push(g.clone());
        }
        Ok(MonomialIdeal { ring, gens: minimal })
    }

    pub fn zero(ring: Ring) -> Self {
        MonomialIdeal { ring, gens: Vec::new() }
    }

    pub fn unit(ring: Ring) -> Self {
        let n = ring.n();
        MonomialIdeal { ring, gens: vec![vec![0; n]] }
    }

    /// The prime `(x_i : i in support)`.
    pub fn variable_prime(ring: Ring, support: &[usize]) -> Result<Self> {
        let n = ring.n();
        let gens = support
            .iter()
            .map(|&i| {
                let mut g = vec![0; n];
                g[i] = 1;
                g
            })
            .collect();
        MonomialIdeal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Vec<Exponent>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|&e| e <= 1))
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// True iff `x^a` lies in the ideal, i.e. some generator divides it.
    pub fn contains_exponent(&self, a: &[Exponent]) -> Result<bool> {
        if a.len() != self.ring.n() {
            return Err(Error::DimensionMismatch { expected: self.ring.n(), got: a.len() });
        }
        Ok(self.gens.iter().any(|g| divides(g, a)))
    }

    /// `other subseteq self`, generator by generator.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains_exponent(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| a + b).collect());
            }
        }
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| *a.max(b)).collect());
            }
        }
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    /// `I^s` by repeated squaring with intermediate minimalization; `I^0` is
    /// the unit ideal.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal> {
        if s == 0 {
            return Ok(MonomialIdeal::unit(self.ring.clone()));
        }
        let mut base = self.clone();
        let mut acc: Option<MonomialIdeal> = None;
        let mut e = s;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.product(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.product(&base)?;
        }
        Ok(acc.expect("s >= 1"))
    }

    fn exponent_point(g: &[Exponent]) -> Point {
        Point::new(g.iter().map(|&e| Rational::from_integer(e.into())).collect())
    }

    /// The Newton polyhedron `conv(exponents of I) + R^n_{>=0}`.
    pub fn newton_polyhedron(&self) -> Result<QPolyhedron> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let points: Vec<Point> = self.gens.iter().map(|g| Self::exponent_point(g)).collect();
        QPolyhedron::hull_plus_orthant(&points)
    }

    /// Integral-closure membership: `x^a` is in the closure of the ideal iff
    /// `a` lies in the Newton polyhedron.
    pub fn closure_contains_exponent(&self, a: &[Exponent]) -> Result<bool> {
        if a.len() != self.ring.n() {
            return Err(Error::DimensionMismatch { expected: self.ring.n(), got: a.len() });
        }
        self.newton_polyhedron()?
            .contains_point(&Self::exponent_point(a))
    }

    /// Minimal primes of a squarefree ideal as variable-index sets: the
    /// minimal transversals of the hypergraph of generator supports.
    pub fn minimal_primes(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        self.minimal_primes_any()
    }

    /// Minimal primes of an arbitrary monomial ideal. Generator supports are
    /// the same as those of the radical, so the transversal computation does
    /// not need squarefree input.
    fn minimal_primes_any(&self) -> Result<Vec<Vec<usize>>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let supports: Vec<u32> = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |m, (i, _)| m | (1 << i))
            })
            .collect();
        let used: u32 = supports.iter().fold(0, |m, s| m | s);
        let used_vars: Vec<usize> = (0..self.ring.n()).filter(|&i| used & (1 << i) != 0).collect();
        if used_vars.len() > MAX_VARIABLES {
            return Err(Error::BudgetExceeded(format!(
                "{} variables exceeds the transversal budget of {}",
                used_vars.len(),
                MAX_VARIABLES
            )));
        }
        let hits = |mask: u32| supports.iter().all(|s| s & mask != 0);
        let mut covers: Vec<Vec<usize>> = Vec::new();
        for subset in 0u32..(1 << used_vars.len()) {
            let mask = used_vars
                .iter()
                .enumerate()
                .filter(|(j, _)| subset & (1 << j) != 0)
                .fold(0u32, |m, (_, &i)| m | (1 << i));
            if !hits(mask) {
                continue;
            }
            // minimal iff removing any member breaks the transversal
            let minimal = used_vars
                .iter()
                .filter(|&&i| mask & (1 << i) != 0)
                .all(|&i| !hits(mask & !(1 << i)));
            if !minimal {
                continue;
            }
            covers.push(
                used_vars
                    .iter()
                    .copied()
                    .filter(|&i| mask & (1 << i) != 0)
                    .collect(),
            );
            if covers.len() > MAX_TRANSVERSALS {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} minimal primes",
                    MAX_TRANSVERSALS
                )));
            }
        }
        covers.sort();
        Ok(covers)
    }

    /// Alexander dual of a squarefree ideal: one squarefree generator per
    /// minimal prime.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal> {
        let primes = self.minimal_primes()?;
        let n = self.ring.n();
        let gens = primes
            .iter()
            .map(|p| {
                let mut g = vec![0; n];
                for &i in p {
                    g[i] = 1;
                }
                g
            })
            .collect();
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    /// `I R_p intersect R` for the prime `p = (x_i : i in support)`:
    /// variables outside the support become units, so each generator is
    /// restricted to the support coordinates.
    fn localize_at(&self, support: &[usize]) -> Result<MonomialIdeal> {
        let in_support: Vec<bool> = {
            let mut mask = vec![false; self.ring.n()];
            for &i in support {
                mask[i] = true;
            }
            mask
        };
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .map(|(i, &e)| if in_support[i] { e } else { 0 })
                    .collect()
            })
            .collect();
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    /// Symbolic power `I^(m)`, the intersection over minimal primes `p` of
    /// `I^m R_p intersect R`. For squarefree ideals this is the intersection
    /// of the m-th powers of the minimal primes.
    pub fn symbolic_power(&self, m: u32) -> Result<MonomialIdeal> {
        if m == 0 {
            return Err(Error::IndexZero);
        }
        let primes = self.minimal_primes_any()?;
        let power = self.power(m)?;
        let mut acc: Option<MonomialIdeal> = None;
        for p in &primes {
            let component = power.localize_at(p)?;
            acc = Some(match acc {
                None => component,
                Some(a) => a.intersect(&component)?,
            });
        }
        acc.ok_or(Error::ZeroIdeal)
    }

    /// Membership in `I^(m)` without computing generators. For squarefree
    /// ideals the test is one degree sum per minimal prime; otherwise it
    /// falls back to the symbolic-power generators.
    pub fn symbolic_power_contains(&self, m: u32, a: &[Exponent]) -> Result<bool> {
        if a.len() != self.ring.n() {
            return Err(Error::DimensionMismatch { expected: self.ring.n(), got: a.len() });
        }
        if self.is_squarefree() {
            let primes = self.minimal_primes()?;
            return Ok(primes
                .iter()
                .all(|p| p.iter().map(|&i| a[i] as u64).sum::<u64>() >= m as u64));
        }
        self.symbolic_power(m)?.contains_exponent(a)
    }

    /// Symbolic polyhedron: the intersection over minimal primes `p` of the
    /// Newton polyhedra of the localizations `I R_p intersect R`. For a
    /// squarefree ideal this is one unit-offset halfspace per minimal prime.
    pub fn symbolic_polyhedron(&self) -> Result<QPolyhedron> {
        let primes = self.minimal_primes_any()?;
        let n = self.ring.n();
        let mut halfspaces: Vec<Halfspace> = Vec::new();
        for p in &primes {
            halfspaces.extend_from_slice(self.localize_at(p)?.newton_polyhedron()?.facets());
        }
        QPolyhedron::from_halfspaces(n, &halfspaces)
    }

    /// Text form like `x^2*y*z^3`, with `1` for the ring unit.
    pub fn format_monomial(&self, g: &[Exponent]) -> String {
        let parts: Vec<String> = g
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.ring.vars[i].clone()
                } else {
                    format!("{}^{}", self.ring.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "ring": self.ring.vars,
            "gens": self.gens,
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Invalid("ideal json: expected object".into()))?;
        let vars: Vec<String> = obj
            .get("ring")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("ideal json: missing ring".into()))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Invalid("ideal json: ring entries must be strings".into()))
            })
            .collect::<Result<_>>()?;
        let ring = Ring::new(vars)?;
        let gens: Vec<Vec<Exponent>> = obj
            .get("gens")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("ideal json: missing gens".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Invalid("ideal json: gens rows must be arrays".into()))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .and_then(|x| Exponent::try_from(x).ok())
                            .ok_or_else(|| {
                                Error::Invalid("ideal json: exponents must be small nonnegative integers".into())
                            })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        MonomialIdeal::new(ring, gens)
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self.gens.iter().map(|g| self.format_monomial(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
