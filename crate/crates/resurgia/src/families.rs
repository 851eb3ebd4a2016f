//! Declarative, memoized graded families of monomial ideals, truncations,
//! and Newton-Okounkov bodies with stabilization certificates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactgeom::QPolyhedron;
use crate::monomials::{Exponent, MonomialIdeal, Ring};
use crate::rational::{Point, Rational};

/// Default search depth for stabilization detection.
pub const DEFAULT_BODY_BUDGET: u32 = 12;

/// Declarative rule defining a graded family `i -> a_i`.
#[derive(Clone, Debug)]
pub enum FamilyRule {
    /// `a_i = I^i`.
    Powers(MonomialIdeal),
    /// `a_i = I^(i)`, symbolic powers via localization at minimal primes.
    SymbolicPowers(MonomialIdeal),
    /// `a_i = closure of I^i`; membership-only, no generator extraction.
    ClosurePowers(MonomialIdeal),
    /// `a_i = I^{ceil((alpha*i + beta)/gamma)}` with finitely many overrides.
    Piecewise {
        base: MonomialIdeal,
        alpha: u32,
        beta: u32,
        gamma: u32,
        overrides: BTreeMap<u32, MonomialIdeal>,
    },
    /// The n-th truncation of a parent family.
    Truncated { parent: GradedFamily, n: u32 },
}

struct Inner {
    rule: FamilyRule,
    ring: Ring,
    memo: Mutex<HashMap<u32, MonomialIdeal>>,
}

/// A lazily evaluated, memoized graded family. Cloning shares the memo cache;
/// `member` is a pure function of the rule and the index.
#[derive(Clone)]
pub struct GradedFamily {
    inner: Arc<Inner>,
}

impl GradedFamily {
    pub fn new(rule: FamilyRule) -> Result<Self> {
        let ring = match &rule {
            FamilyRule::Powers(i) | FamilyRule::SymbolicPowers(i) | FamilyRule::ClosurePowers(i) => {
                if i.is_zero() {
                    return Err(Error::ZeroIdeal);
                }
                i.ring().clone()
            }
            FamilyRule::Piecewise { base, gamma, overrides, .. } => {
                if base.is_zero() {
                    return Err(Error::ZeroIdeal);
                }
                if *gamma == 0 {
                    return Err(Error::Invalid("piecewise exponent map needs gamma >= 1".into()));
                }
                for (idx, ideal) in overrides {
                    if *idx == 0 {
                        return Err(Error::IndexZero);
                    }
                    if ideal.ring() != base.ring() {
                        return Err(Error::RingMismatch);
                    }
                    if ideal.is_zero() {
                        return Err(Error::ZeroIdeal);
                    }
                }
                base.ring().clone()
            }
            FamilyRule::Truncated { parent, n } => {
                if *n == 0 {
                    return Err(Error::IndexZero);
                }
                if !parent.supports_generators() {
                    return Err(Error::MembershipOnlyFamily);
                }
                parent.ring().clone()
            }
        };
        Ok(GradedFamily {
            inner: Arc::new(Inner { rule, ring, memo: Mutex::new(HashMap::new()) }),
        })
    }

    pub fn powers(ideal: MonomialIdeal) -> Result<Self> {
        GradedFamily::new(FamilyRule::Powers(ideal))
    }

    pub fn symbolic_powers(ideal: MonomialIdeal) -> Result<Self> {
        GradedFamily::new(FamilyRule::SymbolicPowers(ideal))
    }

    pub fn closure_powers(ideal: MonomialIdeal) -> Result<Self> {
        GradedFamily::new(FamilyRule::ClosurePowers(ideal))
    }

    pub fn rule(&self) -> &FamilyRule {
        &self.inner.rule
    }

    pub fn ring(&self) -> &Ring {
        &self.inner.ring
    }

    /// Generator extraction is supported by every rule except `ClosurePowers`
    /// (an integral closure has no finite monomial generating set in general).
    pub fn supports_generators(&self) -> bool {
        match &self.inner.rule {
            FamilyRule::ClosurePowers(_) => false,
            FamilyRule::Truncated { parent, .. } => parent.supports_generators(),
            _ => true,
        }
    }

    fn piecewise_exponent(alpha: u32, beta: u32, gamma: u32, i: u32) -> u32 {
        let num = alpha as u64 * i as u64 + beta as u64;
        num.div_ceil(gamma as u64) as u32
    }

    /// The ideal `a_i`, memoized.
    pub fn member(&self, i: u32) -> Result<MonomialIdeal> {
        if i == 0 {
            return Err(Error::IndexZero);
        }
        if let Some(hit) = self.inner.memo.lock().unwrap().get(&i) {
            return Ok(hit.clone());
        }
        let value = self.compute_member(i)?;
        self.inner
            .memo
            .lock()
            .unwrap()
            .entry(i)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    fn compute_member(&self, i: u32) -> Result<MonomialIdeal> {
        match &self.inner.rule {
            FamilyRule::Powers(ideal) => ideal.power(i),
            FamilyRule::SymbolicPowers(ideal) => ideal.symbolic_power(i),
            FamilyRule::ClosurePowers(_) => Err(Error::MembershipOnlyFamily),
            FamilyRule::Piecewise { base, alpha, beta, gamma, overrides } => {
                if let Some(ideal) = overrides.get(&i) {
                    return Ok(ideal.clone());
                }
                base.power(Self::piecewise_exponent(*alpha, *beta, *gamma, i))
            }
            FamilyRule::Truncated { parent, n } => {
                if i <= *n {
                    return parent.member(i);
                }
                // a_{n,k} = sum over i+j=k of a_{n,i} * a_{n,j}
                let mut acc: Option<MonomialIdeal> = None;
                for p in 1..=(i / 2) {
                    let term = self.member(p)?.product(&self.member(i - p)?)?;
                    acc = Some(match acc {
                        None => term,
                        Some(a) => a.sum(&term)?,
                    });
                }
                acc.ok_or_else(|| Error::Invalid("truncation index must exceed 1".into()))
            }
        }
    }

    /// Membership of `x^a` in `a_i`, or in its integral closure when
    /// `closure` is set. Works for membership-only families too.
    pub fn contains_exponent(&self, i: u32, a: &[Exponent], closure: bool) -> Result<bool> {
        if i == 0 {
            return Err(Error::IndexZero);
        }
        if let FamilyRule::ClosurePowers(ideal) = &self.inner.rule {
            // closure of a closure is itself
            return ideal.power(i)?.closure_contains_exponent(a);
        }
        let member = self.member(i)?;
        if closure {
            member.closure_contains_exponent(a)
        } else {
            member.contains_exponent(a)
        }
    }

    /// The n-th truncation: agrees with this family up to `n`, generated by
    /// products beyond.
    pub fn truncate(&self, n: u32) -> Result<GradedFamily> {
        GradedFamily::new(FamilyRule::Truncated { parent: self.clone(), n })
    }

    /// Checks `a_p * a_q subseteq a_{p+q}` for all `p + q <= n`.
    pub fn validate_graded(&self, n: u32) -> Result<bool> {
        for p in 1..n {
            for q in p..n {
                if p + q > n {
                    break;
                }
                let product = self.member(p)?.product(&self.member(q)?)?;
                if !self.member(p + q)?.contains_ideal(&product)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn scaled_newton(&self, k: u32) -> Result<QPolyhedron> {
        let np = match &self.inner.rule {
            FamilyRule::ClosurePowers(ideal) => ideal.power(k)?.newton_polyhedron()?,
            _ => self.member(k)?.newton_polyhedron()?,
        };
        np.scale(&Rational::new(1.into(), k.into()))
    }

    /// Searches for a stabilization index `k` with
    /// `NP(a_{mk}) == scale(m, NP(a_k))` for `m in {2, 3}` and
    /// `(1/j) NP(a_j) subseteq (1/k) NP(a_k)` for every sampled `j`. The
    /// containment sweep rules out indices where the multiplicative test
    /// passes but the union is still growing.
    fn find_stabilization(&self, budget: u32) -> Result<Option<u32>> {
        'outer: for k in 1..=budget {
            let base = self.member(k)?.newton_polyhedron()?;
            let double = self.member(2 * k)?.newton_polyhedron()?;
            if double != base.scale(&Rational::from_integer(2.into()))? {
                continue;
            }
            let triple = self.member(3 * k)?.newton_polyhedron()?;
            if triple != base.scale(&Rational::from_integer(3.into()))? {
                continue;
            }
            let candidate = base.scale(&Rational::new(1.into(), k.into()))?;
            for j in 1..=budget.max(3 * k) {
                if !candidate.contains(&self.scaled_newton(j)?)? {
                    continue 'outer;
                }
            }
            return Ok(Some(k));
        }
        Ok(None)
    }

    /// The Newton-Okounkov body `closure of union of (1/k) NP(a_k)` with an
    /// honest certificate of how it was obtained.
    pub fn okounkov_body(&self, budget: u32) -> Result<BodyCertificate> {
        let budget = budget.max(1);
        match &self.inner.rule {
            FamilyRule::Powers(ideal) | FamilyRule::ClosurePowers(ideal) => Ok(BodyCertificate {
                status: CertStatus::Exact { stabilization: 1 },
                body: ideal.newton_polyhedron()?,
            }),
            FamilyRule::SymbolicPowers(ideal) => match self.find_stabilization(budget)? {
                Some(k) => Ok(BodyCertificate {
                    status: CertStatus::Exact { stabilization: k },
                    body: self.scaled_newton(k)?,
                }),
                None => Ok(BodyCertificate {
                    status: CertStatus::ClosedForm,
                    body: ideal.symbolic_polyhedron()?,
                }),
            },
            FamilyRule::Piecewise { base, alpha, gamma, overrides, .. } => {
                if let Some(k) = self.find_stabilization(budget)? {
                    return Ok(BodyCertificate {
                        status: CertStatus::Exact { stabilization: k },
                        body: self.scaled_newton(k)?,
                    });
                }
                // Closed form: the scaled copies (e(k)/k) NP(I) are nested and
                // their exponents tend to alpha/gamma, so the closure of the
                // union is the alpha/gamma scaling (the orthant when alpha=0),
                // possibly enlarged by the finitely many overrides.
                let dim = self.ring().n();
                if *alpha == 0 {
                    return Ok(BodyCertificate {
                        status: CertStatus::ClosedForm,
                        body: QPolyhedron::orthant(dim),
                    });
                }
                let slope = Rational::new((*alpha).into(), (*gamma).into());
                let mut points: Vec<Point> = base
                    .newton_polyhedron()?
                    .vertices()
                    .iter()
                    .map(|v| v.scaled(&slope))
                    .collect();
                for (idx, ideal) in overrides {
                    let inv = Rational::new(1.into(), (*idx).into());
                    points.extend(
                        ideal
                            .newton_polyhedron()?
                            .vertices()
                            .iter()
                            .map(|v| v.scaled(&inv)),
                    );
                }
                Ok(BodyCertificate {
                    status: CertStatus::ClosedForm,
                    body: QPolyhedron::hull_plus_orthant(&points)?,
                })
            }
            FamilyRule::Truncated { .. } => match self.find_stabilization(budget)? {
                Some(k) => Ok(BodyCertificate {
                    status: CertStatus::Exact { stabilization: k },
                    body: self.scaled_newton(k)?,
                }),
                None => Ok(BodyCertificate {
                    status: CertStatus::Approximate { budget },
                    body: self.union_hull(budget)?,
                }),
            },
        }
    }

    /// Hull of the union of the scaled Newton polyhedra up to the budget; a
    /// lower approximation of the Okounkov body.
    fn union_hull(&self, budget: u32) -> Result<QPolyhedron> {
        let mut points: Vec<Point> = Vec::new();
        for k in 1..=budget {
            points.extend(self.scaled_newton(k)?.vertices().iter().cloned());
        }
        QPolyhedron::hull_plus_orthant(&points)
    }

    /// Bodies of the truncated families, an ascending chain inside the body
    /// of this family.
    pub fn okounkov_truncation_profile(
        &self,
        n_max: u32,
        budget: u32,
    ) -> Result<Vec<(u32, QPolyhedron)>> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            let body = self.truncate(n)?.okounkov_body(budget)?.body;
            out.push((n, body));
        }
        Ok(out)
    }
}

impl fmt::Debug for GradedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.rule {
            FamilyRule::Powers(i) => write!(f, "Powers{i:?}"),
            FamilyRule::SymbolicPowers(i) => write!(f, "SymbolicPowers{i:?}"),
            FamilyRule::ClosurePowers(i) => write!(f, "ClosurePowers{i:?}"),
            FamilyRule::Piecewise { alpha, beta, gamma, overrides, .. } => write!(
                f,
                "Piecewise(ceil(({alpha}i+{beta})/{gamma}), {} overrides)",
                overrides.len()
            ),
            FamilyRule::Truncated { parent, n } => write!(f, "Truncate({parent:?}, {n})"),
        }
    }
}

/// How an Okounkov-style body was certified.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertStatus {
    /// `NP(a_{mk}) == scale(m, NP(a_k))` verified for `m in {2, 3}`.
    Exact { stabilization: u32 },
    /// The body is known analytically for this rule; no stabilization index
    /// verified within budget.
    ClosedForm,
    /// Hull of the scaled bodies up to the budget; a lower approximation.
    Approximate { budget: u32 },
}

impl CertStatus {
    pub fn is_exact(&self) -> bool {
        !matches!(self, CertStatus::Approximate { .. })
    }

    pub fn label(&self) -> String {
        match self {
            CertStatus::Exact { stabilization } => format!("exact({stabilization})"),
            CertStatus::ClosedForm => "closed-form".into(),
            CertStatus::Approximate { budget } => format!("approximate({budget})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BodyCertificate {
    pub status: CertStatus,
    pub body: QPolyhedron,
}

impl BodyCertificate {
    pub fn to_json_value(&self) -> Value {
        json!({
            "status": self.status.label(),
            "body": self.body.to_json_value(),
        })
    }
}

/// Family spec JSON, the declarative wire format for families.
pub fn family_from_json_value(v: &Value) -> Result<GradedFamily> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Invalid("family json: expected object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Invalid("family json: missing kind".into()))?;
    let ideal = || -> Result<MonomialIdeal> {
        MonomialIdeal::from_json_value(
            obj.get("ideal")
                .ok_or_else(|| Error::Invalid("family json: missing ideal".into()))?,
        )
    };
    match kind {
        "powers" => GradedFamily::powers(ideal()?),
        "symbolic" => GradedFamily::symbolic_powers(ideal()?),
        "closure_powers" => GradedFamily::closure_powers(ideal()?),
        "piecewise" => {
            let field = |name: &str| -> Result<u32> {
                obj.get(name)
                    .and_then(Value::as_u64)
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Invalid(format!("family json: missing {name}")))
            };
            let mut overrides = BTreeMap::new();
            if let Some(map) = obj.get("overrides").and_then(Value::as_object) {
                for (key, val) in map {
                    let idx: u32 = key
                        .parse()
                        .map_err(|_| Error::Invalid("family json: override keys are indices".into()))?;
                    overrides.insert(idx, MonomialIdeal::from_json_value(val)?);
                }
            }
            GradedFamily::new(FamilyRule::Piecewise {
                base: ideal()?,
                alpha: field("alpha")?,
                beta: field("beta")?,
                gamma: field("gamma")?,
                overrides,
            })
        }
        "truncate" => {
            let parent = family_from_json_value(
                obj.get("parent")
                    .ok_or_else(|| Error::Invalid("family json: missing parent".into()))?,
            )?;
            let n = obj
                .get("n")
                .and_then(Value::as_u64)
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| Error::Invalid("family json: missing n".into()))?;
            parent.truncate(n)
        }
        other => Err(Error::Invalid(format!("family json: unknown kind `{other}`"))),
    }
}

pub fn family_to_json_value(f: &GradedFamily) -> Value {
    match f.rule() {
        FamilyRule::Powers(i) => json!({"kind": "powers", "ideal": i.to_json_value()}),
        FamilyRule::SymbolicPowers(i) => json!({"kind": "symbolic", "ideal": i.to_json_value()}),
        FamilyRule::ClosurePowers(i) => {
            json!({"kind": "closure_powers", "ideal": i.to_json_value()})
        }
        FamilyRule::Piecewise { base, alpha, beta, gamma, overrides } => {
            let map: serde_json::Map<String, Value> = overrides
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_json_value()))
                .collect();
            json!({
                "kind": "piecewise",
                "ideal": base.to_json_value(),
                "alpha": alpha,
                "beta": beta,
                "gamma": gamma,
                "overrides": map,
            })
        }
        FamilyRule::Truncated { parent, n } => {
            json!({"kind": "truncate", "parent": family_to_json_value(parent), "n": n})
        }
    }
}
