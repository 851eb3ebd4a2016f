//! Resurgence and asymptotic resurgence of pairs of graded families, skew
//! Waldschmidt constants, and truncation convergence profiles.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactgeom::{ExtRational, Halfspace};
use crate::families::{BodyCertificate, CertStatus, GradedFamily};
use crate::monomials::MonomialIdeal;
use crate::rational::{format_rational, Point, Rational};

pub const DEFAULT_SEARCH_S: u32 = 24;
pub const DEFAULT_SEARCH_R: u32 = 24;
pub const DEFAULT_TRUNCATION_N: u32 = 12;

/// What the reported value is relative to the true invariant.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundDirection {
    /// Equal to the invariant.
    Exact,
    /// A certified lower bound.
    Lower,
    /// No direction claimed (the approximation error points the wrong way).
    None,
}

impl BoundDirection {
    pub fn label(&self) -> &'static str {
        match self {
            BoundDirection::Exact => "exact",
            BoundDirection::Lower => "lower",
            BoundDirection::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Method {
    /// Computed as `sup_noncontainment` of two Okounkov-style bodies.
    BodyFormula { cert_a: CertStatus, cert_b: CertStatus },
    /// Finite search over index pairs `(s, r)`.
    VertexSearch { s_max: u32, r_max: u32, closure: bool },
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// A vertex of the first body and a facet of the second achieving the sup.
    VertexFacet(Point, Halfspace),
    /// Indices with `a_s` not inside `b_r` achieving the searched max.
    IndexPair(u32, u32),
}

#[derive(Clone, Debug)]
pub struct ResurgenceResult {
    pub value: ExtRational,
    pub exact: bool,
    pub bound_direction: BoundDirection,
    pub method: Method,
    pub witness: Option<Witness>,
    /// Caller-asserted ring-theoretic hypotheses, echoed in output.
    pub assertions: Vec<String>,
}

impl ResurgenceResult {
    pub fn to_json_value(&self) -> Value {
        let method = match &self.method {
            Method::BodyFormula { cert_a, cert_b } => json!({
                "kind": "body-formula",
                "cert_a": cert_a.label(),
                "cert_b": cert_b.label(),
            }),
            Method::VertexSearch { s_max, r_max, closure } => json!({
                "kind": "vertex-search",
                "s_max": s_max,
                "r_max": r_max,
                "closure": closure,
            }),
        };
        let witness = match &self.witness {
            None => Value::Null,
            Some(Witness::VertexFacet(u, h)) => json!({
                "vertex": u.coords().iter().map(format_rational).collect::<Vec<_>>(),
                "facet": {
                    "normal": h.normal().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "offset": h.offset().to_string(),
                },
            }),
            Some(Witness::IndexPair(s, r)) => json!({"s": s, "r": r}),
        };
        let mut out = json!({
            "value": self.value.to_string(),
            "exact": self.exact,
            "bound_direction": self.bound_direction.label(),
            "method": method,
            "witness": witness,
        });
        if !self.assertions.is_empty() {
            out["assertions"] = json!(self.assertions);
        }
        out
    }
}

fn direction_from_certs(cert_a: &CertStatus, cert_b: &CertStatus) -> BoundDirection {
    match (cert_a.is_exact(), cert_b.is_exact()) {
        (true, true) => BoundDirection::Exact,
        // an under-approximated first body only shrinks the sup
        (false, true) => BoundDirection::Lower,
        // an under-approximated second body inflates the sup: no claim
        (_, false) => BoundDirection::None,
    }
}

/// `sup_noncontainment` of two certified bodies, with the Theorem 2.7-style
/// reciprocity cross-check on finite values.
pub fn body_resurgence(a: &BodyCertificate, b: &BodyCertificate) -> Result<ResurgenceResult> {
    let (value, pair) = a.body.sup_noncontainment_witness(&b.body)?;
    if let Some(v) = value.finite() {
        let polar = b.body.polar()?;
        if !polar.is_empty() {
            let pairing = a.body.min_pairing(&polar)?;
            if pairing.is_zero() || &(Rational::from_integer(1.into()) / pairing) != v {
                return Err(Error::Invalid(
                    "reciprocity cross-check failed: sup_noncontainment and 1/min_pairing disagree"
                        .into(),
                ));
            }
        }
    }
    let direction = direction_from_certs(&a.status, &b.status);
    Ok(ResurgenceResult {
        value,
        exact: direction == BoundDirection::Exact,
        bound_direction: direction,
        method: Method::BodyFormula { cert_a: a.status.clone(), cert_b: b.status.clone() },
        witness: pair.map(|(u, h)| Witness::VertexFacet(u, h)),
        assertions: Vec::new(),
    })
}

/// The asymptotic resurgence `rho-hat(a_bullet, closure of b_bullet)` via the
/// convex-body formula.
pub fn asymptotic_resurgence(
    fa: &GradedFamily,
    fb: &GradedFamily,
    budget: u32,
) -> Result<ResurgenceResult> {
    if fa.ring() != fb.ring() {
        return Err(Error::RingMismatch);
    }
    let a = fa.okounkov_body(budget)?;
    let b = fb.okounkov_body(budget)?;
    body_resurgence(&a, &b)
}

/// `rho-hat(a^(bullet), closure of b^bullet)` for squarefree ideals, through
/// the Alexander-dual pairing formula.
pub fn dual_pair_resurgence(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Rational> {
    for ideal in [a, b] {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
    }
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let sp_a = a.symbolic_polyhedron()?;
    let sp_dual = b.alexander_dual()?.symbolic_polyhedron()?;
    let min = sp_a.min_pairing(&sp_dual)?;
    if min.is_zero() {
        return Err(Error::Invalid("degenerate pairing: minimum is zero".into()));
    }
    Ok(Rational::from_integer(1.into()) / min)
}

/// Alexander-duality invariance of the self-resurgence.
pub fn duality_check(a: &MonomialIdeal) -> Result<bool> {
    let dual = a.alexander_dual()?;
    Ok(dual_pair_resurgence(a, a)? == dual_pair_resurgence(&dual, &dual)?)
}

/// Finite search for `sup { s/r : a_s not subseteq b_r }` over `s <= s_max`,
/// `r <= r_max`; a certified lower bound for the resurgence. Ties broken by
/// the lexicographically smallest `(s, r)`.
pub fn resurgence_search(
    fa: &GradedFamily,
    fb: &GradedFamily,
    s_max: u32,
    r_max: u32,
    closure: bool,
) -> Result<ResurgenceResult> {
    if fa.ring() != fb.ring() {
        return Err(Error::RingMismatch);
    }
    if !fa.supports_generators() {
        return Err(Error::MembershipOnlyFamily);
    }
    let mut best: Option<(Rational, u32, u32)> = None;
    for s in 1..=s_max {
        let member = fa.member(s)?;
        for r in 1..=r_max {
            let contained = member
                .generators()
                .iter()
                .map(|g| fb.contains_exponent(r, g, closure))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|c| c);
            if contained {
                continue;
            }
            let ratio = Rational::new(s.into(), r.into());
            if best.as_ref().is_none_or(|(bv, _, _)| ratio > *bv) {
                best = Some((ratio, s, r));
            }
        }
    }
    let (value, witness) = match best {
        Some((v, s, r)) => (ExtRational::Finite(v), Some(Witness::IndexPair(s, r))),
        None => (ExtRational::MinusInfinity, None),
    };
    Ok(ResurgenceResult {
        value,
        exact: false,
        bound_direction: BoundDirection::Lower,
        method: Method::VertexSearch { s_max, r_max, closure },
        witness,
        assertions: Vec::new(),
    })
}

/// Whether `a_{st}` stays outside `b_{rt}` for every multiplier `t <= t_max`:
/// evidence that `s/r` is a lower bound for the asymptotic resurgence, which a
/// single non-containment is not (sporadic members of `fb` can break the
/// `t = 1` reading).
pub fn persistent_noncontainment(
    fa: &GradedFamily,
    fb: &GradedFamily,
    s: u32,
    r: u32,
    t_max: u32,
    closure: bool,
) -> Result<bool> {
    if fa.ring() != fb.ring() {
        return Err(Error::RingMismatch);
    }
    if s == 0 || r == 0 || t_max == 0 {
        return Err(Error::IndexZero);
    }
    if !fa.supports_generators() {
        return Err(Error::MembershipOnlyFamily);
    }
    for t in 1..=t_max {
        let member = fa.member(s * t)?;
        let contained = member
            .generators()
            .iter()
            .map(|g| fb.contains_exponent(r * t, g, closure))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|c| c);
        if contained {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search values of `(truncate(fa, n), fb)` for `n = 1..=n_max`; non-decreasing
/// and bounded by the untruncated search value.
pub fn truncation_resurgence_profile(
    fa: &GradedFamily,
    fb: &GradedFamily,
    n_max: u32,
    s_max: u32,
    r_max: u32,
) -> Result<Vec<(u32, ResurgenceResult)>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.push((n, resurgence_search(&fa.truncate(n)?, fb, s_max, r_max, false)?));
    }
    Ok(out)
}

/// The skew Waldschmidt constant `inf_k v(a_k) / k` for the monomial valuation
/// with weight vector `w`.
pub fn waldschmidt(f: &GradedFamily, w: &[u32], budget: u32) -> Result<Rational> {
    if w.len() != f.ring().n() {
        return Err(Error::DimensionMismatch { expected: f.ring().n(), got: w.len() });
    }
    if w.iter().all(|&c| c == 0) {
        return Err(Error::ZeroVector);
    }
    let weight = Point::new(w.iter().map(|&c| Rational::from_integer(c.into())).collect());
    let cert = f.okounkov_body(budget)?;
    if cert.status.is_exact() {
        return cert
            .body
            .vertices()
            .iter()
            .map(|v| weight.dot(v))
            .min()
            .ok_or(Error::EmptyPolyhedron);
    }
    let mut best: Option<Rational> = None;
    for k in 1..=budget.max(1) {
        let val = ideal_valuation(&f.member(k)?, &weight)?
            / Rational::from_integer(k.into());
        if best.as_ref().is_none_or(|b| val < *b) {
            best = Some(val);
        }
    }
    best.ok_or(Error::EmptyInput)
}

fn ideal_valuation(ideal: &MonomialIdeal, weight: &Point) -> Result<Rational> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            weight.dot(&Point::new(
                g.iter().map(|&e| Rational::from_integer(e.into())).collect(),
            ))
        })
        .min()
        .ok_or(Error::ZeroIdeal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyRule, DEFAULT_BODY_BUDGET};
    use crate::monomials::Ring;
    use crate::rational::{rat, ratio};
    use std::collections::BTreeMap;

    fn triangle() -> MonomialIdeal {
        let ring = Ring::with_names(&["x", "y", "z"]);
        MonomialIdeal::new(ring, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap()
    }

    fn example_2_9() -> MonomialIdeal {
        let ring = Ring::with_names(&["x", "y", "z"]);
        let prime = |vars: &[usize], m: u32| {
            let gens = vars
                .iter()
                .map(|&i| {
                    let mut e = vec![0; 3];
                    e[i] = 1;
                    e
                })
                .collect();
            MonomialIdeal::new(ring.clone(), gens).unwrap().power(m).unwrap()
        };
        prime(&[0, 1], 2)
            .intersect(&prime(&[1, 2], 3))
            .unwrap()
            .intersect(&prime(&[0, 2], 4))
            .unwrap()
    }

    fn xy_ideal() -> MonomialIdeal {
        let ring = Ring::with_names(&["x", "y"]);
        MonomialIdeal::new(ring, vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    fn example_4_4_family() -> GradedFamily {
        let i = xy_ideal();
        let mut overrides = BTreeMap::new();
        overrides.insert(2, i.power(2).unwrap());
        GradedFamily::new(FamilyRule::Piecewise {
            base: i,
            alpha: 0,
            beta: 1,
            gamma: 1,
            overrides,
        })
        .unwrap()
    }

    #[test]
    fn example_2_9_asymptotic_resurgence() {
        let i = example_2_9();
        let fa = GradedFamily::symbolic_powers(i.clone()).unwrap();
        let fb = GradedFamily::powers(i).unwrap();
        let res = asymptotic_resurgence(&fa, &fb, DEFAULT_BODY_BUDGET).unwrap();
        assert_eq!(res.value, ExtRational::Finite(ratio(10, 9)));
        assert!(res.exact);
        assert_eq!(res.bound_direction, BoundDirection::Exact);
        match res.witness {
            Some(Witness::VertexFacet(ref u, _)) => {
                assert_eq!(u, &Point::new(vec![ratio(3, 2), ratio(1, 2), ratio(5, 2)]));
            }
            ref other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn triangle_asymptotic_resurgence() {
        let i = triangle();
        let fa = GradedFamily::symbolic_powers(i.clone()).unwrap();
        let fb = GradedFamily::powers(i.clone()).unwrap();
        let res = asymptotic_resurgence(&fa, &fb, DEFAULT_BODY_BUDGET).unwrap();
        assert_eq!(res.value, ExtRational::Finite(ratio(4, 3)));

        // closure-powers route gives the same value
        let fb = GradedFamily::closure_powers(i).unwrap();
        let res = asymptotic_resurgence(&fa, &fb, DEFAULT_BODY_BUDGET).unwrap();
        assert_eq!(res.value, ExtRational::Finite(ratio(4, 3)));
    }

    #[test]
    fn dual_pair_values() {
        assert_eq!(dual_pair_resurgence(&triangle(), &triangle()).unwrap(), ratio(4, 3));

        let xy = xy_ideal();
        assert_eq!(dual_pair_resurgence(&xy, &xy).unwrap(), rat(1));

        let res = dual_pair_resurgence(&example_2_9(), &example_2_9());
        assert!(matches!(res, Err(Error::NotSquarefree)));
    }

    #[test]
    fn duality_check_examples() {
        assert!(duality_check(&triangle()).unwrap());

        let ring = Ring::with_names(&["x", "y", "z"]);
        let xy_z = MonomialIdeal::new(ring, vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(duality_check(&xy_z).unwrap());
    }

    #[test]
    fn example_4_4_search_and_asymptotics() {
        let i = xy_ideal();
        let fa = GradedFamily::powers(i).unwrap();
        let fb = example_4_4_family();

        let res = resurgence_search(&fa, &fb, 4, 6, false).unwrap();
        assert_eq!(res.value, ExtRational::Finite(ratio(1, 2)));
        assert!(matches!(res.witness, Some(Witness::IndexPair(1, 2))));

        for n in [5u32, 6, 7, 8] {
            let trunc = fb.truncate(n).unwrap();
            // the k = 2 override survives truncation, so the literal search
            // still maxes out at the sporadic pair (1, 2)
            let res = resurgence_search(&fa, &trunc, 3, 16, false).unwrap();
            assert_eq!(res.value, ExtRational::Finite(ratio(1, 2)));
            assert!(matches!(res.witness, Some(Witness::IndexPair(1, 2))));
            // asymptotically the override washes out and the value is 1/n,
            // first witnessed by the persistent pair (1, n+1)
            let res = asymptotic_resurgence(&fa, &trunc, DEFAULT_BODY_BUDGET).unwrap();
            assert_eq!(res.value, ExtRational::Finite(ratio(1, n as i64)));
            assert!(res.exact);
            assert!(!persistent_noncontainment(&fa, &trunc, 1, 2, 3, false).unwrap());
            for r in 3..=n {
                assert!(!persistent_noncontainment(&fa, &trunc, 1, r, 3, false).unwrap());
            }
            assert!(persistent_noncontainment(&fa, &trunc, 1, n + 1, 3, false).unwrap());
        }

        let res = asymptotic_resurgence(&fa, &fb, DEFAULT_BODY_BUDGET).unwrap();
        assert_eq!(res.value, ExtRational::MinusInfinity);
    }

    #[test]
    fn principal_power_search() {
        // for I = (x): I^s inside I^r iff s >= r, so the max is (R-1)/R
        let ring = Ring::with_names(&["x"]);
        let x = MonomialIdeal::new(ring, vec![vec![1]]).unwrap();
        let f = GradedFamily::powers(x).unwrap();
        let res = resurgence_search(&f, &f, 8, 8, false).unwrap();
        assert_eq!(res.value, ExtRational::Finite(ratio(7, 8)));
        assert!(matches!(res.witness, Some(Witness::IndexPair(7, 8))));
    }

    #[test]
    fn closure_search_is_no_larger() {
        let i = example_2_9();
        let fa = GradedFamily::symbolic_powers(i.clone()).unwrap();
        let fb = GradedFamily::powers(i).unwrap();
        let open = resurgence_search(&fa, &fb, 10, 10, false).unwrap();
        let closed = resurgence_search(&fa, &fb, 10, 10, true).unwrap();
        assert!(closed.value <= open.value);
        // both searches are lower bounds for rho-hat = rho = 10/9
        let rho_hat = ExtRational::Finite(ratio(10, 9));
        assert!(open.value <= rho_hat);
        assert!(closed.value <= rho_hat);
        // 10*(3/2,1/2,5/2) lies on the boundary of 9*NP(I), so the closure
        // search cannot exceed ratio 1 in this box
        assert_eq!(closed.value, ExtRational::Finite(rat(1)));
    }

    #[test]
    fn truncation_profile_converges() {
        let i = triangle();
        let fa = GradedFamily::symbolic_powers(i.clone()).unwrap();
        let fb = GradedFamily::powers(i).unwrap();
        let full = resurgence_search(&fa, &fb, 8, 8, false).unwrap();
        let profile = truncation_resurgence_profile(&fa, &fb, 6, 8, 8).unwrap();
        for window in profile.windows(2) {
            assert!(window[0].1.value <= window[1].1.value);
        }
        for (_, res) in &profile {
            assert!(res.value <= full.value);
        }
        assert_eq!(profile.last().unwrap().1.value, full.value);
    }

    #[test]
    fn waldschmidt_values() {
        let symb = GradedFamily::symbolic_powers(triangle()).unwrap();
        assert_eq!(waldschmidt(&symb, &[1, 1, 1], DEFAULT_BODY_BUDGET).unwrap(), ratio(3, 2));

        // ordinary powers: v-hat equals v(I) for any weight
        let powers = GradedFamily::powers(triangle()).unwrap();
        for w in [[1u32, 1, 1], [2, 1, 3], [0, 1, 0]] {
            let body_route = waldschmidt(&powers, &w, DEFAULT_BODY_BUDGET).unwrap();
            let weight =
                Point::new(w.iter().map(|&c| Rational::from_integer(c.into())).collect());
            let mut brute: Option<Rational> = None;
            for k in 1..=6u32 {
                let val = ideal_valuation(&triangle().power(k).unwrap(), &weight).unwrap()
                    / Rational::from_integer(k.into());
                if brute.as_ref().is_none_or(|b| val < *b) {
                    brute = Some(val);
                }
            }
            assert_eq!(body_route, brute.unwrap());
        }

        assert!(waldschmidt(&symb, &[0, 0, 0], 8).is_err());
    }

    #[test]
    fn waldschmidt_truncations_decrease() {
        let symb = GradedFamily::symbolic_powers(triangle()).unwrap();
        let limit = waldschmidt(&symb, &[1, 1, 1], DEFAULT_BODY_BUDGET).unwrap();
        let mut prev: Option<Rational> = None;
        for n in 1..=4 {
            let t = symb.truncate(n).unwrap();
            let val = waldschmidt(&t, &[1, 1, 1], 8).unwrap();
            if let Some(p) = &prev {
                assert!(val <= *p);
            }
            assert!(val >= limit);
            prev = Some(val);
        }
        assert_eq!(prev.unwrap(), limit);
    }

    #[test]
    fn witnesses_reproduce_values() {
        let i = example_2_9();
        let fa = GradedFamily::symbolic_powers(i.clone()).unwrap();
        let fb = GradedFamily::powers(i).unwrap();
        let res = asymptotic_resurgence(&fa, &fb, DEFAULT_BODY_BUDGET).unwrap();
        if let Some(Witness::VertexFacet(u, h)) = &res.witness {
            let pairing = h.eval(u);
            let recomputed = Rational::from_integer(h.offset().clone()) / pairing;
            assert_eq!(ExtRational::Finite(recomputed), res.value);
        } else {
            panic!("expected a vertex/facet witness");
        }

        let res = resurgence_search(&fa, &fb, 6, 6, false).unwrap();
        if let (ExtRational::Finite(v), Some(Witness::IndexPair(s, r))) = (&res.value, &res.witness)
        {
            assert_eq!(*v, Rational::new((*s).into(), (*r).into()));
            let gens = fa.member(*s).unwrap();
            let contained = gens
                .generators()
                .iter()
                .all(|g| fb.contains_exponent(*r, g, false).unwrap());
            assert!(!contained);
        } else {
            panic!("expected an index-pair witness");
        }
    }

    #[test]
    fn result_json_shape() {
        let i = triangle();
        let fa = GradedFamily::symbolic_powers(i.clone()).unwrap();
        let fb = GradedFamily::powers(i).unwrap();
        let v = asymptotic_resurgence(&fa, &fb, DEFAULT_BODY_BUDGET)
            .unwrap()
            .to_json_value();
        assert_eq!(v["value"], "4/3");
        assert_eq!(v["exact"], true);
        assert_eq!(v["bound_direction"], "exact");
        assert_eq!(v["method"]["kind"], "body-formula");
        assert!(v["witness"]["vertex"].is_array());

        let v = resurgence_search(&fa, &fb, 4, 4, false).unwrap().to_json_value();
        assert_eq!(v["bound_direction"], "lower");
        assert_eq!(v["method"]["kind"], "vertex-search");
        assert_eq!(v["exact"], false);
        let _ = rat(0);
    }
}
