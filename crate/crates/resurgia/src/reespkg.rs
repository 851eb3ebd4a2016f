//! Convex-body resurgence for ideals presented through Rees packages: the
//! Gamma-body of a valued family, the sup-noncontainment formula, Veronese
//! rescaling, and the built-in symmetric-minors example.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactgeom::QPolyhedron;
use crate::families::{BodyCertificate, CertStatus};
use crate::rational::{Point, Rational};
use crate::resurgence::{body_resurgence, ResurgenceResult};

/// The integral polyhedron Gamma of a Rees package, with bookkeeping.
#[derive(Clone, Debug)]
pub struct ReesPackageData {
    pub d: usize,
    pub gamma: QPolyhedron,
    pub label: String,
}

impl ReesPackageData {
    pub fn new(d: usize, gamma: QPolyhedron, label: impl Into<String>) -> Result<Self> {
        if d == 0 || gamma.dim() != d {
            return Err(Error::DimensionMismatch { expected: d.max(1), got: gamma.dim() });
        }
        if gamma.is_empty() || gamma.facets().is_empty() {
            return Err(Error::Invalid(
                "gamma must be a proper integral polyhedron with at least one facet".into(),
            ));
        }
        for v in gamma.vertices() {
            if v.coords().iter().any(|c| !c.is_integer()) {
                return Err(Error::Invalid("gamma must have integral vertices".into()));
            }
        }
        Ok(ReesPackageData { d, gamma, label: label.into() })
    }
}

/// How the valuation values of the family members are supplied.
#[derive(Clone, Debug)]
pub enum ValueRule {
    /// A finite table `k -> value points of the members of a_k`.
    Explicit(BTreeMap<u32, Vec<Vec<u32>>>),
    /// The symbolic-power family of the maximal minors of an m x m symmetric
    /// matrix, with values generated from the closed recursion.
    SymmetricMinorsSymbolic(u32),
}

/// Valuation data of a graded family relative to a Rees package.
#[derive(Clone, Debug)]
pub struct ReesValuedFamily {
    pub d: usize,
    pub rule: ValueRule,
    /// Caller-asserted ring-theoretic hypotheses, echoed in outputs.
    pub assertions: Vec<String>,
}

fn integer_point(coords: &[u32]) -> Point {
    Point::new(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
}

impl ReesValuedFamily {
    pub fn explicit(d: usize, values: BTreeMap<u32, Vec<Vec<u32>>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (k, pts) in &values {
            if *k == 0 {
                return Err(Error::IndexZero);
            }
            if pts.is_empty() {
                return Err(Error::EmptyInput);
            }
            if pts.iter().any(|p| p.len() != d) {
                return Err(Error::DimensionMismatch { expected: d, got: 0 });
            }
        }
        Ok(ReesValuedFamily { d, rule: ValueRule::Explicit(values), assertions: Vec::new() })
    }

    pub fn with_assertions(mut self, assertions: Vec<String>) -> Self {
        self.assertions = assertions;
        self
    }

    /// The value points of the members of `a_k`, or `None` when the table
    /// does not reach `k`.
    pub fn values(&self, k: u32) -> Result<Option<Vec<Vec<u32>>>> {
        if k == 0 {
            return Err(Error::IndexZero);
        }
        match &self.rule {
            ValueRule::Explicit(table) => Ok(table.get(&k).cloned()),
            ValueRule::SymmetricMinorsSymbolic(m) => Ok(Some(symmetric_minors_values(*m, k))),
        }
    }

    /// `V(a_k)`: hull of the value points plus the orthant.
    pub fn v_body(&self, k: u32) -> Result<QPolyhedron> {
        let pts = self.values(k)?.ok_or(Error::NoValuationData)?;
        QPolyhedron::hull_plus_orthant(&pts.iter().map(|p| integer_point(p)).collect::<Vec<_>>())
    }

    /// Largest index with data, bounded by `budget`.
    fn data_horizon(&self, budget: u32) -> u32 {
        match &self.rule {
            ValueRule::Explicit(table) => {
                table.keys().copied().filter(|k| *k <= budget).max().unwrap_or(0)
            }
            ValueRule::SymmetricMinorsSymbolic(_) => budget,
        }
    }

    /// Checks that pointwise sums of value points of `a_p` and `a_q` land in
    /// `V(a_{p+q})`, on the supplied prefix.
    pub fn validate_superadditive(&self, n: u32) -> Result<bool> {
        for p in 1..n {
            for q in p..n {
                if p + q > n {
                    break;
                }
                let (Some(vp), Some(vq), Some(_)) =
                    (self.values(p)?, self.values(q)?, self.values(p + q)?)
                else {
                    continue;
                };
                let target = self.v_body(p + q)?;
                for a in &vp {
                    for b in &vq {
                        let sum: Vec<u32> =
                            a.iter().zip(b).map(|(x, y)| x + y).collect();
                        if !target.contains_point(&integer_point(&sum))? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Values of the symmetric-minors symbolic-power family:
/// `V(a_2k) = hull{k(m,...,1), 2k(m-1,...,0)}`,
/// `V(a_2k+1) = hull{(k+1)(m,...,1) - (1,...,1), (2k+1)(m-1,...,0)}`.
fn symmetric_minors_values(m: u32, index: u32) -> Vec<Vec<u32>> {
    let top: Vec<u32> = (0..m).map(|i| m - i).collect();
    let bottom: Vec<u32> = (0..m).map(|i| m - 1 - i).collect();
    let k = index / 2;
    let mut out = if index % 2 == 0 {
        vec![
            top.iter().map(|&c| k * c).collect::<Vec<u32>>(),
            bottom.iter().map(|&c| 2 * k * c).collect(),
        ]
    } else {
        vec![
            top.iter().map(|&c| (k + 1) * c - 1).collect::<Vec<u32>>(),
            bottom.iter().map(|&c| (2 * k + 1) * c).collect(),
        ]
    };
    out.sort();
    out.dedup();
    out
}

fn symmetric_minors_closed_form(m: u32) -> Result<QPolyhedron> {
    let half = Rational::new(1.into(), 2.into());
    let top = Point::new((0..m).map(|i| Rational::from_integer((m - i).into()) * &half).collect());
    let bottom = integer_point(&(0..m).map(|i| m - 1 - i).collect::<Vec<u32>>());
    QPolyhedron::hull_plus_orthant(&[top, bottom])
}

/// The body `Gamma_R(a_bullet)`: closure of the union of `(1/k) V(a_k)`.
pub fn gamma_body(vf: &ReesValuedFamily, budget: u32) -> Result<BodyCertificate> {
    let horizon = vf.data_horizon(budget.max(1));
    if horizon == 0 {
        return Err(Error::NoValuationData);
    }
    // stabilization search mirroring the Okounkov-body certificate
    'outer: for k in 1..=horizon {
        if 3 * k > horizon && !matches!(vf.rule, ValueRule::SymmetricMinorsSymbolic(_)) {
            break;
        }
        let (Some(_), Some(_), Some(_)) = (vf.values(k)?, vf.values(2 * k)?, vf.values(3 * k)?)
        else {
            continue;
        };
        let base = vf.v_body(k)?;
        if vf.v_body(2 * k)? != base.scale(&Rational::from_integer(2.into()))? {
            continue;
        }
        if vf.v_body(3 * k)? != base.scale(&Rational::from_integer(3.into()))? {
            continue;
        }
        let candidate = base.scale(&Rational::new(1.into(), k.into()))?;
        for j in 1..=horizon.max(3 * k) {
            let Some(_) = vf.values(j)? else { continue };
            let scaled = vf.v_body(j)?.scale(&Rational::new(1.into(), j.into()))?;
            if !candidate.contains(&scaled)? {
                continue 'outer;
            }
        }
        return Ok(BodyCertificate {
            status: CertStatus::Exact { stabilization: k },
            body: candidate,
        });
    }
    if let ValueRule::SymmetricMinorsSymbolic(m) = &vf.rule {
        return Ok(BodyCertificate {
            status: CertStatus::ClosedForm,
            body: symmetric_minors_closed_form(*m)?,
        });
    }
    let mut points: Vec<Point> = Vec::new();
    for k in 1..=horizon {
        let Some(_) = vf.values(k)? else { continue };
        let scaled = vf.v_body(k)?.scale(&Rational::new(1.into(), k.into()))?;
        points.extend(scaled.vertices().iter().cloned());
    }
    Ok(BodyCertificate {
        status: CertStatus::Approximate { budget: horizon },
        body: QPolyhedron::hull_plus_orthant(&points)?,
    })
}

/// `sup { lambda > 0 : lambda * Gamma_R(a_bullet) not subseteq Gamma }`, equal
/// to the asymptotic resurgence under the Rees-package theorem's hypotheses.
pub fn rees_resurgence(
    vf: &ReesValuedFamily,
    pkg: &ReesPackageData,
    budget: u32,
) -> Result<ResurgenceResult> {
    if vf.d != pkg.d {
        return Err(Error::DimensionMismatch { expected: pkg.d, got: vf.d });
    }
    let body = gamma_body(vf, budget)?;
    let gamma_cert = BodyCertificate {
        status: CertStatus::Exact { stabilization: 1 },
        body: pkg.gamma.clone(),
    };
    let mut res = body_resurgence(&body, &gamma_cert)?;
    res.assertions = vf.assertions.clone();
    Ok(res)
}

/// The resurgence against the k-th Veronese of the Rees algebra: the plain
/// value divided by k.
pub fn veronese_resurgence(
    vf: &ReesValuedFamily,
    pkg: &ReesPackageData,
    k: u32,
    budget: u32,
) -> Result<ResurgenceResult> {
    if k == 0 {
        return Err(Error::IndexZero);
    }
    let mut res = rees_resurgence(vf, pkg, budget)?;
    res.value = res.value.div_by(k.to_i64().unwrap());
    if k > 1 {
        // the vertex/facet pair certifies the undivided value
        res.witness = None;
    }
    Ok(res)
}

/// Identical computation to `rees_resurgence`, labeled with the caller's
/// b-equivalence and filtration assertions under which the value equals all
/// three resurgence invariants of the pair.
pub fn b_equivalent_resurgence(
    vf: &ReesValuedFamily,
    pkg: &ReesPackageData,
    budget: u32,
    assertions: &[&str],
) -> Result<ResurgenceResult> {
    let mut res = rees_resurgence(vf, pkg, budget)?;
    res.assertions.extend(assertions.iter().map(|s| s.to_string()));
    Ok(res)
}

/// The built-in example: symbolic powers of the ideal of maximal minors of an
/// m x m generic symmetric matrix, against the package of the (m-1)-minors.
pub fn symmetric_minors_family(m: u32) -> Result<(ReesPackageData, ReesValuedFamily)> {
    if m < 3 {
        return Err(Error::Invalid("symmetric-minors example needs m >= 3".into()));
    }
    let gamma = QPolyhedron::hull_plus_orthant(&[integer_point(
        &(0..m).map(|i| m - 1 - i).collect::<Vec<u32>>(),
    )])?;
    let pkg = ReesPackageData::new(m as usize, gamma, format!("symmetric-minors-{m}"))?;
    let vf = ReesValuedFamily {
        d: m as usize,
        rule: ValueRule::SymmetricMinorsSymbolic(m),
        assertions: vec!["b-equivalent".into(), "filtration".into()],
    };
    Ok((pkg, vf))
}

pub fn explicit_from_json_value(v: &Value) -> Result<(ReesPackageData, ReesValuedFamily)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Invalid("rees json: expected object".into()))?;
    let d = obj
        .get("d")
        .and_then(Value::as_u64)
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Invalid("rees json: missing d".into()))?;
    let gamma = QPolyhedron::from_json_value(
        obj.get("gamma")
            .ok_or_else(|| Error::Invalid("rees json: missing gamma".into()))?,
    )?;
    let pkg = ReesPackageData::new(d, gamma, "explicit")?;
    let mut values = BTreeMap::new();
    let table = obj
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Invalid("rees json: missing values".into()))?;
    for (key, row) in table {
        let k: u32 = key
            .parse()
            .map_err(|_| Error::Invalid("rees json: value keys are indices".into()))?;
        let pts = row
            .as_array()
            .ok_or_else(|| Error::Invalid("rees json: values are point lists".into()))?
            .iter()
            .map(|p| {
                p.as_array()
                    .ok_or_else(|| Error::Invalid("rees json: points are integer arrays".into()))?
                    .iter()
                    .map(|c| {
                        c.as_u64()
                            .and_then(|x| u32::try_from(x).ok())
                            .ok_or_else(|| {
                                Error::Invalid("rees json: coordinates are nonnegative ints".into())
                            })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        values.insert(k, pts);
    }
    let assertions = obj
        .get("assertions")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).map(String::from).collect())
        .unwrap_or_default();
    Ok((pkg, ReesValuedFamily::explicit(d, values)?.with_assertions(assertions)))
}

pub fn explicit_to_json_value(pkg: &ReesPackageData, vf: &ReesValuedFamily) -> Result<Value> {
    let ValueRule::Explicit(table) = &vf.rule else {
        return Err(Error::Invalid("only explicit tables serialize to the table schema".into()));
    };
    let values: serde_json::Map<String, Value> = table
        .iter()
        .map(|(k, pts)| (k.to_string(), json!(pts)))
        .collect();
    Ok(json!({
        "d": pkg.d,
        "gamma": pkg.gamma.to_json_value(),
        "values": values,
        "assertions": vf.assertions,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::ExtRational;
    use crate::rational::{rat, ratio};
    use crate::resurgence::Witness;

    #[test]
    fn symmetric_minors_value_tables() {
        let (_, vf) = symmetric_minors_family(3).unwrap();
        assert_eq!(vf.values(2).unwrap().unwrap(), vec![vec![3, 2, 1], vec![4, 2, 0]]);
        assert_eq!(vf.values(3).unwrap().unwrap(), vec![vec![5, 3, 1], vec![6, 3, 0]]);
        assert_eq!(vf.values(1).unwrap().unwrap(), vec![vec![2, 1, 0]]);
        assert!(vf.validate_superadditive(8).unwrap());
    }

    #[test]
    fn gamma_body_matches_closed_form() {
        for m in 3..=8u32 {
            let (_, vf) = symmetric_minors_family(m).unwrap();
            let cert = gamma_body(&vf, 8).unwrap();
            assert!(cert.status.is_exact());
            assert_eq!(cert.body, symmetric_minors_closed_form(m).unwrap());
        }
        // m = 3 instance spelled out
        let (_, vf) = symmetric_minors_family(3).unwrap();
        let body = gamma_body(&vf, 8).unwrap().body;
        assert!(body
            .vertices()
            .contains(&Point::new(vec![ratio(3, 2), rat(1), ratio(1, 2)])));
        assert!(body.vertices().contains(&Point::from_integers(&[2, 1, 0])));
    }

    #[test]
    fn even_odd_coherence() {
        let (_, vf) = symmetric_minors_family(4).unwrap();
        let closed = symmetric_minors_closed_form(4).unwrap();
        for k in 1..=21u32 {
            let scaled = vf
                .v_body(k)
                .unwrap()
                .scale(&Rational::new(1.into(), k.into()))
                .unwrap();
            assert!(closed.contains(&scaled).unwrap());
        }
    }

    #[test]
    fn resurgence_closed_form() {
        for m in 3..=8u32 {
            let (pkg, vf) = symmetric_minors_family(m).unwrap();
            let res = rees_resurgence(&vf, &pkg, 8).unwrap();
            assert_eq!(
                res.value,
                ExtRational::Finite(ratio(2 * (m as i64 - 1), m as i64))
            );
            assert!(res.exact);
            assert!(res.assertions.iter().any(|a| a == "b-equivalent"));
        }
    }

    #[test]
    fn m3_ray_exit() {
        let (pkg, _) = symmetric_minors_family(3).unwrap();
        let u = Point::new(vec![ratio(3, 2), rat(1), ratio(1, 2)]);
        assert_eq!(pkg.gamma.first_ray_exit(&u).unwrap(), ExtRational::Finite(ratio(4, 3)));
        let exit = u.scaled(&ratio(4, 3));
        assert_eq!(exit, Point::new(vec![rat(2), ratio(4, 3), ratio(2, 3)]));
    }

    #[test]
    fn reciprocity_with_polar() {
        let (pkg, vf) = symmetric_minors_family(5).unwrap();
        let res = rees_resurgence(&vf, &pkg, 8).unwrap();
        let value = res.value.finite().unwrap().clone();
        let body = gamma_body(&vf, 8).unwrap().body;
        let pairing = body.min_pairing(&pkg.gamma.polar().unwrap()).unwrap();
        assert_eq!(value * pairing, rat(1));
    }

    #[test]
    fn veronese_scaling() {
        let (pkg, vf) = symmetric_minors_family(4).unwrap();
        let base = rees_resurgence(&vf, &pkg, 8).unwrap();
        assert_eq!(base.value, ExtRational::Finite(ratio(3, 2)));
        let v1 = veronese_resurgence(&vf, &pkg, 1, 8).unwrap();
        assert_eq!(v1.value, base.value);
        assert!(matches!(v1.witness, Some(Witness::VertexFacet(_, _))));
        let v2 = veronese_resurgence(&vf, &pkg, 2, 8).unwrap();
        assert_eq!(v2.value, ExtRational::Finite(ratio(3, 4)));
    }

    #[test]
    fn explicit_tables() {
        // values(k) = k * {p}: the body is hull{p}+orthant, found Exact
        let p = vec![2u32, 3];
        let mut table = BTreeMap::new();
        for k in 1..=6u32 {
            table.insert(k, vec![p.iter().map(|&c| k * c).collect::<Vec<u32>>()]);
        }
        let vf = ReesValuedFamily::explicit(2, table).unwrap();
        let cert = gamma_body(&vf, 6).unwrap();
        assert!(matches!(cert.status, CertStatus::Exact { .. }));
        assert_eq!(
            cert.body,
            QPolyhedron::hull_plus_orthant(&[Point::from_integers(&[2, 3])]).unwrap()
        );

        // values contained in Gamma multiples: resurgence at most 1
        let gamma = QPolyhedron::hull_plus_orthant(&[Point::from_integers(&[1, 1])]).unwrap();
        let pkg = ReesPackageData::new(2, gamma, "box").unwrap();
        let res = rees_resurgence(&vf, &pkg, 6).unwrap();
        assert!(*res.value.finite().unwrap() <= rat(1));
    }

    #[test]
    fn explicit_json_round_trip() {
        let mut table = BTreeMap::new();
        table.insert(1, vec![vec![1u32, 2], vec![3, 0]]);
        table.insert(2, vec![vec![2u32, 4]]);
        let vf = ReesValuedFamily::explicit(2, table)
            .unwrap()
            .with_assertions(vec!["filtration".into()]);
        let gamma = QPolyhedron::hull_plus_orthant(&[Point::from_integers(&[1, 1])]).unwrap();
        let pkg = ReesPackageData::new(2, gamma, "explicit").unwrap();
        let v = explicit_to_json_value(&pkg, &vf).unwrap();
        let (pkg2, vf2) = explicit_from_json_value(&v).unwrap();
        assert_eq!(pkg2.gamma, pkg.gamma);
        assert_eq!(vf2.values(1).unwrap(), vf.values(1).unwrap());
        assert_eq!(vf2.assertions, vf.assertions);
        assert_eq!(explicit_to_json_value(&pkg2, &vf2).unwrap(), v);
    }

    #[test]
    fn bad_inputs() {
        assert!(symmetric_minors_family(2).is_err());
        assert!(ReesValuedFamily::explicit(2, BTreeMap::new()).is_err());
        let gamma = QPolyhedron::orthant(2);
        assert!(ReesPackageData::new(2, gamma, "orthant").is_err());
    }
}
