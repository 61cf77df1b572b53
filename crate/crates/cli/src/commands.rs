use anyhow::{bail, Result};
use pairgap::closedform;
use pairgap::distributions::{self, Regime};
use pairgap::extensions::{self, check_dual_feasible, Caps, DualCertificate};
use pairgap::gap::{self, GapOptions, ScanConfig, ScanResult};
use pairgap::setfn::{self, SubpolytopeLabel};
use pairgap::{q, Distribution, MarginalVector, Rational, SetFunction};
use serde_json::{json, Value};

pub fn caps(cap: Option<usize>) -> Caps {
    match cap {
        Some(c) => Caps { plus: c, pairwise: c },
        None => Caps::default(),
    }
}

fn check_dims(f: &SetFunction, x: &MarginalVector) -> Result<()> {
    if f.n() != x.n() {
        return Err(pairgap::Error::DimensionMismatch { expected: f.n(), found: x.n() }.into());
    }
    Ok(())
}

/// Closed forms are defined for nonconstant monotone submodular `f` on two or three elements.
fn closed_forms_if_defined(f: &SetFunction, x: &MarginalVector) -> Result<Value> {
    if !(2..=3).contains(&f.n()) || !f.is_monotone_submodular() || f.value(f.full_set()) <= f.value(0) {
        return Ok(Value::Null);
    }
    let (fp, fpp) = gap::closed_forms(f, x)?;
    Ok(json!({ "f_plus": fp, "f_pp": fpp }))
}

pub fn eval(f: &SetFunction, x: &MarginalVector, caps: &Caps) -> Result<Value> {
    check_dims(f, x)?;
    let plus = caps.concave_closure(f, x)?.value;
    let pp = caps.upper_pairwise(f, x)?.value;
    let closed = closed_forms_if_defined(f, x)?;
    let agrees = closed.as_object().map(|c| c["f_plus"] == json!(plus) && c["f_pp"] == json!(pp));
    Ok(json!({
        "n": f.n(),
        "x": x,
        "F": extensions::multilinear(f, x)?,
        "f_plus": plus,
        "f_pp": pp,
        "f_minus": caps.convex_closure(f, x)?.value,
        "f_mm": caps.lower_pairwise(f, x)?.value,
        "closed_form": closed,
        "closed_form_agrees": agrees,
    }))
}

pub fn gap_report(f: &SetFunction, x: &MarginalVector, caps: Caps) -> Result<Value> {
    check_dims(f, x)?;
    let options = GapOptions { caps, ..GapOptions::default() };
    Ok(serde_json::to_value(gap::gap_report_with(f, x, &options)?)?)
}

fn certificate_entry(f: &SetFunction, x: &MarginalVector, value: &Rational, cert: &DualCertificate) -> Result<Value> {
    let verdict = check_dual_feasible(f, cert)?;
    let objective = cert.objective(x);
    Ok(json!({
        "value": value,
        "certificate": cert,
        "objective": objective,
        "objective_matches": &objective == value,
        "feasible": verdict.holds(),
        "violation": verdict.witness().map(|w| json!({ "set": w.set, "bound": w.bound, "value": w.value })),
    }))
}

pub fn certify(f: &SetFunction, x: &MarginalVector, caps: &Caps) -> Result<Value> {
    check_dims(f, x)?;
    let mut out = serde_json::Map::new();
    for (name, ext) in [("f_plus", caps.concave_closure(f, x)?), ("f_pp", caps.upper_pairwise(f, x)?)] {
        let cert = ext.certificate.as_ref().expect("maximizing extensions carry a certificate");
        out.insert(name.into(), certificate_entry(f, x, &ext.value, cert)?);
    }
    if f.n() == 3 && f.is_monotone_submodular() && f.value(f.full_set()) > f.value(0) {
        let g = setfn::normalize(f)?;
        let table = closedform::dual_table_n3(&g)?
            .into_iter()
            .map(|d| {
                let applies = d.family.map_or(true, |label| setfn::in_f_family(&g, label));
                let verdict = check_dual_feasible(&g, &d.certificate)?;
                Ok(json!({
                    "index": d.index,
                    "family": d.family,
                    "family_member": applies,
                    "certificate": d.certificate,
                    "objective": d.certificate.objective(x),
                    "feasible": verdict.holds(),
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert("normalized".into(), json!(g.values()));
        out.insert("table_duals".into(), Value::Array(table));
    }
    Ok(Value::Object(out))
}

fn diagnostics(d: &Distribution, x: &MarginalVector) -> Result<Value> {
    let verdict = distributions::check_pairwise_independent(d, x);
    let covariance = if d.n() >= 2 {
        distributions::covariance_signs(d)?
            .into_iter()
            .map(|((i, j), s)| json!({ "pair": [i, j], "sign": s }))
            .collect()
    } else {
        Vec::new()
    };
    Ok(json!({
        "distribution": d,
        "pairwise_independent": verdict.holds(),
        "violation": verdict.witness().map(|w| format!("{w:?}")),
        "cylinder": distributions::cylinder_signature(d, x)?,
        "covariance": covariance,
    }))
}

fn attempt(built: pairgap::Result<Distribution>, x: &MarginalVector) -> Result<Value> {
    match built {
        Ok(d) => diagnostics(&d, x),
        Err(e @ pairgap::Error::CapExceeded { .. }) => Err(e.into()),
        Err(e) => Ok(json!({ "unavailable": e.to_string() })),
    }
}

pub fn dists(x: &MarginalVector, omega: Option<&Rational>, f: Option<&SetFunction>) -> Result<Value> {
    let mut out = serde_json::Map::new();
    out.insert("x".into(), json!(x));
    out.insert("product".into(), diagnostics(&distributions::product_distribution(x), x)?);
    if x.n() >= 2 {
        out.insert("small".into(), attempt(distributions::construct_small(x), x)?);
        out.insert("large".into(), attempt(distributions::construct_large(x), x)?);
    }
    if x.n() == 3 {
        let bounds = closedform::omega_bounds_n3(x)?;
        out.insert("omega_bounds".into(), json!(bounds));
        let mut family = serde_json::Map::new();
        family.insert("low".into(), attempt(closedform::pairwise_family_n3(x, &bounds.low), x)?);
        family.insert("high".into(), attempt(closedform::pairwise_family_n3(x, &bounds.high), x)?);
        if let Some(w) = omega {
            family.insert("omega".into(), json!(w));
            family.insert("chosen".into(), diagnostics(&closedform::pairwise_family_n3(x, w)?, x)?);
        }
        if let Some(f) = f {
            check_dims(f, x)?;
            let w = closedform::optimal_omega_n3(&setfn::normalize(f)?, x)?;
            family.insert("optimal_omega".into(), json!(w));
        }
        out.insert("omega_family".into(), Value::Object(family));
        out.insert("theta_plus_r1".into(), attempt(distributions::theta_plus_r1(x), x)?);
        out.insert("theta_plus_r14".into(), attempt(distributions::theta_plus_r14(x), x)?);
        let (region, d) = distributions::region_distribution_f31(x)?;
        let pattern = distributions::expected_covariance_pattern_f31(x)?;
        let signs = distributions::covariance_signs(&d)?;
        let matches = signs.iter().zip(pattern).all(|((_, s), want)| want.admits(*s));
        let mut entry = diagnostics(&d, x)?;
        entry["region"] = json!(region);
        entry["expected_covariance"] = json!(pattern.map(|p| format!("{p:?}")));
        entry["covariance_matches"] = json!(matches);
        out.insert("region_f31".into(), entry);
    }
    if x.n() == 4 && x.is_identical() {
        let p = x.get(1);
        out.insert("identical_small".into(), attempt(distributions::identical_n4(p, Regime::Small), x)?);
        out.insert("identical_large".into(), attempt(distributions::identical_n4(p, Regime::Large), x)?);
    }
    Ok(Value::Object(out))
}

pub fn regions(x: &MarginalVector, f: Option<&SetFunction>) -> Result<Value> {
    let mut out = serde_json::Map::new();
    let per_family = SubpolytopeLabel::F_FAMILIES
        .iter()
        .map(|&family| {
            let region = closedform::region_n3(x, family)?;
            Ok(json!({ "family": family, "region": region, "designated_dual": region.designated_dual() }))
        })
        .collect::<Result<Vec<_>>>()?;
    out.insert("x".into(), json!(x));
    out.insert("regions".into(), Value::Array(per_family));
    if let Some(f) = f {
        check_dims(f, x)?;
        let g = setfn::normalize(f)?;
        out.insert("normalized".into(), json!(g.values()));
        out.insert("in_polytope".into(), json!(setfn::in_polytope(&g)?));
        out.insert("subpolytopes".into(), serde_json::to_value(setfn::classify_subpolytope(&g)?)?);
    }
    Ok(Value::Object(out))
}

pub fn scan(config: &ScanConfig) -> Result<ScanResult> {
    Ok(gap::scan_with(config)?)
}

pub fn scan_csv(result: &ScanResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "ratio", "f_plus", "f_pp", "violation"])?;
    for r in &result.records {
        let flag = if r.ratio > result.bound { "true" } else { "false" };
        w.write_record([r.index.to_string(), r.ratio.to_string(), r.f_plus.to_string(), r.f_pp.to_string(), flag.into()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn lp_pair(f: &SetFunction, x: &MarginalVector) -> Result<(Rational, Rational)> {
    Ok((extensions::concave_closure(f, x)?.value, extensions::upper_pairwise(f, x)?.value))
}

pub fn demo_function_dependence() -> Result<Value> {
    let f1 = setfn::make_setfn(3, vec![q(0, 1), q(1, 3), q(1, 2), q(3, 4), q(3, 5), q(4, 5), q(5, 6), q(1, 1)])?;
    let f2 = SetFunction::from_set_order_n3([q(0, 1), q(1, 3), q(1, 2), q(1, 2), q(3, 4), q(4, 5), q(5, 6), q(1, 1)])?;
    let x = MarginalVector::identical(3, q(1, 2))?;
    let mut rows = Vec::new();
    for (name, f, want_plus, want_pp) in [("f1", &f1, q(27, 40), q(73, 120)), ("f2", &f2, q(13, 20), q(143, 240))] {
        let (plus, pp) = lp_pair(f, &x)?;
        rows.push(json!({
            "name": name,
            "f": f.values(),
            "f_plus": plus,
            "f_pp": pp,
            "expected_f_plus": want_plus,
            "expected_f_pp": want_pp,
            "matches": plus == want_plus && pp == want_pp,
        }));
    }
    Ok(json!({ "demo": "table1", "x": x, "functions": rows }))
}

pub fn demo_tight_n2() -> Result<Value> {
    let f = setfn::uniform_matroid_rank(2, 1)?;
    let x = MarginalVector::identical(2, q(1, 2))?;
    let (plus, pp) = lp_pair(&f, &x)?;
    let ratio = gap::gap_ratio(&plus, &pp)?;
    Ok(json!({
        "demo": "tight-n2",
        "f": f.values(),
        "x": x,
        "f_plus": plus,
        "f_pp": pp,
        "closed_form_f_pp": closedform::f_pp_n2(&f, &x)?,
        "ratio": ratio,
        "bound": q(4, 3),
        "tight": ratio == q(4, 3),
    }))
}

pub fn demo_tight_rank1() -> Result<Value> {
    let f = setfn::uniform_matroid_rank(3, 1)?;
    let x = MarginalVector::new(vec![q(1, 2), q(1, 4), q(1, 4)])?;
    let (plus, pp) = lp_pair(&f, &x)?;
    let ratio = gap::gap_ratio(&plus, &pp)?;
    Ok(json!({
        "demo": "tight-rank1",
        "f": f.values(),
        "x": x,
        "f_plus": plus,
        "f_pp": pp,
        "formula_f_pp": closedform::f_pp_rank1(&x),
        "ratio": ratio,
        "bound": q(4, 3),
        "tight": ratio == q(4, 3),
    }))
}

pub fn demo_tight_kuniform(n: usize, k: usize, p: &Rational) -> Result<Value> {
    if k == 0 || k > n {
        bail!("need 1 <= k <= n (got n = {n}, k = {k})");
    }
    let f = setfn::uniform_matroid_rank(n, k)?;
    let x = MarginalVector::identical(n, p.clone())?;
    let (plus, pp) = lp_pair(&f, &x)?;
    let (cf_plus, cf_pp) = closedform::kuniform_identical(n, k, p)?;
    let ratio = gap::gap_ratio(&plus, &pp)?;
    let four_k = Rational::from(4 * k);
    let bound = &four_k / &(&four_k - &Rational::one());
    Ok(json!({
        "demo": "tight-kuniform",
        "n": n,
        "k": k,
        "p": p,
        "f_plus": plus,
        "f_pp": pp,
        "closed_form_f_plus": cf_plus,
        "closed_form_f_pp": cf_pp,
        "ratio": ratio,
        "bound": bound,
        "within_bound": ratio <= bound,
        "tight": ratio == bound,
    }))
}

pub fn demo_unbounded_gaps(epsilon: &Rational, eta: &Rational) -> Result<Value> {
    let cases = gap::counterexample_demos(epsilon, eta)?;
    Ok(json!({ "demo": "appendix-a1", "epsilon": epsilon, "eta": eta, "cases": cases }))
}

pub fn demo_rank1_witness(n: usize) -> Result<Value> {
    let f = setfn::uniform_matroid_rank(n, 1)?;
    let x = MarginalVector::identical(n, Rational::new(1, n as i64))?;
    let witness = gap::rank1_witness(n)?;
    let pp = extensions::upper_pairwise(&f, &x)?.value;
    let inv = Rational::new(1, n as i64);
    let lower = Rational::one() - &inv + &inv * &inv;
    Ok(json!({
        "demo": "appendix-a2",
        "n": n,
        "x": x,
        "witness": witness,
        "witness_pairwise_independent": distributions::check_pairwise_independent(&witness, &x).holds(),
        "witness_value": witness.expectation(&f),
        "lower_bound": lower,
        "f_pp": pp,
        "F": extensions::multilinear(&f, &x)?,
        "meets_lower_bound": pp >= lower,
    }))
}
