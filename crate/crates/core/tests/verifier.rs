mod common;

use common::ctx;
use rayon::prelude::*;
use rug::Rational;

use invbinom::verifier::{
    ReportDocument, Status, builtin_catalog, verify, verify_all, verify_catalog,
};

#[test]
fn worker_count_does_not_change_reports() {
    let c = ctx(40);
    let strip = |mut v: Vec<invbinom::VerificationReport>| {
        v.iter_mut().for_each(|r| r.elapsed_ms = 0);
        v
    };
    let one = strip(verify_all(&c, 1).unwrap());
    let eight = strip(verify_all(&c, 8).unwrap());
    assert_eq!(one, eight);
    let ids: Vec<String> = builtin_catalog().into_iter().map(|e| e.id).collect();
    assert_eq!(one.iter().map(|r| r.id.clone()).collect::<Vec<_>>(), ids);
}

#[test]
fn more_precision_never_loses_digits() {
    let lo = verify_all(&ctx(40), 8).unwrap();
    let hi = verify_all(&ctx(60), 8).unwrap();
    for (a, b) in lo.iter().zip(&hi) {
        assert_eq!(a.status, Status::Pass, "{}", a.id);
        assert!(
            b.digits_agreed >= a.digits_agreed - 1.0,
            "{}: {} vs {}",
            a.id,
            b.digits_agreed,
            a.digits_agreed
        );
    }
}

#[test]
fn every_coefficient_is_load_bearing() {
    let c = ctx(40);
    let bump = Rational::from((1001, 1000));
    let cases: Vec<_> = builtin_catalog()
        .into_iter()
        .filter_map(|id| Some((id.rhs_expr()?.coefficients(), id)))
        .flat_map(|(coeffs, id)| {
            coeffs
                .into_iter()
                .enumerate()
                .map(move |(k, r)| (id.clone(), k, r))
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(cases.len(), 193);
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(id, k, r)| {
            let bad = id
                .with_rhs_coefficient(*k, Rational::from(r * &bump))
                .unwrap();
            let rep = verify(&bad, &c);
            (rep.status != Status::Fail)
                .then(|| format!("{} coefficient {k} ({r}): {:?}", id.id, rep.status))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn report_document_layout() {
    let c = ctx(20);
    let cat: Vec<_> = builtin_catalog()
        .into_iter()
        .filter(|e| e.id == "s3_4" || e.id == "chen_neg")
        .collect();
    let reports = verify_catalog(&cat, &c, 2).unwrap();
    let doc = ReportDocument::new(reports, 20, &builtin_catalog());
    let v = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["metadata"]["digits"], 20);
    assert_eq!(v["metadata"]["catalog_hash"].as_str().unwrap().len(), 64);
    let r = &v["reports"][0];
    for key in [
        "id",
        "status",
        "digits_agreed",
        "abs_diff",
        "precision_used",
        "anchor",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert!(r.get("elapsed_ms").is_none());
    assert!(v["timing"].get("s3_4").is_some());
}
