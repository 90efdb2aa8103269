//! JSON report shapes.
//!
//! All coordinates and norms are exact fraction strings ("3/2", "-1"),
//! never decimals. Key order is fixed by construction order, and
//! `serde_json`'s `preserve_order` feature keeps it through a parse and
//! re-serialize cycle.

use serde_json::{json, Value};

use rootgeom::catalog::RootSystem;
use rootgeom::counterexample::{ChamberIndexRecord, ViolationCertificate};
use rootgeom::lattice::QVec;
use rootgeom::stability::{StabilityReport, SweepOutcome};

fn vec_json(v: &QVec) -> Value {
    Value::Array(
        v.coords()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn vec_list_json<'a, I: IntoIterator<Item = &'a QVec>>(vs: I) -> Value {
    Value::Array(vs.into_iter().map(vec_json).collect())
}

pub fn root_system_json(sys: &RootSystem) -> Value {
    let d = sys.ambient_dim();
    let gram: Vec<Value> = (0..d)
        .flat_map(|i| (0..d).map(move |j| Value::String(sys.gram().entry(i, j).to_string())))
        .collect();
    json!({
        "type": sys.simple_type().to_string(),
        "rank": sys.simple_type().rank(),
        "ambient_dim": d,
        "gram": gram,
        "roots": vec_list_json(sys.roots()),
        "simple_roots": vec_list_json(sys.simple_roots()),
        "weight_basis": vec_list_json(sys.weight_lattice().basis()),
    })
}

pub fn stability_report_json(report: &StabilityReport) -> Value {
    let shells: Vec<Value> = report
        .shells
        .iter()
        .map(|s| {
            json!({
                "norm": s.norm.to_string(),
                "lattice_count": s.lattice_count,
                "root_count": s.root_count,
            })
        })
        .collect();
    json!({
        "type": report.simple_type.to_string(),
        "verdict": report.verdict.to_string(),
        "shells": shells,
        "witnesses": vec_list_json(&report.witnesses),
    })
}

pub fn sweep_json(outcome: &SweepOutcome) -> Value {
    let to_names = |types: &[rootgeom::SimpleType]| -> Vec<Value> {
        types.iter().map(|t| Value::String(t.to_string())).collect()
    };
    json!({
        "max_rank": outcome.max_rank,
        "expected_flagged": to_names(&SweepOutcome::expected_flagged()),
        "flagged": to_names(&outcome.flagged()),
        "pattern_holds": outcome.pattern_holds(),
        "reports": outcome.reports.values().map(stability_report_json).collect::<Vec<_>>(),
    })
}

pub fn index_record_json(record: &ChamberIndexRecord) -> Value {
    json!({
        "sub": record.sub.to_string(),
        "sup": record.sup.to_string(),
        "weyl_sub": u64::try_from(record.weyl_sub).expect("weyl order fits u64"),
        "weyl_sup": u64::try_from(record.weyl_sup).expect("weyl order fits u64"),
        "index": u64::try_from(record.index).expect("index fits u64"),
        "dynkin_bound": record.dynkin_bound,
    })
}

pub fn certificate_json(cert: &ViolationCertificate, record: &ChamberIndexRecord) -> Value {
    json!({
        "pair": {
            "sub": cert.sub.to_string(),
            "sup": cert.sup.to_string(),
        },
        "alpha": vec_json(&cert.alpha),
        "r": vec_json(&cert.root),
        "image": vec_json(&cert.image),
        "index_record": index_record_json(record),
    })
}
