//! Text and JSON rendering of frames, Levi data, bracket families, hull
//! tables and classification reports. JSON keys appear in a fixed order and
//! expressions use their canonical printed form, so output is byte-stable.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::classify::{Brackets, ClassificationReport, HullResult, KernelReport, NamedRank};
use crate::error::Result;
use crate::geometry::{cramer_frame, rho0, RankWitness, VectorField};
use crate::levi::{i_bracket, LeviMatrix};
use crate::manifold::{ManifoldFile, ValidatedSpec};

fn input_json(spec: &ValidatedSpec) -> Value {
    serde_json::to_value(ManifoldFile::from_spec(spec.spec())).expect("plain data serializes")
}

fn matrix_json(m: &LeviMatrix) -> Value {
    Value::Array(m.entries.iter().map(|r| Value::Array(r.iter().map(|e| json!(e.to_string())).collect())).collect())
}

fn field_json(f: &VectorField) -> Value {
    let d = f.dims();
    let mut obj = serde_json::Map::new();
    for (s, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            obj.insert(format!("d/d{}", d.var(s)), json!(c.to_string()));
        }
    }
    Value::Object(obj)
}

fn witness_json(nr: &NamedRank) -> Value {
    let pick = |names: &[String], idx: &[usize]| idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
    let w = |rw: &RankWitness| {
        json!({
            "rank": rw.rank,
            "rows": pick(&nr.rows, &rw.rows),
            "cols": pick(&nr.columns, &rw.cols),
            "minor": rw.minor.to_string(),
        })
    };
    json!({
        "set": nr.name,
        "generic": w(&nr.generic),
        "point": w(&nr.point),
    })
}

fn kernel_json(k: &KernelReport) -> Value {
    let d = &k.data;
    json!({
        "k": d.k.to_string(),
        "K": d.kernel_field.to_string(),
        "kappa0": d.kappa0.to_string(),
        "frame_adjust": d.frame_adjust.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "freeman": d.freeman.to_string(),
        "freeman_identically_zero": d.freeman.is_zero(),
        "freeman_at_point": k.freeman_at_point.as_ref().map(|v| v.to_string()),
    })
}

pub fn classification_json(r: &ClassificationReport) -> Value {
    let mut ranks = serde_json::Map::new();
    for nr in &r.ranks {
        ranks.insert(nr.name.clone(), json!({ "generic": nr.generic.rank, "point": nr.point.rank }));
    }
    let mut obj = serde_json::Map::new();
    obj.insert("input".into(), input_json(&r.spec));
    obj.insert("verdict".into(), json!(r.verdict.tag()));
    obj.insert("ranks".into(), Value::Object(ranks));
    obj.insert("witnesses".into(), Value::Array(r.ranks.iter().map(witness_json).collect()));
    if let Some(levi) = &r.levi {
        obj.insert("levi".into(), matrix_json(levi));
    }
    if let Some(k) = &r.kernel {
        obj.insert("kernel".into(), kernel_json(k));
    }
    if let Some(d) = &r.observational_d {
        obj.insert("observational_d".into(), json!(d.to_string()));
    }
    obj.insert("certificates".into(), json!(r.certificates));
    obj.insert("sigma_flag".into(), json!(r.sigma_flag));
    Value::Object(obj)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("valid JSON value");
    s.push('\n');
    s
}

pub fn classification_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let d = r.spec.dims();
    writeln!(s, "manifold: n = {}, c = {}", d.n, d.c).unwrap();
    for (j, p) in r.spec.phi().iter().enumerate() {
        writeln!(s, "  phi{} = {p}", j + 1).unwrap();
    }
    for w in r.spec.warnings() {
        writeln!(s, "warning: {w}").unwrap();
    }
    writeln!(s, "verdict: {}", r.verdict).unwrap();
    writeln!(s, "ranks (generic / base point):").unwrap();
    for nr in &r.ranks {
        writeln!(s, "  rank {} = {} / {}", nr.name, nr.generic.rank, nr.point.rank).unwrap();
        if nr.generic.rank > 0 {
            let rows: Vec<&str> = nr.generic.rows.iter().map(|&i| nr.rows[i].as_str()).collect();
            let cols: Vec<&str> = nr.generic.cols.iter().map(|&i| nr.columns[i].as_str()).collect();
            writeln!(
                s,
                "    witness minor rows [{}] cols [{}]: {}",
                rows.join(", "),
                cols.join(", "),
                nr.generic.minor
            )
            .unwrap();
        }
    }
    if let Some(k) = &r.kernel {
        writeln!(s, "kernel:").unwrap();
        writeln!(s, "  k = {}", k.data.k).unwrap();
        writeln!(s, "  K = {}", k.data.kernel_field).unwrap();
        writeln!(s, "  kappa0 = {}", k.data.kappa0).unwrap();
        writeln!(s, "  freeman = {}", k.data.freeman).unwrap();
    }
    for c in &r.certificates {
        writeln!(s, "certificate: {c}").unwrap();
    }
    writeln!(s, "sigma_flag: {}", r.sigma_flag).unwrap();
    s
}

pub fn frame_json(spec: &ValidatedSpec) -> Result<Value> {
    let fs = cramer_frame(spec)?;
    let d = spec.dims();
    let a: Vec<Vec<String>> = fs.a.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    Ok(json!({
        "input": input_json(spec),
        "A": a,
        "L": fs.l.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "Lb": fs.lbar.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "rho0": rho0(&fs).iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "dims": { "n": d.n, "c": d.c },
    }))
}

pub fn frame_text(spec: &ValidatedSpec) -> Result<String> {
    let fs = cramer_frame(spec)?;
    let d = spec.dims();
    let mut s = String::new();
    for i in 0..d.n {
        for l in 0..d.c {
            writeln!(s, "A{}^{} = {}", i + 1, l + 1, fs.a[i][l]).unwrap();
        }
    }
    for (i, l) in fs.l.iter().enumerate() {
        writeln!(s, "L{} = {l}", i + 1).unwrap();
    }
    for (i, l) in fs.lbar.iter().enumerate() {
        writeln!(s, "Lb{} = {l}", i + 1).unwrap();
    }
    for (j, r) in rho0(&fs).iter().enumerate() {
        writeln!(s, "rho0_{} = {r}", j + 1).unwrap();
    }
    Ok(s)
}

/// Levi matrix, determinant and generic rank, plus kernel data when present.
pub struct LeviSummary {
    pub spec: ValidatedSpec,
    pub matrix: LeviMatrix,
    pub det: crate::expr::RationalExpr,
    pub rank: usize,
    pub kernel: Option<KernelReport>,
}

pub fn levi_summary(spec: &ValidatedSpec) -> Result<LeviSummary> {
    let matrix = crate::levi::levi_matrix(spec)?;
    let det = matrix.det();
    let rank = matrix.generic_rank().rank;
    let kernel = if spec.dims().n == 2 && rank == 1 {
        let data = crate::levi::slant_k(spec)?;
        let values = spec.base_point().slot_values(spec.dims())?;
        let freeman_at_point = data.freeman.eval_slots(&values).ok();
        Some(KernelReport { data, freeman_at_point })
    } else {
        None
    };
    Ok(LeviSummary { spec: spec.clone(), matrix, det, rank, kernel })
}

pub fn levi_json(l: &LeviSummary) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("input".into(), input_json(&l.spec));
    obj.insert("levi".into(), matrix_json(&l.matrix));
    obj.insert("det".into(), json!(l.det.to_string()));
    obj.insert("rank".into(), json!(l.rank));
    if let Some(k) = &l.kernel {
        obj.insert("kernel".into(), kernel_json(k));
    }
    Value::Object(obj)
}

pub fn levi_text(l: &LeviSummary) -> String {
    let mut s = String::new();
    writeln!(s, "Levi matrix (row r, column c = rho0(i[L_c, Lb_r])):").unwrap();
    for row in &l.matrix.entries {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        writeln!(s, "  [{}]", cells.join(", ")).unwrap();
    }
    writeln!(s, "det = {}", l.det).unwrap();
    writeln!(s, "generic rank = {}", l.rank).unwrap();
    if let Some(k) = &l.kernel {
        writeln!(s, "k = {}", k.data.k).unwrap();
        writeln!(s, "K = {}", k.data.kernel_field).unwrap();
        writeln!(s, "kappa0 = {}", k.data.kappa0).unwrap();
        writeln!(s, "freeman = {}", k.data.freeman).unwrap();
    }
    s
}

/// Named bracket fields: the canonical `n = 1` families, or `L_i`, `Lb_i`
/// and `i[L_c, Lb_r]` for `n = 2`.
pub fn bracket_fields(spec: &ValidatedSpec) -> Result<Vec<(String, VectorField)>> {
    let fs = cramer_frame(spec)?;
    let frame = fs.as_frame();
    if spec.dims().n == 1 {
        let br = Brackets::new(&frame);
        return Ok(br.named().into_iter().map(|(n, f)| (n.to_string(), f.clone())).collect());
    }
    let mut out = Vec::new();
    for (i, l) in frame.l.iter().enumerate() {
        out.push((format!("L{}", i + 1), l.clone()));
    }
    for (i, l) in frame.lbar.iter().enumerate() {
        out.push((format!("Lb{}", i + 1), l.clone()));
    }
    for r in 0..frame.l.len() {
        for c in 0..frame.l.len() {
            out.push((format!("i[L{}, Lb{}]", c + 1, r + 1), i_bracket(&frame.l[c], &frame.lbar[r])));
        }
    }
    Ok(out)
}

pub fn brackets_json(spec: &ValidatedSpec) -> Result<Value> {
    let mut obj = serde_json::Map::new();
    for (name, f) in bracket_fields(spec)? {
        obj.insert(name, field_json(&f));
    }
    Ok(json!({ "input": input_json(spec), "brackets": Value::Object(obj) }))
}

pub fn brackets_text(spec: &ValidatedSpec) -> Result<String> {
    let mut s = String::new();
    for (name, f) in bracket_fields(spec)? {
        writeln!(s, "{name} = {f}").unwrap();
    }
    Ok(s)
}

pub fn hull_json(spec: &ValidatedSpec, h: &HullResult) -> Value {
    json!({
        "input": input_json(spec),
        "rank": h.rank,
        "stabilized_at": h.stabilized_at,
        "per_depth": h.per_depth,
        "dimension": spec.dims().nvars(),
    })
}

pub fn hull_text(spec: &ValidatedSpec, h: &HullResult) -> String {
    let mut s = String::new();
    writeln!(s, "depth  rank").unwrap();
    for (i, r) in h.per_depth.iter().enumerate() {
        writeln!(s, "{:>5}  {r}", i + 1).unwrap();
    }
    writeln!(s, "hull rank = {} (dimension {})", h.rank, spec.dims().nvars()).unwrap();
    match h.stabilized_at {
        Some(d) => writeln!(s, "stabilized at depth {d}").unwrap(),
        None => writeln!(s, "not stabilized").unwrap(),
    }
    s
}
