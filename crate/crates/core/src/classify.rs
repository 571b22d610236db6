//! The six-class decision procedure for CR-generic `M^{2n+c}` with
//! `2n + c <= 5`, degenerate product verdicts, and the bounded Lie-hull rank.
//!
//! Decisions are made on generic ranks (identical vanishing of minors). Ranks
//! at the base point are recorded alongside; `sigma_flag` is set when any of
//! them drops below the generic value.

use std::fmt;

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::geometry::{
    cramer_frame, decompose_in_frame, generic_rank, lie_bracket, matrix_generic_rank, rank_at_point, rho0, Frame,
    RankWitness, VectorField,
};
use crate::levi::{levi_matrix_in, slant_k, KernelData, LeviMatrix};
use crate::linalg;
use crate::manifold::{PointAssignment, ValidatedSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    /// `M^3 × ℝ`
    M3xR,
    /// `M^3 × ℝ^2`
    M3xR2,
    /// `M^4 × ℝ`
    M4xR,
    /// `M^3 × ℂ`
    M3xC,
}

impl DegenerateKind {
    pub fn label(self) -> &'static str {
        match self {
            DegenerateKind::M3xR => "M3xR",
            DegenerateKind::M3xR2 => "M3xR2",
            DegenerateKind::M4xR => "M4xR",
            DegenerateKind::M3xC => "M3xC",
        }
    }

    /// The reduction the verdict stands for.
    pub fn certificate(self) -> &'static str {
        match self {
            DegenerateKind::M3xR => "locally M^3 x R with M^3 in C^2 of Class I; one flat real parameter",
            DegenerateKind::M3xR2 => "locally M^3 x R^2 with M^3 in C^2 of Class I; two flat real parameters",
            DegenerateKind::M4xR => "locally M^4 x R with M^4 in C^3 of Class II; one flat real parameter",
            DegenerateKind::M3xC => "locally M^3 x C with M^3 in C^2 of Class I; one flat complex parameter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    ClassI,
    ClassII,
    ClassIII1,
    ClassIII2,
    ClassIV1,
    ClassIV2,
    LeviFlat,
    DegenerateProduct(DegenerateKind),
}

impl Verdict {
    /// Machine-readable tag used in JSON reports.
    pub fn tag(&self) -> String {
        match self {
            Verdict::ClassI => "ClassI".into(),
            Verdict::ClassII => "ClassII".into(),
            Verdict::ClassIII1 => "ClassIII1".into(),
            Verdict::ClassIII2 => "ClassIII2".into(),
            Verdict::ClassIV1 => "ClassIV1".into(),
            Verdict::ClassIV2 => "ClassIV2".into(),
            Verdict::LeviFlat => "LeviFlat".into(),
            Verdict::DegenerateProduct(k) => format!("DegenerateProduct({})", k.label()),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ClassI => write!(f, "Class I"),
            Verdict::ClassII => write!(f, "Class II"),
            Verdict::ClassIII1 => write!(f, "Class III_1"),
            Verdict::ClassIII2 => write!(f, "Class III_2"),
            Verdict::ClassIV1 => write!(f, "Class IV_1"),
            Verdict::ClassIV2 => write!(f, "Class IV_2"),
            Verdict::LeviFlat => write!(f, "Levi-flat"),
            Verdict::DegenerateProduct(k) => write!(f, "Degenerate product {}", k.label()),
        }
    }
}

/// Generic and base-point rank of one named family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedRank {
    pub name: String,
    /// Names of the columns (fields, or frame indices for the Levi matrix).
    pub columns: Vec<String>,
    /// Names of the rows (directions, or conjugate frame indices).
    pub rows: Vec<String>,
    pub generic: RankWitness,
    pub point: RankWitness,
}

impl NamedRank {
    pub fn drops_at_point(&self) -> bool {
        self.point.rank < self.generic.rank
    }
}

/// Freeman data and its base-point status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub data: KernelData,
    /// `None` when `k` or the Freeman expression has a pole at the base point.
    pub freeman_at_point: Option<GaussianRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub spec: ValidatedSpec,
    pub verdict: Verdict,
    pub ranks: Vec<NamedRank>,
    pub levi: Option<LeviMatrix>,
    pub kernel: Option<KernelReport>,
    /// Coefficient `d` of `[L,T]` in `[Lb,T]` when the side identity applies.
    pub observational_d: Option<RationalExpr>,
    pub certificates: Vec<String>,
    pub sigma_flag: bool,
}

impl ClassificationReport {
    pub fn rank(&self, name: &str) -> Option<usize> {
        self.ranks.iter().find(|r| r.name == name).map(|r| r.generic.rank)
    }

    pub fn point_rank(&self, name: &str) -> Option<usize> {
        self.ranks.iter().find(|r| r.name == name).map(|r| r.point.rank)
    }
}

/// The canonical `n = 1` bracket families.
#[derive(Debug, Clone)]
pub struct Brackets {
    pub l: VectorField,
    pub lbar: VectorField,
    pub t: VectorField,
    pub lt: VectorField,
    pub lbt: VectorField,
    pub llt: VectorField,
}

impl Brackets {
    pub fn new(frame: &Frame) -> Self {
        let l = frame.l[0].clone();
        let lbar = frame.lbar[0].clone();
        let br = lie_bracket(&l, &lbar);
        let t = br.scale(&RationalExpr::i(br.dims()));
        let lt = lie_bracket(&l, &t);
        let lbt = lie_bracket(&lbar, &t);
        let llt = lie_bracket(&l, &lt);
        Brackets { l, lbar, t, lt, lbt, llt }
    }

    /// `(name, field)` in canonical order.
    pub fn named(&self) -> Vec<(&'static str, &VectorField)> {
        vec![
            ("L", &self.l),
            ("Lb", &self.lbar),
            ("T", &self.t),
            ("[L,T]", &self.lt),
            ("[Lb,T]", &self.lbt),
            ("[L,[L,T]]", &self.llt),
        ]
    }

    /// The first `k` canonical fields.
    pub fn prefix(&self, k: usize) -> Vec<VectorField> {
        self.named().into_iter().take(k).map(|(_, f)| f.clone()).collect()
    }
}

fn direction_names(spec: &ValidatedSpec) -> Vec<String> {
    let d = spec.dims();
    (0..d.nvars()).map(|s| format!("d/d{}", d.var(s))).collect()
}

fn field_rank(spec: &ValidatedSpec, name: &str, names: &[&str], fields: &[VectorField]) -> Result<NamedRank> {
    let generic = generic_rank(fields);
    let point = rank_at_point(fields, spec.base_point())?;
    Ok(NamedRank {
        name: name.to_string(),
        columns: names.iter().map(|s| s.to_string()).collect(),
        rows: direction_names(spec),
        generic,
        point,
    })
}

fn bracket_rank(spec: &ValidatedSpec, br: &Brackets, k: usize) -> Result<NamedRank> {
    let names: Vec<&str> = br.named().into_iter().take(k).map(|(n, _)| n).collect();
    let name = format!("{{{}}}", names.join(", "));
    field_rank(spec, &name, &names, &br.prefix(k))
}

fn matrix_rank_at(m: &[Vec<RationalExpr>], p: &PointAssignment) -> Result<RankWitness> {
    let dims = m[0][0].dims();
    let values = p.slot_values(dims)?;
    let ev = m
        .iter()
        .map(|row| row.iter().map(|e| e.eval_slots(&values)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let (rank, rows, mut cols) = linalg::rank_numeric(&ev);
    cols.sort_unstable();
    let sub: Vec<Vec<GaussianRational>> =
        rows.iter().map(|&r| cols.iter().map(|&c| ev[r][c].clone()).collect()).collect();
    let value = if rank == 0 { GaussianRational::from_int(0) } else { linalg::det_numeric(&sub) };
    Ok(RankWitness { rank, rows, cols, minor: RationalExpr::constant(dims, value) })
}

/// `d` with `[Lb,T] = a L + b Lb + c T + d [L,T]`.
pub fn observational_coefficient(br: &Brackets) -> Result<RationalExpr> {
    let frame = [br.l.clone(), br.lbar.clone(), br.t.clone(), br.lt.clone()];
    let lambda = decompose_in_frame(&br.lbt, &frame)?;
    Ok(lambda[3].clone())
}

fn check_observational(br: &Brackets, report: &mut ClassificationReport) -> Result<()> {
    let d = observational_coefficient(br)?;
    if !(&d * &d.conj()).is_one() {
        return Err(CrError::Internal(format!("side identity fails: d = {d}")));
    }
    report.certificates.push(format!("[Lb,T] = ({d}) [L,T] mod (L, Lb, T), |d|^2 = 1"));
    report.observational_d = Some(d);
    Ok(())
}

pub fn classify(spec: &ValidatedSpec) -> Result<ClassificationReport> {
    let fs = cramer_frame(spec)?;
    classify_in_frame(spec, &fs.as_frame())
}

/// Classification with the Cramer frame replaced by another `T^{1,0}` frame.
pub fn classify_in_frame(spec: &ValidatedSpec, frame: &Frame) -> Result<ClassificationReport> {
    let d = spec.dims();
    let mut report = ClassificationReport {
        spec: spec.clone(),
        verdict: Verdict::LeviFlat,
        ranks: Vec::new(),
        levi: None,
        kernel: None,
        observational_d: None,
        certificates: Vec::new(),
        sigma_flag: false,
    };
    match (d.n, d.c) {
        (1, c) => classify_n1(spec, frame, c, &mut report)?,
        (2, 1) => classify_n2(spec, frame, &mut report)?,
        _ => {
            return Err(CrError::DimensionMismatch(format!("unsupported shape (n, c) = ({}, {})", d.n, d.c)));
        }
    }
    report.sigma_flag = report.ranks.iter().any(NamedRank::drops_at_point);
    if let Verdict::DegenerateProduct(k) = report.verdict {
        report.certificates.push(k.certificate().to_string());
    }
    Ok(report)
}

fn classify_n1(spec: &ValidatedSpec, frame: &Frame, c: usize, report: &mut ClassificationReport) -> Result<()> {
    let br = Brackets::new(frame);
    let r3 = bracket_rank(spec, &br, 3)?;
    let r = r3.generic.rank;
    report.ranks.push(r3);
    if r == 2 {
        report.verdict = Verdict::LeviFlat;
        return Ok(());
    }
    if c == 1 {
        report.verdict = Verdict::ClassI;
        return Ok(());
    }
    let r5 = bracket_rank(spec, &br, 5)?;
    let r4 = r5.generic.rank;
    report.ranks.push(r5);
    if c == 2 {
        if r4 == 3 {
            report.verdict = Verdict::DegenerateProduct(DegenerateKind::M3xR);
            return Ok(());
        }
        let side = bracket_rank(spec, &br, 4)?;
        let ok = side.generic.rank == 4;
        report.ranks.push(side);
        if !ok {
            return Err(CrError::Internal("{L, Lb, T, [L,T]} does not have rank 4".to_string()));
        }
        report.verdict = Verdict::ClassII;
        return check_observational(&br, report);
    }
    match r4 {
        3 => report.verdict = Verdict::DegenerateProduct(DegenerateKind::M3xR2),
        5 => report.verdict = Verdict::ClassIII1,
        4 => {
            let r6 = bracket_rank(spec, &br, 6)?;
            let r5 = r6.generic.rank;
            report.ranks.push(r6);
            if r5 == 5 {
                report.verdict = Verdict::ClassIII2;
                check_observational(&br, report)?;
            } else {
                report.verdict = Verdict::DegenerateProduct(DegenerateKind::M4xR);
            }
        }
        other => return Err(CrError::Internal(format!("unexpected bracket rank {other}"))),
    }
    Ok(())
}

fn classify_n2(spec: &ValidatedSpec, frame: &Frame, report: &mut ClassificationReport) -> Result<()> {
    let fs = cramer_frame(spec)?;
    let levi = levi_matrix_in(frame, &rho0(&fs)[0]);
    let generic = matrix_generic_rank(&levi.entries);
    let point = matrix_rank_at(&levi.entries, spec.base_point())?;
    let g = generic.rank;
    report.ranks.push(NamedRank {
        name: "levi".to_string(),
        columns: vec!["L1".into(), "L2".into()],
        rows: vec!["Lb1".into(), "Lb2".into()],
        generic,
        point,
    });
    report.levi = Some(levi);
    report.verdict = match g {
        2 => Verdict::ClassIV1,
        0 => Verdict::LeviFlat,
        _ => {
            let data = slant_k(spec)?;
            let values = spec.base_point().slot_values(spec.dims())?;
            let freeman_at_point = data.freeman.eval_slots(&values).ok();
            let nondegenerate = !data.freeman.is_zero();
            if nondegenerate {
                let at = match &freeman_at_point {
                    Some(v) if v == &GaussianRational::from_int(0) => "vanishes at the base point",
                    Some(_) => "nonzero at the base point",
                    None => "undefined at the base point",
                };
                report.certificates.push(format!("Freeman form not identically zero; {at}"));
            } else {
                report.certificates.push("Freeman form vanishes identically; k and k*A1 + A2 are CR".to_string());
            }
            report.kernel = Some(KernelReport { data, freeman_at_point });
            if nondegenerate {
                Verdict::ClassIV2
            } else {
                Verdict::DegenerateProduct(DegenerateKind::M3xC)
            }
        }
    };
    Ok(())
}

/// Rank of the iterated bracket filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullResult {
    pub rank: usize,
    /// First depth `d` whose rank equals the full dimension or is repeated at
    /// depth `d + 1`; `None` if neither was observed up to the maximal depth.
    pub stabilized_at: Option<usize>,
    /// Generic rank after each depth, starting at depth 1.
    pub per_depth: Vec<usize>,
}

/// Brackets `L_•`, `Lb_•` against the fields added at the previous depth and
/// keeps only those that raise the generic rank.
pub fn lie_hull_rank(spec: &ValidatedSpec, max_depth: usize) -> Result<HullResult> {
    if max_depth == 0 {
        return Err(CrError::DimensionMismatch("max_depth must be at least 1".to_string()));
    }
    let fs = cramer_frame(spec)?;
    Ok(lie_hull_rank_in(&fs.as_frame(), max_depth))
}

pub fn lie_hull_rank_in(frame: &Frame, max_depth: usize) -> HullResult {
    let dims = frame.l[0].dims();
    let full = dims.nvars();
    let base: Vec<VectorField> = frame.l.iter().chain(&frame.lbar).cloned().collect();
    let mut acc: Vec<VectorField> = Vec::new();
    let mut rank = 0;
    for f in &base {
        acc.push(f.clone());
        let r = generic_rank(&acc).rank;
        if r > rank {
            rank = r;
        } else {
            acc.pop();
        }
    }
    let mut per_depth = vec![rank];
    let mut frontier = base.clone();
    let mut stabilized_at = if rank == full { Some(1) } else { None };
    let mut depth = 1;
    while stabilized_at.is_none() && depth < max_depth {
        depth += 1;
        let mut added = Vec::new();
        for x in &base {
            for y in &frontier {
                let b = lie_bracket(x, y);
                if b.is_zero() {
                    continue;
                }
                acc.push(b.clone());
                let r = generic_rank(&acc).rank;
                if r > rank {
                    rank = r;
                    added.push(b);
                } else {
                    acc.pop();
                }
            }
        }
        per_depth.push(rank);
        if added.is_empty() {
            stabilized_at = Some(depth - 1);
        } else if rank == full {
            stabilized_at = Some(depth);
        }
        frontier = added;
    }
    HullResult { rank, stabilized_at, per_depth }
}
