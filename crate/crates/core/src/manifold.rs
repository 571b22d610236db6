//! Manifold specifications: graphing functions `v_j = phi_j(z, zb, u)`, the
//! base point, the JSON file format, and validation.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::linalg;
use crate::parser::{parse_number, parse_with_dims};
use crate::poly::{Dims, VarId};

/// The `(n, c)` shapes with `2n + c <= 5`.
pub const SUPPORTED_SHAPES: [(usize, usize); 4] = [(1, 1), (1, 2), (1, 3), (2, 1)];

/// A point of M given by its `z` and `u` coordinates; `zb` is always the
/// conjugate of `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointAssignment {
    pub z: Vec<GaussianRational>,
    pub u: Vec<BigRational>,
}

impl PointAssignment {
    pub fn origin(dims: Dims) -> Self {
        PointAssignment { z: vec![GaussianRational::zero(); dims.n], u: vec![BigRational::zero(); dims.c] }
    }

    /// Values per slot, in variable layout order.
    pub fn slot_values(&self, dims: Dims) -> Result<Vec<GaussianRational>> {
        if self.z.len() != dims.n || self.u.len() != dims.c {
            return Err(CrError::DimensionMismatch(format!(
                "point has {} z and {} u entries, expected {} and {}",
                self.z.len(),
                self.u.len(),
                dims.n,
                dims.c
            )));
        }
        let mut v: Vec<GaussianRational> = self.z.clone();
        v.extend(self.z.iter().map(|z| z.conj()));
        v.extend(self.u.iter().cloned().map(GaussianRational::from_real));
        Ok(v)
    }

    pub fn is_origin(&self) -> bool {
        self.z.iter().all(|z| z.is_zero()) && self.u.iter().all(|u| u.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldSpec {
    pub n: usize,
    pub c: usize,
    pub phi: Vec<RationalExpr>,
    pub base_point: PointAssignment,
}

impl ManifoldSpec {
    pub fn new(n: usize, c: usize, phi: Vec<RationalExpr>) -> Self {
        ManifoldSpec { n, c, phi, base_point: PointAssignment::origin(Dims::new(n, c)) }
    }

    /// Parses each graphing function from text.
    pub fn parse(n: usize, c: usize, phi: &[&str]) -> Result<Self> {
        let dims = Dims::new(n, c);
        let phi = phi.iter().map(|s| parse_with_dims(s, dims)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(n, c, phi))
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.n, self.c)
    }

    pub fn with_point(mut self, p: PointAssignment) -> Self {
        self.base_point = p;
        self
    }
}

/// A spec that passed [`validate_manifold`], plus non-fatal warnings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedSpec {
    spec: ManifoldSpec,
    warnings: Vec<String>,
}

impl ValidatedSpec {
    pub fn spec(&self) -> &ManifoldSpec {
        &self.spec
    }

    pub fn dims(&self) -> Dims {
        self.spec.dims()
    }

    pub fn phi(&self) -> &[RationalExpr] {
        &self.spec.phi
    }

    pub fn base_point(&self) -> &PointAssignment {
        &self.spec.base_point
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Same manifold, different base point (revalidated).
    pub fn at_point(&self, p: PointAssignment) -> Result<ValidatedSpec> {
        validate_manifold(self.spec.clone().with_point(p))
    }
}

/// `i·I_c + Phi_u`, the matrix of the frame system.
pub fn frame_matrix(dims: Dims, phi: &[RationalExpr]) -> Vec<Vec<RationalExpr>> {
    (0..dims.c)
        .map(|j| {
            (0..dims.c)
                .map(|l| {
                    let d = phi[j].diff(VarId::u(l + 1));
                    if j == l {
                        &d + &RationalExpr::i(dims)
                    } else {
                        d
                    }
                })
                .collect()
        })
        .collect()
}

pub fn validate_manifold(spec: ManifoldSpec) -> Result<ValidatedSpec> {
    let dims = spec.dims();
    if !SUPPORTED_SHAPES.contains(&(spec.n, spec.c)) {
        return Err(CrError::DimensionMismatch(format!(
            "(n, c) = ({}, {}) is not one of (1,1), (1,2), (1,3), (2,1)",
            spec.n, spec.c
        )));
    }
    if spec.phi.len() != spec.c {
        return Err(CrError::DimensionMismatch(format!(
            "{} graphing functions for codimension {}",
            spec.phi.len(),
            spec.c
        )));
    }
    for (j, f) in spec.phi.iter().enumerate() {
        if f.dims() != dims {
            return Err(CrError::DimensionMismatch(format!(
                "phi[{}] built for {:?}, expected {:?}",
                j + 1,
                f.dims(),
                dims
            )));
        }
    }
    let values = spec.base_point.slot_values(dims)?;
    for (j, f) in spec.phi.iter().enumerate() {
        if !f.is_real() {
            return Err(CrError::RealityViolation { index: j + 1 });
        }
    }
    let mut warnings = Vec::new();
    for (j, f) in spec.phi.iter().enumerate() {
        let v = f.eval_slots(&values)?;
        if !v.is_zero() {
            warnings.push(format!("phi[{}] = {} at the base point (not normalized to 0)", j + 1, v));
        }
        for var in dims.vars() {
            let dv = f.diff(var).eval_slots(&values)?;
            if !dv.is_zero() {
                warnings.push(format!("d phi[{}]/d{} = {} at the base point (dphi != 0)", j + 1, var, dv));
            }
        }
    }
    let det = linalg::det(&frame_matrix(dims, &spec.phi));
    if det.is_zero() {
        return Err(CrError::FrameSingular("vanishes identically".to_string()));
    }
    match det.eval_slots(&values) {
        Ok(v) if v.is_zero() => return Err(CrError::FrameSingular("vanishes at the base point".to_string())),
        Err(CrError::Pole { .. }) => return Err(CrError::FrameSingular("has a pole at the base point".to_string())),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    Ok(ValidatedSpec { spec, warnings })
}

/// On-disk manifold description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub n: usize,
    pub c: usize,
    pub phi: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub z: Vec<String>,
    pub u: Vec<String>,
}

impl PointFile {
    pub fn to_point(&self) -> Result<PointAssignment> {
        let z = self.z.iter().map(|s| parse_number(s)).collect::<Result<Vec<_>>>()?;
        let u = self
            .u
            .iter()
            .map(|s| {
                let v = parse_number(s)?;
                if !v.is_real() {
                    return Err(CrError::Format(format!("u-coordinate `{s}` is not real")));
                }
                Ok(v.re().clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointAssignment { z, u })
    }

    pub fn from_point(p: &PointAssignment) -> Self {
        PointFile {
            z: p.z.iter().map(|z| z.to_string()).collect(),
            u: p.u.iter().map(|u| GaussianRational::from_real(u.clone()).to_string()).collect(),
        }
    }
}

impl ManifoldFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CrError::Format(e.to_string()))
    }

    pub fn to_spec(&self) -> Result<ManifoldSpec> {
        if !SUPPORTED_SHAPES.contains(&(self.n, self.c)) {
            return Err(CrError::DimensionMismatch(format!(
                "(n, c) = ({}, {}) is not one of (1,1), (1,2), (1,3), (2,1)",
                self.n, self.c
            )));
        }
        let dims = Dims::new(self.n, self.c);
        let phi = self.phi.iter().map(|s| parse_with_dims(s, dims)).collect::<Result<Vec<_>>>()?;
        let mut spec = ManifoldSpec::new(self.n, self.c, phi);
        if let Some(p) = &self.point {
            spec.base_point = p.to_point()?;
        }
        Ok(spec)
    }

    /// Canonical echo of a spec: expressions and numbers in printed form.
    pub fn from_spec(spec: &ManifoldSpec) -> Self {
        ManifoldFile {
            n: spec.n,
            c: spec.c,
            phi: spec.phi.iter().map(|p| p.to_string()).collect(),
            point: Some(PointFile::from_point(&spec.base_point)),
        }
    }
}

/// Reads, parses and validates a manifold JSON document.
pub fn load_manifold(text: &str) -> Result<ValidatedSpec> {
    validate_manifold(ManifoldFile::from_json(text)?.to_spec()?)
}
