//! Audit records of the auxiliary equations solved during a reduction.

use crate::error::{Error, Result};
use crate::numerics::scalar::{self, Complex, Float};
use crate::numerics::{roots, UniPoly};

/// One step of a reduction. Stages that only do linear algebra carry no
/// auxiliary degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStage {
    pub name: String,
    pub auxiliary_degree: Option<usize>,
    /// Relative residual of whatever the stage certifies.
    pub residual: f64,
    pub subspace_dims: Option<(usize, usize)>,
    pub seed_used: u64,
}

impl TraceStage {
    pub fn auxiliary(name: &str, degree: usize, residual: f64, seed_used: u64) -> Self {
        TraceStage {
            name: name.to_string(),
            auxiliary_degree: Some(degree),
            residual,
            subspace_dims: None,
            seed_used,
        }
    }

    pub fn linear(name: &str, residual: f64, dims: (usize, usize), seed_used: u64) -> Self {
        TraceStage {
            name: name.to_string(),
            auxiliary_degree: None,
            residual,
            subspace_dims: Some(dims),
            seed_used,
        }
    }
}

/// Roots of an auxiliary equation together with its certified degree.
#[derive(Clone, Debug)]
pub struct Auxiliary {
    pub degree: usize,
    pub roots: Vec<Complex>,
    /// Worst relative backward error `|p(r)| / sum |c_i| |r|^i`.
    pub residual: f64,
}

/// Solves an auxiliary equation of expected degree `degree`.
///
/// The leading coefficient must stand clear of zero relative to the other
/// coefficients; a drop in degree means the random choices that produced
/// the equation were not generic, and is reported as degenerate so the
/// caller can redraw them.
pub fn solve_auxiliary(stage: &str, p: &UniPoly, degree: usize, prec: u32) -> Result<Auxiliary> {
    assert_eq!(
        p.degree(),
        degree,
        "auxiliary equation has the wrong formal degree"
    );
    let scale = p.scale();
    let floor = Float::with_val(prec, scalar::pow2(prec, -((prec / 4) as i32)) * &scale);
    if scale.is_zero() || scalar::abs(p.leading()) <= floor {
        return Err(Error::degenerate(
            stage,
            1,
            format!("degree-{degree} auxiliary equation lost its leading term"),
        ));
    }
    let rs = roots(p, prec).map_err(|e| match e {
        Error::NonSquarefree { .. } => {
            Error::degenerate(stage, 1, "auxiliary equation has a repeated root")
        }
        other => other,
    })?;
    let residual = rs
        .roots
        .iter()
        .map(|r| scalar::ratio(&scalar::abs(&p.eval(r)), &p.eval_abs(r)))
        .fold(0.0, f64::max);
    Ok(Auxiliary {
        degree,
        roots: rs.roots,
        residual,
    })
}
