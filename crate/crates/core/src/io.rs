//! JSON encodings of the library's values.
//!
//! Every scalar is a decimal string, so values survive a round trip at the
//! precision they were written with. Complex numbers are `[re, im]` pairs;
//! polynomial coefficients are listed from the constant term up.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::forms::{CubicForm, LinearSubspace, QuadraticForm};
use crate::numerics::scalar::{Complex, Float};
use crate::numerics::UniPoly;
use crate::pipeline::{ReductionKind, ReductionReport, ReductionTrace, TRACE_VERSION};
use crate::trace::TraceStage;
use crate::tschirnhaus::{TransformedEquation, TschirnhausMap};

fn bad(what: &str) -> Error {
    Error::InvalidInput(format!("malformed JSON: {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(&format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(&format!("{what} must be an array")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(&format!("{what} must be a non-negative integer")))
}

fn float_to_string(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    // enough digits to round-trip at the value's precision, minus the
    // trailing zeros, which carry nothing
    let s = x.to_string_radix(10, None);
    let (mantissa, exponent) = match s.find('e') {
        Some(i) => s.split_at(i),
        None => (s.as_str(), ""),
    };
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}{exponent}")
}

fn float_from_str(s: &str, prec: u32) -> Result<Float> {
    let parsed = Float::parse(s).map_err(|e| bad(&format!("bad decimal \"{s}\": {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

pub fn complex_to_json(z: &Complex) -> Value {
    json!([float_to_string(z.real()), float_to_string(z.imag())])
}

pub fn complex_from_json(v: &Value, prec: u32) -> Result<Complex> {
    let pair = array(v, "complex scalar")?;
    let part = |i: usize| -> Result<Float> {
        let s = pair
            .get(i)
            .and_then(Value::as_str)
            .ok_or_else(|| bad("complex scalar must be [re_string, im_string]"))?;
        float_from_str(s, prec)
    };
    if pair.len() != 2 {
        return Err(bad("complex scalar must have two parts"));
    }
    Ok(Complex::with_val(prec, (part(0)?, part(1)?)))
}

fn complexes_to_json(zs: &[Complex]) -> Value {
    Value::Array(zs.iter().map(complex_to_json).collect())
}

fn complexes_from_json(v: &Value, prec: u32, what: &str) -> Result<Vec<Complex>> {
    array(v, what)?
        .iter()
        .map(|z| complex_from_json(z, prec))
        .collect()
}

fn f64_to_json(x: f64) -> Value {
    Value::String(format!("{x:e}"))
}

fn f64_from_json(v: &Value, what: &str) -> Result<f64> {
    v.as_str()
        .and_then(|s| s.parse::<f64>().ok())
        .ok_or_else(|| bad(&format!("{what} must be a decimal string")))
}

pub fn poly_to_json(p: &UniPoly) -> Value {
    json!({ "degree": p.degree(), "coeffs": complexes_to_json(p.coeffs()) })
}

pub fn poly_from_json(v: &Value, prec: u32) -> Result<UniPoly> {
    let degree = usize_of(field(v, "degree")?, "degree")?;
    let coeffs = complexes_from_json(field(v, "coeffs")?, prec, "coeffs")?;
    if coeffs.len() != degree + 1 {
        return Err(bad(&format!(
            "degree {degree} needs {} coefficients, got {}",
            degree + 1,
            coeffs.len()
        )));
    }
    if coeffs[degree].is_zero() {
        return Err(bad("leading coefficient is zero"));
    }
    Ok(UniPoly::new(coeffs))
}

pub fn map_to_json(m: &TschirnhausMap) -> Value {
    json!({ "n": m.n(), "t": complexes_to_json(m.t()) })
}

pub fn map_from_json(v: &Value, prec: u32) -> Result<TschirnhausMap> {
    let n = usize_of(field(v, "n")?, "n")?;
    TschirnhausMap::new(n, complexes_from_json(field(v, "t")?, prec, "t")?)
}

pub fn transformed_to_json(te: &TransformedEquation) -> Value {
    json!({
        "source": poly_to_json(&te.source),
        "map": map_to_json(&te.map),
        "result": poly_to_json(&te.result),
        "c": complexes_to_json(&te.c),
    })
}

pub fn quadratic_to_json(q: &QuadraticForm) -> Value {
    let rows: Vec<Value> = q.matrix().iter().map(|r| complexes_to_json(r)).collect();
    json!({ "dim": q.dim(), "matrix": rows })
}

pub fn quadratic_from_json(v: &Value, prec: u32) -> Result<QuadraticForm> {
    let dim = usize_of(field(v, "dim")?, "dim")?;
    let rows = array(field(v, "matrix")?, "matrix")?;
    let matrix = rows
        .iter()
        .map(|r| complexes_from_json(r, prec, "matrix row"))
        .collect::<Result<Vec<_>>>()?;
    if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
        return Err(bad(&format!("matrix must be {dim} x {dim}")));
    }
    Ok(QuadraticForm::new(matrix))
}

/// Nonzero entries only, as `[i, j, k, [re, im]]` with `i <= j <= k`.
pub fn cubic_to_json(c: &CubicForm) -> Value {
    let entries: Vec<Value> = c
        .entries()
        .filter(|(_, _, _, z)| !z.is_zero())
        .map(|(i, j, k, z)| json!([i, j, k, complex_to_json(z)]))
        .collect();
    json!({ "dim": c.dim(), "entries": entries })
}

pub fn cubic_from_json(v: &Value, prec: u32) -> Result<CubicForm> {
    let dim = usize_of(field(v, "dim")?, "dim")?;
    if dim == 0 {
        return Err(bad("cubic form needs dim >= 1"));
    }
    let mut form = CubicForm::zero(dim, prec);
    let mut seen = std::collections::BTreeSet::new();
    for e in array(field(v, "entries")?, "entries")? {
        let e = array(e, "cubic entry")?;
        if e.len() != 4 {
            return Err(bad("cubic entry must be [i, j, k, [re, im]]"));
        }
        let mut idx = [0usize; 3];
        for (slot, x) in idx.iter_mut().zip(e) {
            *slot = usize_of(x, "cubic index")?;
            if *slot >= dim {
                return Err(bad(&format!(
                    "cubic index {slot} out of range for dim {dim}"
                )));
            }
        }
        idx.sort_unstable();
        if !seen.insert(idx) {
            return Err(bad(&format!("duplicate cubic entry {idx:?}")));
        }
        form.set(idx[0], idx[1], idx[2], complex_from_json(&e[3], prec)?);
    }
    Ok(form)
}

pub fn subspace_to_json(s: &LinearSubspace) -> Value {
    let mut obj = Map::new();
    obj.insert("ambient_dim".into(), json!(s.ambient_dim()));
    obj.insert(
        "basis".into(),
        Value::Array(s.basis().iter().map(|b| complexes_to_json(b)).collect()),
    );
    if let Some(p) = s.base_point() {
        obj.insert("base_point".into(), complexes_to_json(p));
    }
    Value::Object(obj)
}

pub fn subspace_from_json(v: &Value, prec: u32) -> Result<LinearSubspace> {
    let m = usize_of(field(v, "ambient_dim")?, "ambient_dim")?;
    let basis = array(field(v, "basis")?, "basis")?
        .iter()
        .map(|b| complexes_from_json(b, prec, "basis vector"))
        .collect::<Result<Vec<_>>>()?;
    let base_point = match v.get("base_point") {
        None | Some(Value::Null) => None,
        Some(p) => Some(complexes_from_json(p, prec, "base_point")?),
    };
    LinearSubspace::new(m, basis, base_point)
}

pub fn stage_to_json(s: &TraceStage) -> Value {
    json!({
        "name": s.name,
        "auxiliary_degree": s.auxiliary_degree,
        "residual": f64_to_json(s.residual),
        "subspace_dims": s.subspace_dims.map(|(a, b)| json!([a, b])),
        "seed_used": s.seed_used,
    })
}

pub fn stage_from_json(v: &Value) -> Result<TraceStage> {
    let name = field(v, "name")?
        .as_str()
        .ok_or_else(|| bad("stage name must be a string"))?;
    let auxiliary_degree = match field(v, "auxiliary_degree")? {
        Value::Null => None,
        d => Some(usize_of(d, "auxiliary_degree")?),
    };
    let subspace_dims = match v.get("subspace_dims") {
        None | Some(Value::Null) => None,
        Some(d) => {
            let d = array(d, "subspace_dims")?;
            if d.len() != 2 {
                return Err(bad("subspace_dims must be [from, to]"));
            }
            Some((
                usize_of(&d[0], "subspace_dims")?,
                usize_of(&d[1], "subspace_dims")?,
            ))
        }
    };
    Ok(TraceStage {
        name: name.to_string(),
        auxiliary_degree,
        residual: f64_from_json(field(v, "residual")?, "residual")?,
        subspace_dims,
        seed_used: field(v, "seed_used")?
            .as_u64()
            .ok_or_else(|| bad("seed_used must be an integer"))?,
    })
}

pub fn stages_to_json(stages: &[TraceStage]) -> Value {
    Value::Array(stages.iter().map(stage_to_json).collect())
}

pub fn stages_from_json(v: &Value) -> Result<Vec<TraceStage>> {
    array(v, "stages")?.iter().map(stage_from_json).collect()
}

pub fn report_to_json(r: &ReductionReport) -> Value {
    json!({
        "trace_version": TRACE_VERSION,
        "kind": r.kind.name(),
        "seed": r.seed,
        "precision_bits": r.precision_bits,
        "input": poly_to_json(&r.input),
        "trace": {
            "stages": stages_to_json(&r.trace.stages),
            "final_map": map_to_json(&r.trace.final_map),
            "final_poly": poly_to_json(&r.trace.final_poly),
            "scale_factor": complex_to_json(&r.trace.scale_factor),
        },
        "vanished": r.vanished.iter().map(|x| f64_to_json(*x)).collect::<Vec<_>>(),
        "parameter_count": r.parameter_count,
        "root_residuals": r.root_residuals.iter().map(|x| f64_to_json(*x)).collect::<Vec<_>>(),
    })
}

/// Reads a report at the precision recorded in it.
pub fn report_from_json(v: &Value) -> Result<ReductionReport> {
    let version = field(v, "trace_version")?.as_u64();
    if version != Some(TRACE_VERSION as u64) {
        return Err(bad(&format!(
            "unsupported trace_version {version:?}, expected {TRACE_VERSION}"
        )));
    }
    let kind_name = field(v, "kind")?
        .as_str()
        .ok_or_else(|| bad("kind must be a string"))?;
    let kind = ReductionKind::from_name(kind_name)
        .ok_or_else(|| bad(&format!("unknown kind \"{kind_name}\"")))?;
    let precision_bits = usize_of(field(v, "precision_bits")?, "precision_bits")? as u32;
    crate::numerics::scalar::check_precision(precision_bits)?;
    let prec = precision_bits;
    let trace = field(v, "trace")?;
    let f64_list = |key: &str| -> Result<Vec<f64>> {
        array(field(v, key)?, key)?
            .iter()
            .map(|x| f64_from_json(x, key))
            .collect()
    };
    Ok(ReductionReport {
        kind,
        seed: field(v, "seed")?
            .as_u64()
            .ok_or_else(|| bad("seed must be an integer"))?,
        precision_bits,
        input: poly_from_json(field(v, "input")?, prec)?,
        trace: ReductionTrace {
            stages: stages_from_json(field(trace, "stages")?)?,
            final_map: map_from_json(field(trace, "final_map")?, prec)?,
            final_poly: poly_from_json(field(trace, "final_poly")?, prec)?,
            scale_factor: complex_from_json(field(trace, "scale_factor")?, prec)?,
        },
        vanished: f64_list("vanished")?,
        parameter_count: usize_of(field(v, "parameter_count")?, "parameter_count")?,
        root_residuals: f64_list("root_residuals")?,
    })
}
