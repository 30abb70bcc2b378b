//! JSON documents for tensors, frames and bases.
//!
//! A tensor document looks like
//! `{"dim": 3, "slots": ["up","down"], "weight": 0, "components": [[..],[..],[..]]}`
//! with slot 0 as the outermost array. A rank-0 object stores a bare number.

use serde_json::{json, Map, Value};

use crate::error::DocumentError;
use crate::frames::{frame_from_matrix, Frame};
use crate::tensor::{TensorObject, Variance};

type Result<T> = std::result::Result<T, DocumentError>;

fn field_err(field: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| field_err("<root>", "expected a JSON object"))
}

fn get<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Value> {
    obj.get(field).ok_or_else(|| field_err(field, "missing"))
}

fn read_dim(obj: &Map<String, Value>) -> Result<usize> {
    let v = get(obj, "dim")?;
    match v.as_u64() {
        Some(d) if d >= 1 => Ok(d as usize),
        _ => Err(field_err("dim", format!("expected a positive integer, got {v}"))),
    }
}

fn read_number(v: &Value, field: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| field_err(field, format!("expected a number, got {v}")))
}

/// Flattens a nested array of the given depth, each level of length `dim`.
fn flatten(v: &Value, dim: usize, depth: usize, path: &mut String, out: &mut Vec<f64>) -> Result<()> {
    if depth == 0 {
        if v.is_array() {
            return Err(field_err(path, "nesting deeper than the rank"));
        }
        out.push(read_number(v, path)?);
        return Ok(());
    }
    let items = v.as_array().ok_or_else(|| {
        field_err(
            path,
            format!("expected an array at nesting depth {depth}, got {v}"),
        )
    })?;
    if items.len() != dim {
        return Err(field_err(
            path,
            format!("expected length {dim}, got {}", items.len()),
        ));
    }
    let base = path.len();
    for (k, item) in items.iter().enumerate() {
        path.push_str(&format!("[{k}]"));
        flatten(item, dim, depth - 1, path, out)?;
        path.truncate(base);
    }
    Ok(())
}

fn read_matrix(obj: &Map<String, Value>, field: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut flat = Vec::with_capacity(dim * dim);
    flatten(get(obj, field)?, dim, 2, &mut field.to_string(), &mut flat)?;
    Ok(flat.chunks(dim).map(|r| r.to_vec()).collect())
}

pub fn tensor_from_value(v: &Value) -> Result<TensorObject> {
    let obj = object(v)?;
    let dim = read_dim(obj)?;
    let slots = get(obj, "slots")?
        .as_array()
        .ok_or_else(|| field_err("slots", "expected an array"))?
        .iter()
        .map(|s| match s.as_str() {
            Some("up") => Ok(Variance::Up),
            Some("down") => Ok(Variance::Down),
            _ => Err(field_err(
                "slots",
                format!("expected \"up\" or \"down\", got {s}"),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    let weight = match obj.get("weight") {
        None => 0,
        Some(w) => w
            .as_i64()
            .and_then(|w| i32::try_from(w).ok())
            .ok_or_else(|| field_err("weight", format!("expected an integer, got {w}")))?,
    };
    let mut comps = Vec::new();
    flatten(
        get(obj, "components")?,
        dim,
        slots.len(),
        &mut "components".to_string(),
        &mut comps,
    )?;
    Ok(TensorObject::new(dim, slots, weight, comps)?)
}

pub fn parse_tensor(text: &str) -> Result<TensorObject> {
    tensor_from_value(&parse_json(text)?)
}

/// Formats with 17 significant digits so that parsing recovers the value.
struct Exact(f64);

fn nest(comps: &[f64], dim: usize, depth: usize, out: &mut String) {
    if depth == 0 {
        out.push_str(&format_number(comps[0]));
        return;
    }
    let chunk = comps.len() / dim;
    out.push('[');
    for k in 0..dim {
        if k > 0 {
            out.push_str(", ");
        }
        nest(&comps[k * chunk..(k + 1) * chunk], dim, depth - 1, out);
    }
    out.push(']');
}

pub fn format_number(v: f64) -> String {
    Exact(v).to_string()
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.0;
        if !v.is_finite() {
            // JSON has no literal for these
            return f.write_str("null");
        }
        if v == v.trunc() && v.abs() < 1e15 {
            return write!(f, "{v:.1}");
        }
        write!(f, "{v:.16e}")
    }
}

/// Serialises a tensor document. The output ends with a newline.
pub fn tensor_to_string(t: &TensorObject) -> String {
    let slots: Vec<Value> = t.slots().iter().map(|v| json!(v.as_str())).collect();
    let mut comps = String::new();
    nest(t.components(), t.dim(), t.rank(), &mut comps);
    format!(
        "{{\"dim\": {}, \"slots\": {}, \"weight\": {}, \"components\": {}}}\n",
        t.dim(),
        Value::Array(slots),
        t.weight(),
        comps
    )
}

/// Reads `{"dim": d, "c": [[..]]}` where `c[r][s] = c^r_s`.
pub fn parse_frame(text: &str) -> Result<Frame> {
    let v = parse_json(text)?;
    let obj = object(&v)?;
    let dim = read_dim(obj)?;
    let rows = read_matrix(obj, "c", dim)?;
    let c = TensorObject::from_rows([Variance::Up, Variance::Down], &rows)?;
    Ok(frame_from_matrix(&c)?)
}

pub fn frame_to_string(f: &Frame) -> String {
    let mut c = String::new();
    nest(f.c().components(), f.dim(), 2, &mut c);
    format!("{{\"dim\": {}, \"c\": {}}}\n", f.dim(), c)
}

/// Reads `{"dim": d, "vectors": [[..]]}` into contravariant vectors given in
/// an orthonormal reference frame.
pub fn parse_basis(text: &str) -> Result<Vec<TensorObject>> {
    let v = parse_json(text)?;
    let obj = object(&v)?;
    let dim = read_dim(obj)?;
    let rows = read_matrix(obj, "vectors", dim)?;
    rows.iter()
        .map(|r| Ok(TensorObject::vector(Variance::Up, r)?))
        .collect()
}

/// Accepts either one tensor document (returned under `None`) or an object
/// mapping names to tensor documents.
pub fn parse_bindings(text: &str) -> Result<Vec<(Option<String>, TensorObject)>> {
    let v = parse_json(text)?;
    let obj = object(&v)?;
    if obj.contains_key("dim") {
        return Ok(vec![(None, tensor_from_value(&v)?)]);
    }
    obj.iter()
        .map(|(name, doc)| {
            let t = tensor_from_value(doc).map_err(|e| match e {
                DocumentError::Field { field, message } => field_err(&format!("{name}.{field}"), message),
                other => other,
            })?;
            Ok((Some(name.clone()), t))
        })
        .collect()
}
