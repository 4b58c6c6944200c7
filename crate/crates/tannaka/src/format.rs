//! Category Bundle v1: a JSON document describing a concrete tensor *-category.
//!
//! Matrices are `{"rows": r, "cols": c, "data": [[re, im], ...]}` in row-major order and
//! vectors are `{"len": n, "data": [[re, im], ...]}`. Scalars are written in shortest
//! round-trip form, so a parse of the serialized text reproduces every bit.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use tannaka_core::bundle::{CategoryBundle, Conj};
use tannaka_core::{CMatrix, C64};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    /// Malformed JSON, or a value of the wrong kind at `path`.
    #[error("syntax error at {}{path}: {message}", line.map(|l| format!("line {l}, ")).unwrap_or_default())]
    Syntax { line: Option<usize>, path: String, message: String },
    /// Well-formed document whose sizes disagree.
    #[error("shape error: {0}")]
    Shape(String),
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line: None, path: path.to_string(), message: message.into() }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| syntax(path, format!("missing field \"{key}\"")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| syntax(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| syntax(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| syntax(path, "expected a string"))
}

fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| syntax(path, "expected a non-negative integer"))
}

fn scalar(v: &Value, path: &str) -> Result<C64> {
    let pair = array(v, path)?;
    let part = |k: usize| pair.get(k).and_then(Value::as_f64);
    match (pair.len(), part(0), part(1)) {
        (2, Some(re), Some(im)) => Ok(C64::new(re, im)),
        _ => Err(syntax(path, "expected [re, im]")),
    }
}

fn entries(v: &Value, path: &str) -> Result<Vec<C64>> {
    let data = array(v, path)?;
    data.iter().enumerate().map(|(k, x)| scalar(x, &format!("{path}[{k}]"))).collect()
}

fn matrix(v: &Value, path: &str) -> Result<CMatrix> {
    let o = object(v, path)?;
    let rows = count(field(o, "rows", path)?, &format!("{path}.rows"))?;
    let cols = count(field(o, "cols", path)?, &format!("{path}.cols"))?;
    let data = entries(field(o, "data", path)?, &format!("{path}.data"))?;
    if data.len() != rows * cols {
        return Err(FormatError::Shape(format!("{path}: {} entries for a {rows}x{cols} matrix", data.len())));
    }
    Ok(CMatrix::from_vec(rows, cols, data))
}

fn vector(v: &Value, path: &str) -> Result<Vec<C64>> {
    let o = object(v, path)?;
    let len = count(field(o, "len", path)?, &format!("{path}.len"))?;
    let data = entries(field(o, "data", path)?, &format!("{path}.data"))?;
    if data.len() != len {
        return Err(FormatError::Shape(format!("{path}: {} entries for length {len}", data.len())));
    }
    Ok(data)
}

fn encode_scalars(d: &[C64]) -> Value {
    Value::Array(d.iter().map(|z| json!([z.re, z.im])).collect())
}

fn encode_matrix(m: &CMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "data": encode_scalars(m.data()) })
}

fn encode_vector(v: &[C64]) -> Value {
    json!({ "len": v.len(), "data": encode_scalars(v) })
}

pub fn matrix_json(m: &CMatrix) -> Value {
    encode_matrix(m)
}

pub fn matrix_from_json(v: &Value) -> Result<CMatrix> {
    matrix(v, "$")
}

/// Parse and structurally check a bundle. Mathematical validation is separate.
pub fn parse_bundle(text: &str) -> Result<CategoryBundle> {
    let doc: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: Some(e.line()),
        path: "$".into(),
        message: e.to_string(),
    })?;
    let top = object(&doc, "$")?;
    let version = count(field(top, "version", "$")?, "$.version")?;
    if version as u64 != VERSION {
        return Err(syntax("$.version", format!("unsupported version {version}")));
    }
    let labels: Vec<String> = array(field(top, "labels", "$")?, "$.labels")?
        .iter()
        .enumerate()
        .map(|(k, l)| string(l, &format!("$.labels[{k}]")).map(str::to_string))
        .collect::<Result<_>>()?;
    let index = |name: &str, path: &str| -> Result<usize> {
        labels.iter().position(|l| l == name).ok_or_else(|| FormatError::Shape(format!("{path}: unknown label \"{name}\"")))
    };
    let unit = index(string(field(top, "unit", "$")?, "$.unit")?, "$.unit")?;

    let per_label = |key: &str| -> Result<&Map<String, Value>> {
        let o = object(field(top, key, "$")?, &format!("$.{key}"))?;
        for name in o.keys() {
            index(name, &format!("$.{key}"))?;
        }
        Ok(o)
    };
    let dims_o = per_label("dims")?;
    let dual_o = per_label("dual")?;
    let conj_o = per_label("conj")?;
    let mut dims = Vec::new();
    let mut dual = Vec::new();
    let mut conj = Vec::new();
    for l in &labels {
        let p = format!("$.dims.{l}");
        dims.push(count(dims_o.get(l).ok_or_else(|| FormatError::Shape(format!("{p} missing")))?, &p)?);
        let p = format!("$.dual.{l}");
        let d = dual_o.get(l).ok_or_else(|| FormatError::Shape(format!("{p} missing")))?;
        dual.push(index(string(d, &p)?, &p)?);
        let p = format!("$.conj.{l}");
        let c = object(conj_o.get(l).ok_or_else(|| FormatError::Shape(format!("{p} missing")))?, &p)?;
        conj.push(Conj {
            r: vector(field(c, "r", &p)?, &format!("{p}.r"))?,
            rbar: vector(field(c, "rbar", &p)?, &format!("{p}.rbar"))?,
        });
    }
    let closed = field(top, "closed", "$")?.as_bool().ok_or_else(|| syntax("$.closed", "expected a boolean"))?;

    let mut fusion = BTreeMap::new();
    for (n, e) in array(field(top, "fusion", "$")?, "$.fusion")?.iter().enumerate() {
        let p = format!("$.fusion[{n}]");
        let o = object(e, &p)?;
        let lab = |key: &str| -> Result<usize> {
            let kp = format!("{p}.{key}");
            index(string(field(o, key, &p)?, &kp)?, &kp)
        };
        let key = (lab("i")?, lab("j")?, lab("k")?);
        let isos = array(field(o, "isometries", &p)?, &format!("{p}.isometries"))?
            .iter()
            .enumerate()
            .map(|(a, m)| matrix(m, &format!("{p}.isometries[{a}]")))
            .collect::<Result<Vec<_>>>()?;
        if fusion.insert(key, isos).is_some() {
            return Err(FormatError::Shape(format!("{p}: duplicate triple")));
        }
    }

    let braiding = match top.get("braiding") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let mut m = BTreeMap::new();
            for (n, e) in array(v, "$.braiding")?.iter().enumerate() {
                let p = format!("$.braiding[{n}]");
                let o = object(e, &p)?;
                let lab = |key: &str| -> Result<usize> {
                    let kp = format!("{p}.{key}");
                    index(string(field(o, key, &p)?, &kp)?, &kp)
                };
                let key = (lab("i")?, lab("j")?);
                if m.insert(key, matrix(field(o, "c", &p)?, &format!("{p}.c"))?).is_some() {
                    return Err(FormatError::Shape(format!("{p}: duplicate pair")));
                }
            }
            Some(m)
        }
    };

    let b = CategoryBundle { labels, unit, dims, dual, fusion, conj, braiding, closed };
    b.check_structure().map_err(|e| FormatError::Shape(e.to_string()))?;
    Ok(b)
}

pub fn bundle_json(b: &CategoryBundle) -> Value {
    let l = |i: usize| Value::String(b.labels[i].clone());
    let mut dims = Map::new();
    let mut dual = Map::new();
    let mut conj = Map::new();
    for (i, name) in b.labels.iter().enumerate() {
        dims.insert(name.clone(), json!(b.dims[i]));
        dual.insert(name.clone(), l(b.dual[i]));
        conj.insert(name.clone(), json!({ "r": encode_vector(&b.conj[i].r), "rbar": encode_vector(&b.conj[i].rbar) }));
    }
    let fusion: Vec<Value> = b
        .fusion
        .iter()
        .map(|(&(i, j, k), isos)| {
            json!({ "i": l(i), "j": l(j), "k": l(k), "isometries": isos.iter().map(encode_matrix).collect::<Vec<_>>() })
        })
        .collect();
    let mut top = Map::new();
    top.insert("version".into(), json!(VERSION));
    top.insert("labels".into(), json!(b.labels));
    top.insert("unit".into(), l(b.unit));
    top.insert("dims".into(), Value::Object(dims));
    top.insert("dual".into(), Value::Object(dual));
    top.insert("closed".into(), json!(b.closed));
    top.insert("fusion".into(), Value::Array(fusion));
    top.insert("conj".into(), Value::Object(conj));
    if let Some(br) = &b.braiding {
        let list: Vec<Value> =
            br.iter().map(|(&(i, j), c)| json!({ "i": l(i), "j": l(j), "c": encode_matrix(c) })).collect();
        top.insert("braiding".into(), Value::Array(list));
    }
    Value::Object(top)
}

pub fn serialize_bundle(b: &CategoryBundle) -> String {
    let mut s = serde_json::to_string_pretty(&bundle_json(b)).expect("bundle values are finite JSON");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use tannaka_core::examples::{gen_finite_group, gen_pointed, gen_suq2, GroupPresentation};

    fn bits(b: &CategoryBundle) -> Vec<u64> {
        let mut out = Vec::new();
        let mut push = |d: &[C64]| out.extend(d.iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]));
        for m in b.fusion.values().flatten() {
            push(m.data());
        }
        for c in &b.conj {
            push(&c.r);
            push(&c.rbar);
        }
        for m in b.braiding.iter().flat_map(|x| x.values()) {
            push(m.data());
        }
        out
    }

    #[test]
    fn roundtrips_are_bit_exact() {
        let s3 = gen_finite_group(&GroupPresentation::s3().unwrap(), true).unwrap();
        for b in [gen_pointed(1, 0).unwrap(), gen_pointed(3, 1).unwrap(), s3, gen_suq2(0.5, 4).unwrap()] {
            let back = parse_bundle(&serialize_bundle(&b)).unwrap();
            assert_eq!(bits(&back), bits(&b));
            assert_eq!(back, b);
        }
    }

    #[test]
    fn pointed_z3_fusion() {
        let b = parse_bundle(&serialize_bundle(&gen_pointed(3, 1).unwrap())).unwrap();
        assert_eq!(b.n_labels(), 3);
        assert_eq!(b.multiplicity(1, 2, 0), 1);
    }

    #[test]
    fn errors_carry_locations() {
        match parse_bundle("{\n  \"version\": 1,\n  \"labels\": [\n}") {
            Err(FormatError::Syntax { line: Some(4), .. }) => {}
            other => panic!("{other:?}"),
        }
        let mut v = bundle_json(&gen_pointed(2, 1).unwrap());
        v["fusion"][1]["isometries"][0]["rows"] = json!(2);
        v["fusion"][1]["isometries"][0]["data"] = json!([[1.0, 0.0], [0.0, 0.0]]);
        assert!(matches!(parse_bundle(&v.to_string()), Err(FormatError::Shape(m)) if m.contains("isometry is 2x1")));
        let mut v = bundle_json(&gen_pointed(2, 1).unwrap());
        v["conj"]["1"]["r"]["data"][0] = json!("x");
        match parse_bundle(&v.to_string()) {
            Err(FormatError::Syntax { path, .. }) => assert_eq!(path, "$.conj.1.r.data[0]"),
            other => panic!("{other:?}"),
        }
    }
}
