//! JSON ingestion and canonical serialization of braidings and generic data.
//!
//! Vertices, group generators and linking pairs are one-based on the wire.

use serde_json::{json, Map, Value};

use pointedq::scalars::{parse_monomial, parse_scalar};
use pointedq::uqd::DatumComponent;
use pointedq::{BraidingMatrix, CartanMatrix, GenericDatum, MonomialScalar, ParamNames, ScalarFraction};

use crate::CliError;

/// One parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Braiding { names: ParamNames, q: BraidingMatrix },
    Cartan { a: CartanMatrix },
    Datum(GenericDatum),
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {:?}", key)))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| bad(format!("{} must be an array", what)))
}

fn int(v: &Value, what: &str) -> Result<i64, CliError> {
    v.as_i64().ok_or_else(|| bad(format!("{} must be an integer", what)))
}

fn index(v: &Value, n: usize, what: &str) -> Result<usize, CliError> {
    let k = int(v, what)?;
    if k < 1 || k as usize > n {
        return Err(bad(format!("{} must lie in 1..={}, got {}", what, n, k)));
    }
    Ok(k as usize - 1)
}

fn literal(v: &Value, what: &str) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        _ => Err(bad(format!("{} must be a scalar literal", what))),
    }
}

fn monomial(v: &Value, names: &ParamNames, what: &str) -> Result<MonomialScalar, CliError> {
    parse_monomial(&literal(v, what)?, names).map_err(|e| bad(format!("{}: {}", what, e)))
}

fn scalar(v: &Value, names: &ParamNames, what: &str) -> Result<ScalarFraction, CliError> {
    parse_scalar(&literal(v, what)?, names).map_err(|e| bad(format!("{}: {}", what, e)))
}

fn int_matrix(v: &Value, what: &str) -> Result<Vec<Vec<i64>>, CliError> {
    array(v, what)?
        .iter()
        .map(|row| array(row, what)?.iter().map(|x| int(x, what)).collect())
        .collect()
}

fn params(obj: &Map<String, Value>) -> Result<ParamNames, CliError> {
    let Some(v) = obj.get("params") else {
        return Ok(ParamNames::default());
    };
    let names: Vec<String> = array(v, "params")?
        .iter()
        .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| bad("params must be strings")))
        .collect::<Result<_, _>>()?;
    for n in &names {
        if !ParamNames::valid_name(n) {
            return Err(bad(format!("invalid parameter name {:?}", n)));
        }
        if n.starts_with(['a', 'b', 'y']) && n[1..].bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(format!("parameter name {:?} clashes with a generator", n)));
        }
    }
    Ok(ParamNames::new(names))
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {}", e)))?;
    let obj = v.as_object().ok_or_else(|| bad("top level must be an object"))?;
    let names = params(obj)?;
    if obj.contains_key("braiding") {
        let rows = array(field(obj, "braiding")?, "braiding")?;
        let q = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                array(row, "braiding row")?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| monomial(x, &names, &format!("q_{}{}", i + 1, j + 1)))
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let q = BraidingMatrix::new(q).map_err(|e| bad(e.to_string()))?;
        return Ok(Input::Braiding { names, q });
    }
    if obj.contains_key("s") {
        return parse_datum(obj, names).map(Input::Datum);
    }
    if obj.contains_key("cartan") {
        let a = CartanMatrix::new(int_matrix(field(obj, "cartan")?, "cartan")?).map_err(|e| bad(e.to_string()))?;
        return Ok(Input::Cartan { a });
    }
    Err(bad("expected a braiding, a Cartan matrix or a generic datum"))
}

fn parse_datum(obj: &Map<String, Value>, names: ParamNames) -> Result<GenericDatum, CliError> {
    let s = int(field(obj, "s")?, "s")?;
    if s < 0 {
        return Err(bad("s must be nonnegative"));
    }
    let s = s as usize;
    let cartan = CartanMatrix::new(int_matrix(field(obj, "cartan")?, "cartan")?).map_err(|e| bad(e.to_string()))?;
    let theta = cartan.rank();
    let components = array(field(obj, "components")?, "components")?
        .iter()
        .map(|c| {
            let c = c.as_object().ok_or_else(|| bad("each component must be an object"))?;
            let vertices = array(field(c, "vertices")?, "vertices")?
                .iter()
                .map(|v| index(v, theta, "component vertex"))
                .collect::<Result<Vec<_>, _>>()?;
            let q = monomial(field(c, "qI")?, &names, "qI")?;
            Ok(DatumComponent { vertices, q })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let g = int_matrix(field(obj, "g")?, "g")?;
    let chi = array(field(obj, "chi")?, "chi")?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            array(row, "chi row")?
                .iter()
                .enumerate()
                .map(|(h, x)| monomial(x, &names, &format!("chi_{}(Y_{})", i + 1, h + 1)))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let mut lambda = Vec::new();
    if let Some(l) = obj.get("lambda") {
        for e in array(l, "lambda")? {
            let e = e.as_object().ok_or_else(|| bad("each linking constant must be an object"))?;
            let i = index(field(e, "i")?, theta, "lambda i")?;
            let j = index(field(e, "j")?, theta, "lambda j")?;
            lambda.push(((i, j), scalar(field(e, "value")?, &names, "lambda value")?));
        }
    }
    GenericDatum::new(s, cartan, components, g, chi, lambda)
        .map(|d| d.with_names(names))
        .map_err(|e| bad(e.to_string()))
}

fn params_json(names: &ParamNames) -> Value {
    json!(names.names())
}

pub fn braiding_json(q: &BraidingMatrix, names: &ParamNames) -> Value {
    json!(q.fmt_rows(names))
}

pub fn cartan_json(a: &CartanMatrix) -> Value {
    json!(a.rows())
}

pub fn datum_json(d: &GenericDatum) -> Value {
    let names = d.names();
    let components: Vec<Value> = d
        .components()
        .iter()
        .map(|c| {
            json!({
                "vertices": c.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "qI": c.q.fmt_with(names),
            })
        })
        .collect();
    let chi: Vec<Vec<String>> = (0..d.theta()).map(|i| d.chi(i).iter().map(|m| m.fmt_with(names)).collect()).collect();
    let g: Vec<&[i64]> = (0..d.theta()).map(|i| d.g(i)).collect();
    let lambda: Vec<Value> = d
        .lambdas()
        .iter()
        .map(|(&(i, j), v)| json!({"i": i + 1, "j": j + 1, "value": v.fmt_with(names)}))
        .collect();
    json!({
        "params": params_json(names),
        "s": d.s(),
        "cartan": cartan_json(d.cartan()),
        "components": components,
        "g": g,
        "chi": chi,
        "lambda": lambda,
    })
}

/// The canonical serialization of a parsed input.
pub fn input_json(input: &Input) -> Value {
    match input {
        Input::Braiding { names, q } => json!({"params": params_json(names), "braiding": braiding_json(q, names)}),
        Input::Cartan { a } => json!({"cartan": cartan_json(a)}),
        Input::Datum(d) => datum_json(d),
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
