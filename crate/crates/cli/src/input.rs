//! Problem-file parsing. The input is a JSON object with integer entries of
//! arbitrary precision; see FORMAT.md at the repository root for the exact
//! field names.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;
use toric_mcm::simplicial::FieldSpec;
use toric_mcm::toric::MonomialIdeal;

#[derive(Debug)]
pub struct ProblemFile {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub divisor: Option<Vec<BigInt>>,
    pub ideal: MonomialIdeal,
    pub field: FieldSpec,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value
        .as_object()
        .ok_or_else(|| "top level must be a JSON object".to_string())?;
    for key in obj.keys() {
        if !["lattice_rank", "rays", "divisor", "ideal", "field"].contains(&key.as_str()) {
            return Err(format!("unknown field `{key}`"));
        }
    }
    let rank_v = obj
        .get("lattice_rank")
        .ok_or_else(|| "missing field `lattice_rank`".to_string())?;
    let lattice_rank = as_bigint(rank_v, "lattice_rank")?;
    let lattice_rank = usize::try_from(&lattice_rank)
        .map_err(|_| "`lattice_rank` must be a small positive integer".to_string())?;
    let rays_v = obj
        .get("rays")
        .ok_or_else(|| "missing field `rays`".to_string())?;
    let rays = as_vector_list(rays_v, "rays")?;
    let divisor = obj
        .get("divisor")
        .map(|v| as_int_vector(v, "divisor"))
        .transpose()?;
    let ideal = match obj.get("ideal") {
        None => MonomialIdeal::Maximal,
        Some(Value::String(s)) if s == "maximal" => MonomialIdeal::Maximal,
        Some(Value::String(s)) => {
            return Err(format!("unknown ideal `{s}`; use \"maximal\" or {{\"generators\": …}}"))
        }
        Some(Value::Object(m)) => {
            let gens = m
                .get("generators")
                .ok_or_else(|| "ideal object must have a `generators` field".to_string())?;
            MonomialIdeal::Generated(as_vector_list(gens, "generators")?)
        }
        Some(_) => return Err("`ideal` must be \"maximal\" or an object".to_string()),
    };
    let field = match obj.get("field") {
        None => FieldSpec::RATIONAL,
        Some(Value::Object(m)) => {
            let c = m
                .get("characteristic")
                .ok_or_else(|| "field object must have a `characteristic`".to_string())?;
            let c = as_bigint(c, "characteristic")?;
            let c = u64::try_from(&c)
                .map_err(|_| "`characteristic` must be a nonnegative machine integer".to_string())?;
            FieldSpec::new(c).map_err(|e| e.to_string())?
        }
        Some(_) => return Err("`field` must be an object".to_string()),
    };
    if let Some(d) = &divisor {
        if d.len() != rays.len() {
            return Err(format!(
                "divisor has {} coefficients but there are {} rays",
                d.len(),
                rays.len()
            ));
        }
    }
    Ok(ProblemFile { lattice_rank, rays, divisor, ideal, field })
}

fn as_bigint(v: &Value, what: &str) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| format!("`{what}` must be an integer, got {n}")),
        _ => Err(format!("`{what}` must be an integer")),
    }
}

fn as_int_vector(v: &Value, what: &str) -> Result<Vec<BigInt>, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| format!("`{what}` must be an array of integers"))?;
    arr.iter().map(|x| as_bigint(x, what)).collect()
}

fn as_vector_list(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| format!("`{what}` must be an array of integer vectors"))?;
    arr.iter().map(|x| as_int_vector(x, what)).collect()
}

/// Parses a comma-separated integer vector, e.g. `0,-2,0,0`.
pub fn parse_int_csv(text: &str) -> Result<Vec<BigInt>, String> {
    text.split(',')
        .map(|t| {
            BigInt::from_str(t.trim()).map_err(|_| format!("`{t}` is not an integer"))
        })
        .collect()
}

/// Parses an ideal flag: `maximal` or semicolon-separated generators,
/// e.g. `1,1,0;0,0,1`.
pub fn parse_ideal_flag(text: &str) -> Result<MonomialIdeal, String> {
    if text == "maximal" {
        return Ok(MonomialIdeal::Maximal);
    }
    let gens = text
        .split(';')
        .map(parse_int_csv)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialIdeal::Generated(gens))
}
