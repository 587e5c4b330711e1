//! Strict parsing of JSON input files.
//!
//! Every input is an object with a `construct` field. Unknown fields,
//! wrong types and out-of-range values are rejected with the JSON path of
//! the offending value, e.g. `$.of.rtilde`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};
use swf_core::f2::BitVector;
use swf_core::floer::{Eighths, FloerContext, MoyData, Rank};
use swf_core::rmodule::RMonomial;
use swf_core::swfclass::KappaData;

pub const MAX_DEPTH: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for InputError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, InputError> {
    Err(InputError {
        path: path.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceSpec {
    RepSphere {
        rtilde: u32,
        quat: u32,
    },
    UnreducedSuspension(KappaData),
    Suspend {
        of: Box<SpaceSpec>,
        rtilde: u32,
        quat: u32,
    },
    Dualize {
        of: Box<SpaceSpec>,
        rtilde: u32,
        quat: u32,
    },
    Moy(MoyData),
    Brieskorn {
        n: u64,
    },
}

impl SpaceSpec {
    /// Whether the construct describes a space (as opposed to Floer data).
    pub fn is_space(&self) -> bool {
        !matches!(self, SpaceSpec::Moy(_) | SpaceSpec::Brieskorn { .. })
    }

    pub fn construct(&self) -> &'static str {
        match self {
            SpaceSpec::RepSphere { .. } => "rep_sphere",
            SpaceSpec::UnreducedSuspension(_) => "unreduced_suspension",
            SpaceSpec::Suspend { .. } => "suspend",
            SpaceSpec::Dualize { .. } => "dualize",
            SpaceSpec::Moy(_) => "moy",
            SpaceSpec::Brieskorn { .. } => "brieskorn",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    pub space: SpaceSpec,
    pub context: Option<FloerContext>,
    /// The parsed document, for cache keys.
    pub document: Value,
}

/// Parses and validates an input file.
pub fn parse_input(bytes: &[u8]) -> Result<InputFile, InputError> {
    let text = match std::str::from_utf8(bytes) {
        Ok(t) => t,
        Err(e) => return err("$", format!("input is not valid UTF-8 ({e})")),
    };
    let document: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return err("$", format!("malformed JSON: {e}")),
    };
    let Some(root) = document.as_object() else {
        return err("$", "expected an object");
    };
    let context = match root.get("context") {
        Some(c) => Some(parse_context(c, "$.context")?),
        None => None,
    };
    let space = parse_space(root, "$", 0, &["context"])?;
    if context.is_some() && !space.is_space() {
        return err(
            "$.context",
            format!("a context does not apply to a {} input", space.construct()),
        );
    }
    Ok(InputFile {
        space,
        context,
        document,
    })
}

fn parse_context(v: &Value, path: &str) -> Result<FloerContext, InputError> {
    let obj = object(v, path)?;
    allow_only(obj, path, &["dim_v0tau", "n_eighths"])?;
    Ok(FloerContext {
        dim_v0tau: nonneg_u32(field(obj, path, "dim_v0tau")?, &join(path, "dim_v0tau"))?,
        n: Eighths(integer(
            field(obj, path, "n_eighths")?,
            &join(path, "n_eighths"),
        )?),
    })
}

fn join(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object()
        .map_or_else(|| err(path, "expected an object"), Ok)
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array()
        .map_or_else(|| err(path, "expected an array"), Ok)
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, InputError> {
    obj.get(key)
        .map_or_else(|| err(path, format!("missing field \"{key}\"")), Ok)
}

fn allow_only(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), InputError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => err(&join(path, k), "unknown field"),
        None => Ok(()),
    }
}

fn integer(v: &Value, path: &str) -> Result<i64, InputError> {
    match v.as_i64() {
        Some(n) => Ok(n),
        None if v.is_number() => err(path, "expected an integer in the 64-bit range"),
        None => err(path, "expected an integer"),
    }
}

fn nonneg(v: &Value, path: &str) -> Result<u64, InputError> {
    let n = integer(v, path)?;
    u64::try_from(n).or_else(|_| err(path, format!("must be a nonnegative integer, got {n}")))
}

fn nonneg_u32(v: &Value, path: &str) -> Result<u32, InputError> {
    let n = nonneg(v, path)?;
    u32::try_from(n).or_else(|_| err(path, format!("{n} is too large")))
}

fn rank(v: &Value, path: &str) -> Result<Rank, InputError> {
    match v {
        Value::String(s) if s == "auto" => Ok(Rank::Auto),
        Value::String(s) => err(
            path,
            format!("expected a nonnegative integer or \"auto\", got \"{s}\""),
        ),
        _ => Ok(Rank::Explicit(nonneg_u32(v, path)?)),
    }
}

fn parse_space(
    obj: &Map<String, Value>,
    path: &str,
    depth: usize,
    extra: &[&str],
) -> Result<SpaceSpec, InputError> {
    if depth > MAX_DEPTH {
        return err(path, format!("constructs nested deeper than {MAX_DEPTH}"));
    }
    let construct = match field(obj, path, "construct")? {
        Value::String(s) => s.as_str(),
        _ => return err(&join(path, "construct"), "expected a string"),
    };
    let allowed = |keys: &[&str]| -> Result<(), InputError> {
        let all: Vec<&str> = ["construct"]
            .iter()
            .chain(keys)
            .chain(extra)
            .copied()
            .collect();
        allow_only(obj, path, &all)
    };
    let get_u32 = |key: &str| nonneg_u32(field(obj, path, key)?, &join(path, key));
    match construct {
        "rep_sphere" => {
            allowed(&["rtilde", "quat"])?;
            Ok(SpaceSpec::RepSphere {
                rtilde: get_u32("rtilde")?,
                quat: get_u32("quat")?,
            })
        }
        "suspend" | "dualize" => {
            allowed(&["of", "rtilde", "quat"])?;
            let of_path = join(path, "of");
            let of = parse_space(object(field(obj, path, "of")?, &of_path)?, &of_path, depth + 1, &[])?;
            if !of.is_space() {
                return err(&join(&of_path, "construct"), format!("a {} input is not a space", of.construct()));
            }
            let (rtilde, quat) = (get_u32("rtilde")?, get_u32("quat")?);
            Ok(if construct == "suspend" {
                SpaceSpec::Suspend { of: Box::new(of), rtilde, quat }
            } else {
                SpaceSpec::Dualize { of: Box::new(of), rtilde, quat }
            })
        }
        "unreduced_suspension" => {
            allowed(&["qdims", "kappa", "kappa_s1"])?;
            Ok(SpaceSpec::UnreducedSuspension(parse_kappa(obj, path)?))
        }
        "moy" => {
            allowed(&["reducible_degree", "irreducibles", "g_rank", "s1_rank"])?;
            let irr_path = join(path, "irreducibles");
            let irreducibles = array(field(obj, path, "irreducibles")?, &irr_path)?
                .iter()
                .enumerate()
                .map(|(i, item)| {
                    let p = format!("{irr_path}[{i}]");
                    let o = object(item, &p)?;
                    allow_only(o, &p, &["degree", "pairs"])?;
                    Ok((
                        integer(field(o, &p, "degree")?, &join(&p, "degree"))?,
                        nonneg_u32(field(o, &p, "pairs")?, &join(&p, "pairs"))?,
                    ))
                })
                .collect::<Result<_, InputError>>()?;
            Ok(SpaceSpec::Moy(MoyData {
                reducible_degree: integer(field(obj, path, "reducible_degree")?, &join(path, "reducible_degree"))?,
                irreducibles,
                g_rank: rank(field(obj, path, "g_rank")?, &join(path, "g_rank"))?,
                s1_rank: rank(field(obj, path, "s1_rank")?, &join(path, "s1_rank"))?,
            }))
        }
        "brieskorn" => {
            allowed(&["p", "q", "n"])?;
            let p = nonneg(field(obj, path, "p")?, &join(path, "p"))?;
            let q = nonneg(field(obj, path, "q")?, &join(path, "q"))?;
            if (p, q) != (2, 3) {
                return err(path, format!("only Σ(2, 3, n) is supported, got Σ({p}, {q}, n)"));
            }
            Ok(SpaceSpec::Brieskorn {
                n: nonneg(field(obj, path, "n")?, &join(path, "n"))?,
            })
        }
        other => err(
            &join(path, "construct"),
            format!(
                "unknown construct \"{other}\" (expected rep_sphere, unreduced_suspension, suspend, dualize, moy or brieskorn)"
            ),
        ),
    }
}

fn parse_kappa(obj: &Map<String, Value>, path: &str) -> Result<KappaData, InputError> {
    let mut k = KappaData::default();
    let qpath = join(path, "qdims");
    for (d, item) in array(field(obj, path, "qdims")?, &qpath)?
        .iter()
        .enumerate()
    {
        let n = nonneg(item, &format!("{qpath}[{d}]"))?;
        k.qdims.insert(d as i64, n as usize);
    }

    let kpath = join(path, "kappa");
    for (i, item) in array(field(obj, path, "kappa")?, &kpath)?
        .iter()
        .enumerate()
    {
        let p = format!("{kpath}[{i}]");
        let o = object(item, &p)?;
        allow_only(o, &p, &["qpow", "vpow", "image"])?;
        let qpow = nonneg(field(o, &p, "qpow")?, &join(&p, "qpow"))?;
        if qpow > 2 {
            return err(&join(&p, "qpow"), "must be 0, 1 or 2 (q^3 = 0)");
        }
        let vpow = nonneg_u32(field(o, &p, "vpow")?, &join(&p, "vpow"))?;
        let m = RMonomial {
            qpow: qpow as u8,
            vpow,
        };
        let ipath = join(&p, "image");
        let bits = array(field(o, &p, "image")?, &ipath)?
            .iter()
            .enumerate()
            .map(|(j, b)| match b.as_u64() {
                Some(x @ (0 | 1)) => Ok(x as u8),
                _ => err(&format!("{ipath}[{j}]"), "expected 0 or 1"),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        let expected = k.qdim(m.degree());
        if bits.len() != expected {
            return err(
                &ipath,
                format!(
                    "has length {}, but H^{}(Q) has dimension {expected}",
                    bits.len(),
                    m.degree()
                ),
            );
        }
        if k.kappa.insert(m, BitVector::from_bits(bits)).is_some() {
            return err(&p, format!("duplicate entry for {m}"));
        }
    }

    let spath = join(path, "kappa_s1");
    let mut s1 = BTreeMap::new();
    for (e, item) in array(field(obj, path, "kappa_s1")?, &spath)?
        .iter()
        .enumerate()
    {
        let p = format!("{spath}[{e}]");
        let coords = array(item, &p)?
            .iter()
            .enumerate()
            .map(|(j, x)| integer(x, &format!("{p}[{j}]")))
            .collect::<Result<Vec<i64>, _>>()?;
        let expected = k.qdim(2 * e as i64);
        if coords.len() != expected {
            return err(
                &p,
                format!(
                    "has length {}, but H^{}(Q) has dimension {expected}",
                    coords.len(),
                    2 * e
                ),
            );
        }
        s1.insert(e as u32, coords);
    }
    k.kappa_s1 = s1;
    Ok(k)
}

/// Compact JSON with object keys sorted at every level.
pub fn canonical(v: &Value) -> String {
    fn sorted(v: &Value) -> Value {
        match v {
            Value::Object(m) => {
                let mut keys: Vec<&String> = m.keys().collect();
                keys.sort();
                let mut out = Map::new();
                for k in keys {
                    out.insert(k.clone(), sorted(&m[k]));
                }
                Value::Object(out)
            }
            Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
            other => other.clone(),
        }
    }
    serde_json::to_string(&sorted(v)).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<InputFile, InputError> {
        parse_input(s.as_bytes())
    }

    #[test]
    fn rep_sphere() {
        let f = parse(r#"{"construct":"rep_sphere","rtilde":1,"quat":2}"#).unwrap();
        assert_eq!(f.space, SpaceSpec::RepSphere { rtilde: 1, quat: 2 });
        assert_eq!(f.context, None);
    }

    #[test]
    fn negative_rejected_with_path() {
        let e = parse(r#"{"construct":"rep_sphere","rtilde":-1,"quat":0}"#).unwrap_err();
        assert_eq!(e.path, "$.rtilde");
    }

    #[test]
    fn unknown_field_rejected_with_path() {
        let e = parse(r#"{"construct":"suspend","rtilde":0,"quat":1,"of":{"construct":"rep_sphere","rtilde":0,"quat":0,"colour":1}}"#)
            .unwrap_err();
        assert_eq!(e.path, "$.of.colour");
        assert_eq!(e.message, "unknown field");
    }

    #[test]
    fn nested_dual_of_projective_plane() {
        let f = parse(
            r#"{"construct":"dualize","rtilde":0,"quat":3,"of":{"construct":"unreduced_suspension",
                "qdims":[1,0,1,0,1],
                "kappa":[{"qpow":0,"vpow":0,"image":[1]},{"qpow":0,"vpow":1,"image":[1]}],
                "kappa_s1":[[1],[1],[1]]}}"#,
        )
        .unwrap();
        let SpaceSpec::Dualize {
            of,
            rtilde: 0,
            quat: 3,
        } = f.space
        else {
            panic!("expected a dualize construct");
        };
        let SpaceSpec::UnreducedSuspension(k) = *of else {
            panic!("expected an unreduced suspension");
        };
        assert_eq!(k.top_degree(), 4);
        assert_eq!(k.kappa.len(), 2);
    }

    #[test]
    fn kappa_length_checked() {
        let e = parse(r#"{"construct":"unreduced_suspension","qdims":[1],"kappa":[{"qpow":0,"vpow":0,"image":[1,1]}],"kappa_s1":[]}"#)
            .unwrap_err();
        assert_eq!(e.path, "$.kappa[0].image");
    }

    #[test]
    fn depth_limit() {
        let mut s = r#"{"construct":"rep_sphere","rtilde":0,"quat":0}"#.to_string();
        for _ in 0..40 {
            s = format!(r#"{{"construct":"suspend","rtilde":0,"quat":0,"of":{s}}}"#);
        }
        let e = parse(&s).unwrap_err();
        assert!(e.message.contains("deeper than 32"), "{e}");
    }

    #[test]
    fn moy_with_auto_ranks() {
        let f = parse(r#"{"construct":"moy","reducible_degree":0,"irreducibles":[{"degree":1,"pairs":2}],"g_rank":"auto","s1_rank":1}"#)
            .unwrap();
        let SpaceSpec::Moy(m) = f.space else { panic!() };
        assert_eq!(m.g_rank, Rank::Auto);
        assert_eq!(m.s1_rank, Rank::Explicit(1));
    }

    #[test]
    fn malformed_and_wrong_types() {
        assert_eq!(parse("{").unwrap_err().path, "$");
        assert_eq!(parse("[]").unwrap_err().path, "$");
        assert_eq!(parse(r#"{"construct":7}"#).unwrap_err().path, "$.construct");
        assert_eq!(
            parse(r#"{"construct":"torus"}"#).unwrap_err().path,
            "$.construct"
        );
        assert_eq!(
            parse(r#"{"construct":"rep_sphere","rtilde":1.5,"quat":0}"#)
                .unwrap_err()
                .path,
            "$.rtilde"
        );
        assert!(parse_input(&[0xff, 0xfe]).is_err());
    }

    #[test]
    fn context_only_for_spaces() {
        let e = parse(r#"{"construct":"brieskorn","p":2,"q":3,"n":7,"context":{"dim_v0tau":0,"n_eighths":0}}"#).unwrap_err();
        assert_eq!(e.path, "$.context");
        let f = parse(r#"{"construct":"rep_sphere","rtilde":0,"quat":1,"context":{"dim_v0tau":4,"n_eighths":-3}}"#).unwrap();
        assert_eq!(f.context.unwrap().n, Eighths(-3));
    }

    #[test]
    fn canonical_sorts_keys() {
        let v: Value = serde_json::from_str(r#"{"b":1,"a":{"d":[1,2],"c":null}}"#).unwrap();
        assert_eq!(canonical(&v), r#"{"a":{"c":null,"d":[1,2]},"b":1}"#);
    }
}
