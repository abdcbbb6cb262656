//! JSON text forms for every public element type.
//!
//! Polynomials look like
//! `{"model":"symplectic","genus":2,"terms":[{"coef":"-3/2","word":["a1","b1","a2"]}]}`,
//! with terms in canonical order so that output is deterministic. Parse
//! errors carry a JSON path, and for coefficients a byte offset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::alphabet::{Alphabet, Letter, Model, Word};
use crate::coef::{format_q, parse_q, Q};
use crate::cyclic::CyclicPoly;
use crate::derivation::{DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::framing::FramingData;
use crate::genus0::SpecialDer0;
use crate::goldman::CyclicPair;
use crate::lie::LiePoly;
use crate::repring::{Partition, RepElement};
use crate::tensor::TensorPoly;

/// Types with a canonical JSON form.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        Self::from_json(&v)
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(path, format!("missing field `{key}`")))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::parse(path, "expected a string"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::parse(path, "expected an integer"))
}

pub fn coef_from_json(v: &Value, path: &str) -> Result<Q> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(Error::parse(path, "expected a rational string such as \"-3/2\"")),
    };
    parse_q(&s).map_err(|(pos, msg)| Error::parse(format!("{path} (byte {pos})"), msg))
}

/// Alphabet header fields.
pub fn alphabet_header(al: Alphabet) -> Map<String, Value> {
    let mut m = Map::new();
    match al.model() {
        Model::Symplectic { genus } => {
            m.insert("model".into(), json!("symplectic"));
            m.insert("genus".into(), json!(genus));
        }
        Model::Boundary { punctures, base } => {
            m.insert("model".into(), json!("boundary"));
            m.insert("punctures".into(), json!(punctures));
            m.insert("base".into(), json!(base));
        }
    }
    m
}

pub fn alphabet_from_json(v: &Value) -> Result<Alphabet> {
    let model = as_str(field(v, "$", "model")?, "$.model")?;
    let r = match model {
        "symplectic" => Alphabet::symplectic(as_usize(field(v, "$", "genus")?, "$.genus")?),
        "boundary" => {
            let n = as_usize(field(v, "$", "punctures")?, "$.punctures")?;
            let base = match v.get("base") {
                Some(b) => as_usize(b, "$.base")?,
                None => 0,
            };
            Alphabet::boundary(n, base)
        }
        other => return Err(Error::parse("$.model", format!("unknown model `{other}`"))),
    };
    r.map_err(|e| Error::parse("$", e.to_string()))
}

fn word_to_json(al: Alphabet, w: &Word) -> Value {
    Value::Array(w.letters().iter().map(|&l| json!(al.letter_name(l))).collect())
}

/// A word given by letter names, expanded linearly (base letters are sums).
fn word_from_json(al: Alphabet, v: &Value, path: &str) -> Result<Vec<(Word, Q)>> {
    let mut acc: Vec<(Vec<Letter>, Q)> = vec![(Vec::new(), Q::from_integer(1.into()))];
    for (i, x) in as_array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let name = as_str(x, &p)?;
        let expansion = al.parse_letter(name).map_err(|e| Error::parse(&p, e.to_string()))?;
        let mut next = Vec::with_capacity(acc.len() * expansion.len());
        for (w, c) in &acc {
            for (l, d) in &expansion {
                let mut w2 = w.clone();
                w2.push(*l);
                next.push((w2, c * d));
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().map(|(w, c)| (Word(w.into()), c)).collect())
}

fn terms_to_json<'a>(al: Alphabet, terms: impl IntoIterator<Item = (&'a Word, &'a Q)>) -> Value {
    Value::Array(
        terms
            .into_iter()
            .map(|(w, c)| json!({"coef": format_q(c), "word": word_to_json(al, w)}))
            .collect(),
    )
}

fn tensor_body_from_json(al: Alphabet, v: &Value, path: &str) -> Result<TensorPoly> {
    let mut t = TensorPoly::zero(al);
    let tp = format!("{path}.terms");
    for (i, term) in as_array(field(v, path, "terms")?, &tp)?.iter().enumerate() {
        let p = format!("{tp}[{i}]");
        let c = coef_from_json(field(term, &p, "coef")?, &format!("{p}.coef"))?;
        for (w, d) in word_from_json(al, field(term, &p, "word")?, &format!("{p}.word"))? {
            t.add_term(w, &c * d);
        }
    }
    Ok(t)
}

fn with_header(al: Alphabet, body: Vec<(&str, Value)>) -> Value {
    let mut m = alphabet_header(al);
    for (k, v) in body {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

impl Json for TensorPoly {
    fn to_json(&self) -> Value {
        with_header(self.alphabet(), vec![("terms", terms_to_json(self.alphabet(), self.sorted_terms()))])
    }

    fn from_json(v: &Value) -> Result<Self> {
        tensor_body_from_json(alphabet_from_json(v)?, v, "$")
    }
}

impl Json for LiePoly {
    fn to_json(&self) -> Value {
        self.tensor().to_json()
    }

    fn from_json(v: &Value) -> Result<Self> {
        LiePoly::from_tensor(TensorPoly::from_json(v)?)
    }
}

impl Json for CyclicPoly {
    fn to_json(&self) -> Value {
        with_header(self.alphabet(), vec![("terms", terms_to_json(self.alphabet(), self.sorted_terms()))])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let al = alphabet_from_json(v)?;
        let t = tensor_body_from_json(al, v, "$")?;
        Ok(crate::cyclic::cyclic_project(&t))
    }
}

impl Json for CyclicPair {
    fn to_json(&self) -> Value {
        let al = self.alphabet();
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|((u, w), c)| json!({"coef": format_q(c), "left": word_to_json(al, u), "right": word_to_json(al, w)}))
            .collect();
        with_header(al, vec![("terms", Value::Array(terms))])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let al = alphabet_from_json(v)?;
        let mut out = CyclicPair::zero(al);
        for (i, term) in as_array(field(v, "$", "terms")?, "$.terms")?.iter().enumerate() {
            let p = format!("$.terms[{i}]");
            let c = coef_from_json(field(term, &p, "coef")?, &format!("{p}.coef"))?;
            let lefts = word_from_json(al, field(term, &p, "left")?, &format!("{p}.left"))?;
            let rights = word_from_json(al, field(term, &p, "right")?, &format!("{p}.right"))?;
            for (u, a) in &lefts {
                for (w, b) in &rights {
                    out.add_words(u, w, &c * a * b);
                }
            }
        }
        Ok(out)
    }
}

fn values_to_json(al: Alphabet, values: &[TensorPoly]) -> Value {
    let mut m = Map::new();
    for (l, v) in values.iter().enumerate() {
        m.insert(al.letter_name(l as Letter), json!({"terms": terms_to_json(al, v.sorted_terms())}));
    }
    Value::Object(m)
}

fn values_from_json(al: Alphabet, v: &Value, path: &str) -> Result<Vec<TensorPoly>> {
    let obj = as_object(v, path)?;
    let mut values = vec![TensorPoly::zero(al); al.rank()];
    for (name, body) in obj {
        let p = format!("{path}.{name}");
        let expansion = al.parse_letter(name).map_err(|e| Error::parse(&p, e.to_string()))?;
        let [(l, c)] = expansion.as_slice() else {
            return Err(Error::parse(&p, "values are keyed by free letters"));
        };
        if !c.is_integer() || c.numer() != &BigInt::from(1) {
            return Err(Error::parse(&p, "values are keyed by free letters"));
        }
        values[*l as usize] = tensor_body_from_json(al, body, &p)?;
    }
    Ok(values)
}

impl Json for ThetaDerivation {
    fn to_json(&self) -> Value {
        let al = self.alphabet();
        with_header(
            al,
            vec![
                ("degree", json!(self.degree())),
                ("kind", json!(self.kind().name())),
                ("values", values_to_json(al, self.values())),
            ],
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let al = alphabet_from_json(v)?;
        let degree = as_i64(field(v, "$", "degree")?, "$.degree")? as i32;
        let kind = DerKind::parse(as_str(field(v, "$", "kind")?, "$.kind")?).map_err(|e| Error::parse("$.kind", e.to_string()))?;
        let values = values_from_json(al, field(v, "$", "values")?, "$.values")?;
        ThetaDerivation::new(al, degree, kind, values)
    }
}

impl Json for SpecialDer0 {
    fn to_json(&self) -> Value {
        let al = self.alphabet();
        with_header(al, vec![("degree", json!(self.degree())), ("components", values_to_json(al, self.components()))])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let al = alphabet_from_json(v)?;
        let degree = as_usize(field(v, "$", "degree")?, "$.degree")?;
        let comps = values_from_json(al, field(v, "$", "components")?, "$.components")?;
        SpecialDer0::new(al, degree, comps)
    }
}

fn partition_key(p: &Partition) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_partition(s: &str, path: &str) -> Result<Partition> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(path, format!("partition key `{s}` must look like [2,1]")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut p = Vec::new();
    for part in inner.split(',') {
        let x: u32 = part.trim().parse().map_err(|_| Error::parse(path, format!("bad part `{part}`")))?;
        p.push(x);
    }
    if p.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::parse(path, format!("`{s}` is not weakly decreasing")));
    }
    p.retain(|&x| x > 0);
    Ok(p)
}

impl Json for RepElement {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (p, c) in &self.terms {
            let v = match i64::try_from(c) {
                Ok(x) => json!(x),
                Err(_) => json!(c.to_string()),
            };
            m.insert(partition_key(p), v);
        }
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut r = RepElement::new();
        for (k, x) in as_object(v, "$")? {
            let p = format!("$[\"{k}\"]");
            let lambda = parse_partition(k, &p)?;
            let m: BigInt = match x {
                Value::Number(n) if n.is_i64() => BigInt::from(n.as_i64().unwrap()),
                Value::String(s) => s.parse().map_err(|_| Error::parse(&p, "bad multiplicity"))?,
                _ => return Err(Error::parse(&p, "multiplicity must be an integer")),
            };
            r.add(lambda, m);
        }
        Ok(r)
    }
}

/// Graded series of representation-ring elements, indexed by degree.
impl Json for Vec<RepElement> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(|r| r.to_json()).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        as_array(v, "$")?
            .iter()
            .enumerate()
            .map(|(i, x)| {
                RepElement::from_json(x).map_err(|e| match e {
                    Error::Parse { location, message } => {
                        Error::parse(location.replacen('$', &format!("$[{i}]"), 1), message)
                    }
                    other => other,
                })
            })
            .collect()
    }
}

impl Json for FramingData {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    fn from_json(v: &Value) -> Result<Self> {
        let f: FramingData = serde_json::from_value(v.clone()).map_err(|e| Error::parse("$", e.to_string()))?;
        f.validate()?;
        Ok(f)
    }
}

/// Canonical key-ordered map of partition multiplicities, for table output.
pub fn rep_table(r: &RepElement) -> BTreeMap<String, String> {
    r.terms.iter().map(|(p, c)| (partition_key(p), c.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example() {
        let s = r#"{"genus":2,"model":"symplectic","terms":[{"coef":"-3/2","word":["a1","b1","a2"]}]}"#;
        let t = TensorPoly::from_json_str(s).unwrap();
        assert_eq!(t.to_json_string(), s);
    }

    #[test]
    fn unicode_minus_rejected() {
        let s = r#"{"model":"symplectic","genus":1,"terms":[{"coef":"−3/2","word":["a1"]}]}"#;
        match TensorPoly::from_json_str(s) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "$.terms[0].coef (byte 0)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn base_letter_expands() {
        let s = r#"{"model":"boundary","punctures":3,"base":0,"terms":[{"coef":"1","word":["e0"]}]}"#;
        let t = TensorPoly::from_json_str(s).unwrap();
        assert_eq!(t.len(), 2);
    }
}
