//! Reading monoid descriptors and element literals; writing posets,
//! complexes, Betti vectors and tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusComplex, PoincareTable};
use crate::homology::{BettiVector, SimplicialComplex};
use crate::monoid::{Element, Monoid, MonoidDescriptor};

#[derive(Deserialize)]
struct FreeInput {
    rank: usize,
}

#[derive(Deserialize)]
struct SubmonoidInput {
    ambient_rank: usize,
    generators: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct GluedInput {
    left: Value,
    right: Value,
    rho1: Value,
    rho2: Value,
}

#[derive(Deserialize)]
struct AdjoinRootInput {
    base: Value,
    rho: Value,
    r: u64,
}

fn json_path(base: &str, p: &serde_path_to_error::Path) -> String {
    let s = p.to_string();
    if s == "." {
        base.to_string()
    } else if s.starts_with('[') {
        format!("{base}{s}")
    } else {
        format!("{base}.{s}")
    }
}

fn fields<T: serde::de::DeserializeOwned>(value: &Value, path: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| Error::Parse {
        path: json_path(path, e.path()),
        message: e.inner().to_string(),
    })
}

/// Parses a descriptor document, reporting failures with a JSON path.
pub fn parse_descriptor(text: &str) -> Result<MonoidDescriptor> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value: Value = serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: json_path("$", e.path()),
        message: e.inner().to_string(),
    })?;
    let desc = lower(&value, "$")?;
    Monoid::new(desc.clone())?;
    Ok(desc)
}

pub fn read_descriptor(path: &std::path::Path) -> Result<MonoidDescriptor> {
    parse_descriptor(&std::fs::read_to_string(path)?)
}

fn rebase(err: Error, path: &str, renames: &[(&str, &str)]) -> Error {
    match err {
        Error::InvalidMonoid { path: inner, message } => {
            let rest = inner.strip_prefix('$').unwrap_or(&inner);
            let mut rest = rest.to_string();
            for (from, to) in renames {
                if let Some(tail) = rest.strip_prefix(from) {
                    rest = format!("{to}{tail}");
                    break;
                }
            }
            Error::invalid_monoid(format!("{path}{rest}"), message)
        }
        other => other,
    }
}

fn lower(value: &Value, path: &str) -> Result<MonoidDescriptor> {
    let kind = value.get("type").and_then(Value::as_str).ok_or_else(|| {
        bad(
            &format!("{path}.type"),
            "expected one of free, submonoid, glued, adjoin_root",
        )
    })?;
    Ok(match kind {
        "free" => MonoidDescriptor::free(fields::<FreeInput>(value, path)?.rank),
        "submonoid" => {
            let s: SubmonoidInput = fields(value, path)?;
            MonoidDescriptor::submonoid(s.ambient_rank, s.generators)
        }
        "glued" => {
            let g: GluedInput = fields(value, path)?;
            let (lp, rp) = (format!("{path}.left"), format!("{path}.right"));
            let l = lower(&g.left, &lp)?;
            let r = lower(&g.right, &rp)?;
            let lm = Monoid::new(l.clone()).map_err(|e| rebase(e, &lp, &[]))?;
            let rm = Monoid::new(r.clone()).map_err(|e| rebase(e, &rp, &[]))?;
            let rho1 = element_from_value(&lm, &g.rho1, &format!("{path}.rho1"))?;
            let rho2 = element_from_value(&rm, &g.rho2, &format!("{path}.rho2"))?;
            let desc = MonoidDescriptor::glued(l, r, rho1, rho2);
            Monoid::new(desc.clone()).map_err(|e| rebase(e, path, &[]))?;
            desc
        }
        "adjoin_root" => {
            let a: AdjoinRootInput = fields(value, path)?;
            let bp = format!("{path}.base");
            let b = lower(&a.base, &bp)?;
            let bm = Monoid::new(b.clone()).map_err(|e| rebase(e, &bp, &[]))?;
            let rho = element_from_value(&bm, &a.rho, &format!("{path}.rho"))?;
            let desc = MonoidDescriptor::adjoin_root(b, rho, a.r)
                .map_err(|e| Error::invalid_monoid(format!("{path}.r"), e.to_string()))?;
            Monoid::new(desc.clone())
                .map_err(|e| rebase(e, path, &[(".left", ".base"), (".rho1", ".rho"), (".rho2", ".r")]))?;
            desc
        }
        other => return Err(bad(&format!("{path}.type"), format!("unknown monoid type {other:?}"))),
    })
}

/// Parses an element literal: a JSON array (or bare integer) for vector
/// monoids; for glued monoids a normal form `{"n":k,"hat1":..,"hat2":..}`
/// or a raw pair `{"x1":..,"x2":..}` / `[x1, x2]` that gets normalized.
pub fn parse_element(monoid: &Monoid, text: &str) -> Result<Element> {
    let value: Value = serde_json::from_str(text.trim())
        .map_err(|e| Error::InvalidElement(format!("{text:?} is not a JSON literal: {e}")))?;
    element_from_value(monoid, &value, "$")
}

fn bad(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn element_from_value(monoid: &Monoid, value: &Value, path: &str) -> Result<Element> {
    let elem = if monoid.is_glued() {
        let (left, right) = (monoid.left().expect("glued"), monoid.right().expect("glued"));
        match value {
            Value::Object(map) if map.contains_key("n") => {
                let n = map
                    .get("n")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad(&format!("{path}.n"), "expected a natural number"))?;
                let get = |k: &str| map.get(k).ok_or_else(|| bad(path, format!("missing field {k}")));
                let hat1 = element_from_value(left, get("hat1")?, &format!("{path}.hat1"))?;
                let hat2 = element_from_value(right, get("hat2")?, &format!("{path}.hat2"))?;
                Element::glued(n, hat1, hat2)
            }
            Value::Object(map) => {
                let get = |k: &str| map.get(k).ok_or_else(|| bad(path, format!("missing field {k}")));
                let x1 = element_from_value(left, get("x1")?, &format!("{path}.x1"))?;
                let x2 = element_from_value(right, get("x2")?, &format!("{path}.x2"))?;
                monoid.normalize_pair(x1, x2)?
            }
            Value::Array(items) if items.len() == 2 => {
                let x1 = element_from_value(left, &items[0], &format!("{path}[0]"))?;
                let x2 = element_from_value(right, &items[1], &format!("{path}[1]"))?;
                monoid.normalize_pair(x1, x2)?
            }
            _ => return Err(bad(path, "expected {n, hat1, hat2}, {x1, x2} or [x1, x2]")),
        }
    } else {
        match value {
            Value::Number(_) => Element::vector(vec![value
                .as_u64()
                .ok_or_else(|| bad(path, "expected a natural number"))?]),
            Value::Array(items) => Element::vector(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        x.as_u64()
                            .ok_or_else(|| bad(&format!("{path}[{i}]"), "expected a natural number"))
                    })
                    .collect::<Result<Vec<u64>>>()?,
            ),
            _ => return Err(bad(path, "expected an array of natural numbers")),
        }
    };
    monoid.validate(&elem).map_err(|e| bad(path, e.to_string()))?;
    Ok(elem)
}

/// `{vertices, facets}`, with a flag for the formal `S^-2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub formal_s2: bool,
}

pub fn complex_file(c: &FrobeniusComplex) -> ComplexFile {
    match c {
        FrobeniusComplex::FormalS2 => ComplexFile {
            formal_s2: true,
            ..Default::default()
        },
        FrobeniusComplex::Complex(k) => ComplexFile {
            vertices: k.labels().to_vec(),
            facets: k.facets(),
            formal_s2: false,
        },
    }
}

pub fn complex_from_file(file: ComplexFile, cap: usize) -> Result<FrobeniusComplex> {
    if file.formal_s2 {
        return Ok(FrobeniusComplex::FormalS2);
    }
    Ok(FrobeniusComplex::Complex(SimplicialComplex::from_facets(
        file.vertices,
        &file.facets,
        cap,
    )?))
}

pub fn complex_from_json(text: &str, cap: usize) -> Result<FrobeniusComplex> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ComplexFile = serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: json_path("$", e.path()),
        message: e.inner().to_string(),
    })?;
    complex_from_file(file, cap)
}

/// One simplex per line: `dimension: labels...`.
pub fn face_list(c: &FrobeniusComplex) -> String {
    let mut s = String::new();
    match c {
        FrobeniusComplex::FormalS2 => s.push_str("S^-2\n"),
        FrobeniusComplex::Complex(k) => {
            if k.is_empty() {
                s.push_str("empty\n");
            }
            for d in 0..=k.dimension().max(-1) {
                for simplex in k.simplices(d as usize) {
                    let names: Vec<&str> = simplex.iter().map(|&v| k.labels()[v as usize].as_str()).collect();
                    let _ = writeln!(s, "{d}: {}", names.join(" "));
                }
            }
        }
    }
    s
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 csv")
}

/// Rows `element,i,beta_i`, nonzero entries only.
pub fn betti_csv(rows: &[(Element, BettiVector)]) -> String {
    csv_string(|w| {
        w.write_record(["element", "i", "beta_i"])?;
        for (e, b) in rows {
            for (i, v) in b.nonzero() {
                w.write_record([e.to_string(), i.to_string(), v.to_string()])?;
            }
        }
        Ok(())
    })
}

/// Rows `degree,element,i,beta_i`, nonzero entries only.
pub fn table_csv(t: &PoincareTable) -> String {
    csv_string(|w| {
        w.write_record(["degree", "element", "i", "beta_i"])?;
        for (d, e, b) in t.iter() {
            for (i, v) in b.nonzero() {
                w.write_record([d.to_string(), e.to_string(), i.to_string(), v.to_string()])?;
            }
        }
        Ok(())
    })
}

pub fn table_text(t: &PoincareTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "degree bound {} over {}", t.degree_bound, t.field);
    for (d, e, b) in t.iter() {
        let terms: Vec<String> = b
            .nonzero()
            .map(|(i, v)| {
                let coef = if v == 1 { String::new() } else { v.to_string() };
                format!("{coef}t^{i}")
            })
            .collect();
        let _ = writeln!(s, "{d:>4}  {e:<16} {}", terms.join(" + "));
    }
    s
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_descriptor_shapes() {
        let free = parse_descriptor(r#"{"type":"free","rank":2}"#).unwrap();
        assert_eq!(free, MonoidDescriptor::free(2));
        let sub = parse_descriptor(r#"{"type":"submonoid","ambient_rank":1,"generators":[[2],[3]]}"#).unwrap();
        assert_eq!(sub, MonoidDescriptor::numerical(&[2, 3]));
        let glued = parse_descriptor(
            r#"{"type":"glued","left":{"type":"free","rank":1},"right":{"type":"free","rank":1},"rho1":[3],"rho2":[2]}"#,
        )
        .unwrap();
        let root =
            parse_descriptor(r#"{"type":"adjoin_root","base":{"type":"free","rank":1},"rho":[3],"r":2}"#).unwrap();
        assert_eq!(glued, root);
    }

    #[test]
    fn parse_errors_name_the_path() {
        let err = parse_descriptor(
            r#"{"type":"glued","left":{"type":"free","rank":"x"},"right":{"type":"free","rank":1},"rho1":[2],"rho2":[2]}"#,
        )
        .unwrap_err();
        let Error::Parse { path, .. } = err else {
            panic!("{err:?}")
        };
        assert_eq!(path, "$.left.rank");
        let err = parse_descriptor(r#"{"type":"submonoid","ambient_rank":1,"generators":[[2],["a"]]}"#).unwrap_err();
        let Error::Parse { path, .. } = err else {
            panic!("{err:?}")
        };
        assert_eq!(path, "$.generators[1][0]");
        let err = parse_descriptor(r#"{"type":"glued","left":{"type":"free","rank":1}}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
        let err = parse_descriptor(
            r#"{"type":"glued","left":{"type":"free","rank":1},"right":{"type":"free","rank":1},"rho1":[1],"rho2":[2]}"#,
        )
        .unwrap_err();
        match err {
            Error::InvalidMonoid { path, .. } => assert_eq!(path, "$.rho1"),
            other => panic!("{other:?}"),
        }
        let err =
            parse_descriptor(r#"{"type":"adjoin_root","base":{"type":"free","rank":1},"rho":[1],"r":2}"#).unwrap_err();
        match err {
            Error::InvalidMonoid { path, .. } => assert_eq!(path, "$.rho"),
            other => panic!("{other:?}"),
        }
        let err =
            parse_descriptor(r#"{"type":"adjoin_root","base":{"type":"free","rank":1},"rho":[3],"r":1}"#).unwrap_err();
        match err {
            Error::InvalidMonoid { path, .. } => assert_eq!(path, "$.r"),
            other => panic!("{other:?}"),
        }
        let err = parse_descriptor(r#"{"type":"submonoid","ambient_rank":2,"generators":[[1,0],[0,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidMonoid { .. }), "{err:?}");
    }

    #[test]
    fn element_literals() {
        let gm = Monoid::adjoin_root(MonoidDescriptor::free(1), Element::vector(vec![3]), 2).unwrap();
        let canon = parse_element(&gm, r#"{"n":1,"hat1":[1],"hat2":[0]}"#).unwrap();
        assert_eq!(
            canon,
            Element::glued(1, Element::vector(vec![1]), Element::vector(vec![0]))
        );
        assert_eq!(parse_element(&gm, r#"{"x1":[4],"x2":[0]}"#).unwrap(), canon);
        // 2u + v is already reduced
        assert_eq!(
            parse_element(&gm, "[[2],[1]]").unwrap(),
            Element::glued(0, Element::vector(vec![2]), Element::vector(vec![1]))
        );
        assert_eq!(
            parse_element(&gm, "[[5],[3]]").unwrap(),
            Element::glued(2, Element::vector(vec![2]), Element::vector(vec![1]))
        );
        assert!(parse_element(&gm, r#"{"n":0,"hat1":[4],"hat2":[0]}"#).is_err());
        let m = Monoid::numerical(&[2, 3]).unwrap();
        assert_eq!(parse_element(&m, "[6]").unwrap(), Element::vector(vec![6]));
        assert_eq!(parse_element(&m, "6").unwrap(), Element::vector(vec![6]));
        assert!(parse_element(&m, "[1]").is_err());
    }

    #[test]
    fn csv_quotes_vector_labels() {
        let rows = vec![(Element::vector(vec![1, 1]), BettiVector::delta(2))];
        assert_eq!(betti_csv(&rows), "element,i,beta_i\n\"(1,1)\",2,1\n");
        let rows = vec![(Element::vector(vec![6]), BettiVector::delta(2))];
        assert_eq!(betti_csv(&rows), "element,i,beta_i\n6,2,1\n");
    }

    #[test]
    fn complex_round_trip() {
        let m = Monoid::numerical(&[2, 3]).unwrap();
        let lam = Element::vector(vec![9]);
        let c = crate::frobenius::frobenius_complex(&m, &lam, 1000).unwrap();
        let text = to_json(&complex_file(&c));
        let back = complex_from_json(&text, 1000).unwrap();
        assert_eq!(back, c);
        let zero = crate::frobenius::frobenius_complex(&m, &Element::vector(vec![0]), 10).unwrap();
        let back = complex_from_json(&to_json(&complex_file(&zero)), 10).unwrap();
        assert_eq!(back, FrobeniusComplex::FormalS2);
    }
}
