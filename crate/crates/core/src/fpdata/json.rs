use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fpdata::{Component, ComponentSet, Dataset, FixedPoint, FixedPointSet, WeightVector};

/// Parse a UTF-8 dataset document. Field paths are reported on both schema
/// and invariant errors.
pub fn parse_dataset(text: &str) -> Result<Dataset> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema {
        path: "$".to_string(),
        message: e.to_string(),
    })?;
    let obj = expect_object(&value, "$")?;
    let kind = expect_string(require(obj, "kind", "$")?, "kind")?;
    match kind {
        "points" => parse_points(obj),
        "components" => parse_components(obj),
        other => Err(Error::Schema {
            path: "kind".to_string(),
            message: format!("expected \"points\" or \"components\", found {other:?}"),
        }),
    }
}

fn parse_points(obj: &serde_json::Map<String, Value>) -> Result<Dataset> {
    check_keys(obj, &["kind", "rank", "half_dim", "points"], "$")?;
    let rank = expect_usize(require(obj, "rank", "$")?, "rank")?;
    let half_dim = expect_usize(require(obj, "half_dim", "$")?, "half_dim")?;
    let points_val = expect_array(require(obj, "points", "$")?, "points")?;
    let mut points = Vec::with_capacity(points_val.len());
    for (i, pv) in points_val.iter().enumerate() {
        let path = format!("points[{i}]");
        let pobj = expect_object(pv, &path)?;
        check_keys(pobj, &["name", "moment", "weights"], &path)?;
        let name = expect_string(require(pobj, "name", &path)?, &format!("{path}.name"))?;
        let moment = parse_int_vector(require(pobj, "moment", &path)?, &format!("{path}.moment"))?;
        let weights = parse_weight_list(
            require(pobj, "weights", &path)?,
            &format!("{path}.weights"),
        )?;
        points.push(FixedPoint::new(name, moment, weights));
    }
    Ok(Dataset::Points(FixedPointSet::new(rank, half_dim, points)?))
}

fn parse_components(obj: &serde_json::Map<String, Value>) -> Result<Dataset> {
    check_keys(obj, &["kind", "rank", "half_dim", "components"], "$")?;
    let rank = expect_usize(require(obj, "rank", "$")?, "rank")?;
    let half_dim = expect_usize(require(obj, "half_dim", "$")?, "half_dim")?;
    let comp_val = expect_array(require(obj, "components", "$")?, "components")?;
    let mut components = Vec::with_capacity(comp_val.len());
    for (i, cv) in comp_val.iter().enumerate() {
        let path = format!("components[{i}]");
        let cobj = expect_object(cv, &path)?;
        check_keys(
            cobj,
            &["name", "moment", "weights", "char_numbers"],
            &path,
        )?;
        let name = expect_string(require(cobj, "name", &path)?, &format!("{path}.name"))?;
        let moment = parse_int_vector(require(cobj, "moment", &path)?, &format!("{path}.moment"))?;
        let weights = parse_weight_list(
            require(cobj, "weights", &path)?,
            &format!("{path}.weights"),
        )?;
        let mut char_numbers = BTreeMap::new();
        if let Some(raw) = cobj.get("char_numbers") {
            let cpath = format!("{path}.char_numbers");
            let cmap = expect_object(raw, &cpath)?;
            for (key, val) in cmap {
                let kpath = format!("{cpath}[{key:?}]");
                let tuple = parse_tuple_key(key, &kpath)?;
                let rational = parse_rational(val, &kpath)?;
                if char_numbers.insert(tuple, rational).is_some() {
                    return Err(Error::Schema {
                        path: kpath,
                        message: "duplicate exponent tuple".to_string(),
                    });
                }
            }
        }
        components.push(Component::new(name, moment, weights, char_numbers));
    }
    Ok(Dataset::Components(ComponentSet::new(
        rank, half_dim, components,
    )?))
}

fn parse_weight_list(value: &Value, path: &str) -> Result<Vec<WeightVector>> {
    let rows = expect_array(value, path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (j, row) in rows.iter().enumerate() {
        let wpath = format!("{path}[{j}]");
        let entries = parse_int_vector(row, &wpath)?;
        if entries.iter().all(|x| x.is_zero()) {
            return Err(Error::Invariant {
                path: wpath,
                message: "zero weight vector".to_string(),
            });
        }
        out.push(WeightVector::new(entries).expect("nonzero checked"));
    }
    Ok(out)
}

fn parse_int_vector(value: &Value, path: &str) -> Result<Vec<BigInt>> {
    let items = expect_array(value, path)?;
    items
        .iter()
        .enumerate()
        .map(|(k, item)| expect_bigint(item, &format!("{path}[{k}]")))
        .collect()
}

fn parse_tuple_key(key: &str, path: &str) -> Result<Vec<usize>> {
    if key.is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| Error::Schema {
                path: path.to_string(),
                message: format!("tuple entry {part:?} is not a natural number"),
            })
        })
        .collect()
}

fn parse_rational(value: &Value, path: &str) -> Result<BigRational> {
    let text = expect_string(value, path)?;
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = num_text.parse().map_err(|_| Error::Schema {
        path: path.to_string(),
        message: format!("invalid rational numerator {num_text:?}"),
    })?;
    let denom: BigInt = den_text.parse().map_err(|_| Error::Schema {
        path: path.to_string(),
        message: format!("invalid rational denominator {den_text:?}"),
    })?;
    if !denom.is_positive() {
        return Err(Error::Schema {
            path: path.to_string(),
            message: "rational denominator must be positive".to_string(),
        });
    }
    if text.contains('/') && numer.gcd(&denom) != BigInt::one() {
        return Err(Error::Schema {
            path: path.to_string(),
            message: format!("rational {text:?} is not in lowest terms"),
        });
    }
    Ok(BigRational::new(numer, denom))
}

/// Serialize with the fixed field order of the schema. Output is compact
/// and byte-deterministic; rationals are written as reduced `p/q`.
pub fn serialize_dataset(dataset: &Dataset) -> String {
    let mut out = String::new();
    match dataset {
        Dataset::Points(d) => {
            out.push_str(&format!(
                "{{\"kind\":\"points\",\"rank\":{},\"half_dim\":{},\"points\":[",
                d.rank(),
                d.half_dim()
            ));
            for (i, p) in d.points().iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!(
                    "{{\"name\":{},\"moment\":{},\"weights\":{}}}",
                    json_string(p.name()),
                    int_vector(p.moment()),
                    weight_list(p.weights())
                ));
            }
            out.push_str("]}");
        }
        Dataset::Components(d) => {
            out.push_str(&format!(
                "{{\"kind\":\"components\",\"rank\":{},\"half_dim\":{},\"components\":[",
                d.rank(),
                d.half_dim()
            ));
            for (i, c) in d.components().iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!(
                    "{{\"name\":{},\"moment\":{},\"weights\":{},\"char_numbers\":{{",
                    json_string(c.name()),
                    int_vector(c.moment()),
                    weight_list(c.weights())
                ));
                for (j, (tuple, value)) in c.char_numbers().iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    let key: Vec<String> = tuple.iter().map(|n| n.to_string()).collect();
                    out.push_str(&format!(
                        "{}:{}",
                        json_string(&key.join(",")),
                        json_string(&format!("{}/{}", value.numer(), value.denom()))
                    ));
                }
                out.push_str("}}");
            }
            out.push_str("]}");
        }
    }
    out
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn int_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn weight_list(ws: &[WeightVector]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| int_vector(w.entries())).collect();
    format!("[{}]", parts.join(","))
}

fn expect_object<'a>(value: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>> {
    value.as_object().ok_or_else(|| Error::Schema {
        path: path.to_string(),
        message: "expected an object".to_string(),
    })
}

fn expect_array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| Error::Schema {
        path: path.to_string(),
        message: "expected an array".to_string(),
    })
}

fn expect_string<'a>(value: &'a Value, path: &str) -> Result<&'a str> {
    value.as_str().ok_or_else(|| Error::Schema {
        path: path.to_string(),
        message: "expected a string".to_string(),
    })
}

fn expect_bigint(value: &Value, path: &str) -> Result<BigInt> {
    let number = match value {
        Value::Number(n) => n.to_string(),
        _ => {
            return Err(Error::Schema {
                path: path.to_string(),
                message: "expected an integer".to_string(),
            })
        }
    };
    if !is_integer_literal(&number) {
        return Err(Error::Schema {
            path: path.to_string(),
            message: format!("expected an integer, found {number}"),
        });
    }
    number.parse().map_err(|_| Error::Schema {
        path: path.to_string(),
        message: format!("invalid integer {number}"),
    })
}

fn expect_usize(value: &Value, path: &str) -> Result<usize> {
    let big = expect_bigint(value, path)?;
    if big.is_negative() {
        return Err(Error::Schema {
            path: path.to_string(),
            message: "expected a nonnegative integer".to_string(),
        });
    }
    big.to_string().parse().map_err(|_| Error::Schema {
        path: path.to_string(),
        message: "integer out of range".to_string(),
    })
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn require<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Schema {
        path: format!("{path}.{key}"),
        message: "missing field".to_string(),
    })
}

fn check_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::Schema {
                path: format!("{path}.{key}"),
                message: "unexpected field".to_string(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = r#"{"kind":"points","rank":1,"half_dim":2,"points":[
        {"name":"p","moment":[0],"weights":[[2],[1]]},
        {"name":"q","moment":[2],"weights":[[-2],[-1]]},
        {"name":"r","moment":[1],"weights":[[1],[-1]]}]}"#;

    #[test]
    fn parses_circle_dataset() {
        let Dataset::Points(d) = parse_dataset(EX1).unwrap() else {
            panic!("expected points dataset");
        };
        assert_eq!(d.rank(), 1);
        assert_eq!(d.half_dim(), 2);
        let names: Vec<&str> = d.points().iter().map(|p| p.name()).collect();
        assert_eq!(names, ["p", "q", "r"]);
        assert_eq!(d.point(1).moment()[0], BigInt::from(2));
        assert_eq!(d.point(2).weights()[1].entries()[0], BigInt::from(-1));
    }

    #[test]
    fn zero_weight_is_invariant_error_with_path() {
        let doc = r#"{"kind":"points","rank":1,"half_dim":1,"points":[
            {"name":"p","moment":[0],"weights":[[0]]}]}"#;
        let err = parse_dataset(doc).unwrap_err();
        assert_eq!(
            err,
            Error::Invariant {
                path: "points[0].weights[0]".to_string(),
                message: "zero weight vector".to_string()
            }
        );
    }

    #[test]
    fn weight_count_mismatch_is_invariant_error() {
        let doc = r#"{"kind":"points","rank":1,"half_dim":2,"points":[
            {"name":"p","moment":[0],"weights":[[1]]}]}"#;
        let err = parse_dataset(doc).unwrap_err();
        assert!(matches!(err, Error::Invariant { ref path, .. } if path == "points[0].weights"));
    }

    #[test]
    fn round_trip_points() {
        let d = parse_dataset(EX1).unwrap();
        let text = serialize_dataset(&d);
        assert_eq!(parse_dataset(&text).unwrap(), d);
        // serialization of the canonical form is a fixed point
        assert_eq!(serialize_dataset(&parse_dataset(&text).unwrap()), text);
    }

    #[test]
    fn round_trip_components() {
        let doc = r#"{"kind":"components","rank":1,"half_dim":2,"components":[
            {"name":"q","moment":[0],"weights":[[1],[1]],"char_numbers":{}},
            {"name":"F","moment":[1],"weights":[[-1]],"char_numbers":{"0":"0/1","1":"-1/1"}}]}"#;
        let d = parse_dataset(doc).unwrap();
        let text = serialize_dataset(&d);
        assert_eq!(parse_dataset(&text).unwrap(), d);
    }

    #[test]
    fn unreduced_rational_rejected() {
        let doc = r#"{"kind":"components","rank":1,"half_dim":1,"components":[
            {"name":"F","moment":[0],"weights":[[1]],"char_numbers":{"0":"2/4"}}]}"#;
        assert!(matches!(parse_dataset(doc), Err(Error::Schema { .. })));
    }

    #[test]
    fn float_moment_rejected() {
        let doc = r#"{"kind":"points","rank":1,"half_dim":1,"points":[
            {"name":"p","moment":[0.5],"weights":[[1]]}]}"#;
        let err = parse_dataset(doc).unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "points[0].moment[0]"));
    }

    #[test]
    fn big_integers_survive_exactly() {
        let big = "123456789012345678901234567890";
        let doc = format!(
            r#"{{"kind":"points","rank":1,"half_dim":1,"points":[
                {{"name":"p","moment":[{big}],"weights":[[1]]}}]}}"#
        );
        let Dataset::Points(d) = parse_dataset(&doc).unwrap() else {
            panic!()
        };
        assert_eq!(d.point(0).moment()[0].to_string(), big);
    }

    mod roundtrip {
        use super::*;
        use crate::fpdata::{FixedPoint, FixedPointSet, WeightVector};
        use proptest::prelude::*;

        fn dataset_strategy() -> impl Strategy<Value = Dataset> {
            (1usize..=3, 1usize..=3, 1usize..=4).prop_flat_map(|(rank, half_dim, count)| {
                let point = (
                    prop::collection::vec(-99i64..=99, rank),
                    prop::collection::vec(
                        prop::collection::vec(-9i64..=9, rank)
                            .prop_filter("nonzero weight", |w| w.iter().any(|&x| x != 0)),
                        half_dim,
                    ),
                );
                prop::collection::vec(point, count).prop_map(move |points| {
                    let points: Vec<FixedPoint> = points
                        .into_iter()
                        .enumerate()
                        .map(|(i, (moment, weights))| {
                            FixedPoint::new(
                                format!("pt{i}"),
                                moment.into_iter().map(BigInt::from).collect(),
                                weights
                                    .into_iter()
                                    .map(|w| {
                                        WeightVector::new(
                                            w.into_iter().map(BigInt::from).collect(),
                                        )
                                        .unwrap()
                                    })
                                    .collect(),
                            )
                        })
                        .collect();
                    Dataset::Points(FixedPointSet::new(rank, half_dim, points).unwrap())
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn parse_inverts_serialize(dataset in dataset_strategy()) {
                let text = serialize_dataset(&dataset);
                prop_assert_eq!(parse_dataset(&text).unwrap(), dataset);
            }
        }
    }
}
