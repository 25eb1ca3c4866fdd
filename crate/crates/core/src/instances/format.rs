// Copyright 2026 The groupfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Instance (`.gfi`) and allocation (`.gfa`) documents.
//!
//! Both are JSON objects written with sorted keys and one matrix row per
//! line. Integers are written bare and fractions as `"p/q"` strings. On input
//! an entry may also be a decimal, quoted or not; decimals are converted to
//! exact fractions, never to floats.

use serde_json::{Map, Value};

use crate::cgmms::CgmmsCertificate;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};
use crate::rational::Rational;

pub const INSTANCE_SCHEMA: &str = "groupfair-instance/1";
pub const ALLOCATION_SCHEMA: &str = "groupfair-allocation/1";

/// A parsed `.gfa` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllocationDocument {
    pub allocation: Allocation,
    pub certificate: Option<CgmmsCertificate>,
}

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::input(format!("{path}: {msg}"))
}

fn parse_object(text: &str, what: &str) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("malformed {what} document: {e}")))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(Error::input(format!(
            "{what} document must be a JSON object"
        ))),
    }
}

fn check_keys(
    map: &Map<String, Value>,
    schema: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<()> {
    for key in map.keys() {
        if key != "schema_version" && !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(at(key, "unknown field"));
        }
    }
    match map.get("schema_version") {
        Some(Value::String(s)) if s == schema => {}
        Some(Value::String(s)) => {
            return Err(at(
                "schema_version",
                format!("unsupported version {s:?}, expected {schema:?}"),
            ))
        }
        Some(_) => return Err(at("schema_version", "must be a string")),
        None => return Err(at("schema_version", "missing")),
    }
    for key in required {
        if !map.contains_key(*key) {
            return Err(at(key, "missing"));
        }
    }
    Ok(())
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| at(path, "expected a list"))
}

fn rational(value: &Value, path: &str) -> Result<Rational> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(at(path, "expected a number or a string such as \"5/3\"")),
    };
    if text.trim_start().starts_with('-') {
        return Err(at(path, format!("negative value {text}")));
    }
    text.parse::<Rational>().map_err(|e| at(path, e))
}

fn index(value: &Value, path: &str) -> Result<usize> {
    value
        .as_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| at(path, "expected a non-negative integer id"))
}

fn index_lists(value: &Value, path: &str) -> Result<Vec<Vec<usize>>> {
    array(value, path)?
        .iter()
        .enumerate()
        .map(|(p, list)| {
            let lp = format!("{path}[{p}]");
            array(list, &lp)?
                .iter()
                .enumerate()
                .map(|(j, x)| index(x, &format!("{lp}[{j}]")))
                .collect()
        })
        .collect()
}

fn rational_row(value: &Value, path: &str) -> Result<Vec<Rational>> {
    array(value, path)?
        .iter()
        .enumerate()
        .map(|(j, x)| rational(x, &format!("{path}[{j}]")))
        .collect()
}

fn labels(value: &Value, path: &str) -> Result<Vec<String>> {
    array(value, path)?
        .iter()
        .enumerate()
        .map(|(j, x)| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| at(&format!("{path}[{j}]"), "expected a string"))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let map = parse_object(text, "instance")?;
    check_keys(
        &map,
        INSTANCE_SCHEMA,
        &["groups", "agent_values", "allocator_values"],
        &["items", "agents"],
    )?;
    let groups = index_lists(&map["groups"], "groups")?;
    let agent_values = array(&map["agent_values"], "agent_values")?
        .iter()
        .enumerate()
        .map(|(i, r)| rational_row(r, &format!("agent_values[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let allocator_values = rational_row(&map["allocator_values"], "allocator_values")?;
    let mut inst = Instance::new(groups, agent_values, allocator_values)?;
    if let Some(items) = map.get("items") {
        inst = inst
            .with_item_labels(labels(items, "items")?)
            .map_err(|e| at("items", e))?;
    }
    if let Some(agents) = map.get("agents") {
        inst = inst
            .with_agent_labels(labels(agents, "agents")?)
            .map_err(|e| at("agents", e))?;
    }
    Ok(inst)
}

fn rational_token(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("\"{r}\"")
    }
}

fn inline<T>(xs: &[T], token: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = xs.iter().map(token).collect();
    format!("[{}]", parts.join(", "))
}

fn block(rows: &[String]) -> String {
    if rows.is_empty() {
        return "[]".into();
    }
    format!("[\n    {}\n  ]", rows.join(",\n    "))
}

fn string_token(s: &str) -> String {
    Value::String(s.to_owned()).to_string()
}

fn object(fields: Vec<(&str, String)>) -> String {
    let body: Vec<String> = fields
        .into_iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// Canonical text: sorted keys, fractions as strings, integers bare.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut fields = vec![(
        "agent_values",
        block(
            &inst
                .agent_values()
                .iter()
                .map(|r| inline(r, rational_token))
                .collect::<Vec<_>>(),
        ),
    )];
    if let Some(agents) = inst.agent_labels() {
        fields.push(("agents", inline(agents, |s| string_token(s))));
    }
    fields.push((
        "allocator_values",
        inline(inst.allocator_values(), rational_token),
    ));
    fields.push((
        "groups",
        block(
            &inst
                .groups()
                .iter()
                .map(|g| inline(g, usize::to_string))
                .collect::<Vec<_>>(),
        ),
    ));
    if let Some(items) = inst.item_labels() {
        fields.push(("items", inline(items, |s| string_token(s))));
    }
    fields.push(("schema_version", string_token(INSTANCE_SCHEMA)));
    object(fields)
}

fn certificate_text(c: &CgmmsCertificate) -> String {
    let quoted = |r: &Rational| format!("\"{r}\"");
    format!(
        "{{\"counts\": {}, \"extras\": {}, \"floor\": {}, \"level\": {}, \"value\": {}}}",
        inline(&c.counts, usize::to_string),
        inline(&c.extras, usize::to_string),
        c.floor,
        quoted(&c.level),
        quoted(&c.value),
    )
}

/// Empty bundles are written as `[]`, never omitted.
pub fn serialize_allocation(alloc: &Allocation, certificate: Option<&CgmmsCertificate>) -> String {
    let mut fields = vec![(
        "bundles",
        block(
            &alloc
                .bundles()
                .iter()
                .map(|b| inline(b, usize::to_string))
                .collect::<Vec<_>>(),
        ),
    )];
    if let Some(c) = certificate {
        fields.push(("certificate", certificate_text(c)));
    }
    fields.push(("schema_version", string_token(ALLOCATION_SCHEMA)));
    object(fields)
}

fn parse_certificate(value: &Value) -> Result<CgmmsCertificate> {
    let map = value
        .as_object()
        .ok_or_else(|| at("certificate", "expected an object"))?;
    let field = |name: &str| {
        map.get(name)
            .ok_or_else(|| at(&format!("certificate.{name}"), "missing"))
    };
    let list = |name: &str| -> Result<Vec<usize>> {
        let path = format!("certificate.{name}");
        array(field(name)?, &path)?
            .iter()
            .enumerate()
            .map(|(j, x)| index(x, &format!("{path}[{j}]")))
            .collect()
    };
    Ok(CgmmsCertificate {
        value: rational(field("value")?, "certificate.value")?,
        level: rational(field("level")?, "certificate.level")?,
        counts: list("counts")?,
        floor: index(field("floor")?, "certificate.floor")?,
        extras: list("extras")?,
    })
}

/// Parses a `.gfa` file. The bundles must partition `0..m` for some `m`;
/// matching against a particular instance is left to the caller.
pub fn parse_allocation(text: &str) -> Result<AllocationDocument> {
    let map = parse_object(text, "allocation")?;
    check_keys(&map, ALLOCATION_SCHEMA, &["bundles"], &["certificate"])?;
    let bundles = index_lists(&map["bundles"], "bundles")?;
    let m = bundles.iter().map(Vec::len).sum();
    let allocation = Allocation::new(m, bundles).map_err(|e| at("bundles", e))?;
    let certificate = map.get("certificate").map(parse_certificate).transpose()?;
    Ok(AllocationDocument {
        allocation,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::generate;
    use crate::model::ClassKind;
    use proptest::prelude::*;

    const MINIMAL: &str = r#"{"schema_version": "groupfair-instance/1",
        "groups": [[0]], "agent_values": [[1]], "allocator_values": [2]}"#;

    #[test]
    fn minimal_document() {
        let i = parse_instance(MINIMAL).unwrap();
        assert_eq!((i.n(), i.m(), i.k()), (1, 1, 1));
        assert_eq!(i.allocator_values()[0], Rational::from_integer(2));
    }

    #[test]
    fn decimals_are_exact() {
        let text = r#"{"schema_version": "groupfair-instance/1", "groups": [[0]],
            "agent_values": [["0.125", 0.125, "5/3"]], "allocator_values": [1, 2.50, 0]}"#;
        let i = parse_instance(text).unwrap();
        let eighth = Rational::new(1, 8).unwrap();
        assert_eq!(i.agent_row(0), &[eighth.clone(), eighth, Rational::new(5, 3).unwrap()]);
        assert_eq!(i.allocator_values()[1], Rational::new(5, 2).unwrap());
    }

    #[test]
    fn duplicate_agent_is_named() {
        let text = r#"{"schema_version": "groupfair-instance/1", "groups": [[0, 3], [1, 2, 3]],
            "agent_values": [[1], [1], [1], [1]], "allocator_values": [1]}"#;
        let err = parse_instance(text).unwrap_err().to_string();
        assert!(err.contains("agent 3"), "{err}");
    }

    #[test]
    fn diagnostics_name_the_field() {
        let neg = r#"{"schema_version": "groupfair-instance/1", "groups": [[0]],
            "agent_values": [[1, -2]], "allocator_values": [1, 1]}"#;
        let err = parse_instance(neg).unwrap_err().to_string();
        assert!(err.contains("agent_values[0][1]") && err.contains("negative"), "{err}");

        let dims = r#"{"schema_version": "groupfair-instance/1", "groups": [[0]],
            "agent_values": [[1, 2]], "allocator_values": [1]}"#;
        assert!(parse_instance(dims).unwrap_err().to_string().contains("agent_values[0]"));

        let syntax = "{\"schema_version\": \"groupfair-instance/1\",\n \"groups\": [[0]\n";
        assert!(parse_instance(syntax).unwrap_err().to_string().contains("line"));

        let missing = r#"{"groups": [[0]], "agent_values": [[1]], "allocator_values": [1]}"#;
        assert!(parse_instance(missing).unwrap_err().to_string().contains("schema_version"));

        let extra = MINIMAL.replace("\"groups\"", "\"colour\": 1, \"groups\"");
        assert!(parse_instance(&extra).unwrap_err().to_string().contains("colour"));
    }

    #[test]
    fn canonical_layout() {
        let i = parse_instance(
            r#"{"schema_version": "groupfair-instance/1", "groups": [[1], [0]],
                "agent_values": [[3, "10/6"], [1, 0]], "allocator_values": [2, 1],
                "items": ["apple", "pear"]}"#,
        )
        .unwrap();
        let text = serialize_instance(&i);
        assert_eq!(
            text,
            "{\n  \"agent_values\": [\n    [3, \"5/3\"],\n    [1, 0]\n  ],\n  \
             \"allocator_values\": [2, 1],\n  \"groups\": [\n    [1],\n    [0]\n  ],\n  \
             \"items\": [\"apple\", \"pear\"],\n  \"schema_version\": \"groupfair-instance/1\"\n}\n"
        );
        assert_eq!(parse_instance(&text).unwrap(), i);
    }

    #[test]
    fn empty_bundle_written_explicitly() {
        let a = Allocation::new(2, vec![vec![0, 1], vec![]]).unwrap();
        let text = serialize_allocation(&a, None);
        assert!(text.contains("[0, 1],\n    []"), "{text}");
        assert_eq!(parse_allocation(&text).unwrap().allocation, a);
    }

    #[test]
    fn certificate_round_trip() {
        let a = Allocation::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        let c = CgmmsCertificate {
            value: Rational::new(2, 3).unwrap(),
            level: Rational::one(),
            counts: vec![1, 2],
            floor: 0,
            extras: vec![1, 2],
        };
        let doc = parse_allocation(&serialize_allocation(&a, Some(&c))).unwrap();
        assert_eq!(doc.certificate, Some(c));
        assert_eq!(doc.allocation, a);
    }

    #[test]
    fn bad_allocations_rejected() {
        let dup = r#"{"schema_version": "groupfair-allocation/1", "bundles": [[0, 1], [1]]}"#;
        assert!(parse_allocation(dup).is_err());
        let gap = r#"{"schema_version": "groupfair-allocation/1", "bundles": [[0, 2]]}"#;
        assert!(parse_allocation(gap).is_err());
    }

    proptest! {
        #[test]
        fn generated_instances_round_trip(
            n in 1usize..6,
            m in 0usize..9,
            kind_ix in 0usize..3,
            seed: u64,
        ) {
            let kind = ClassKind::ALL[kind_ix];
            let k = 1 + (seed as usize) % n;
            let i = generate(kind, n, m, k, 10, seed).unwrap();
            prop_assert_eq!(parse_instance(&serialize_instance(&i)).unwrap(), i);
        }

        #[test]
        fn fractional_instances_round_trip(
            vals in proptest::collection::vec((0u64..50, 1u64..12), 6),
        ) {
            let r: Vec<Rational> = vals.iter().map(|&(p, q)| Rational::new(p, q).unwrap()).collect();
            let i = Instance::new(vec![vec![1], vec![0]], vec![r[..3].to_vec(), r[3..].to_vec()], r[..3].to_vec())
                .unwrap()
                .with_agent_labels(vec!["ann \"a\"".into(), "bo".into()])
                .unwrap();
            prop_assert_eq!(parse_instance(&serialize_instance(&i)).unwrap(), i);
        }
    }
}
