//! JSON encoding of [`DomainSpec`].

use serde_json::{json, Map, Value};

use super::{DomainSpec, FootFingersParams, DEFAULT_COMB_TEETH};
use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Parses a JSON domain document.
pub fn parse_domain(text: &str) -> Result<DomainSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    let spec = spec_from_value(&value, "$")?;
    spec.validate()?;
    Ok(spec)
}

/// Structural decoding without invariant checks.
pub fn spec_from_value(v: &Value, path: &str) -> Result<DomainSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(path, "expected an object"))?;
    let ty = obj
        .get("type")
        .ok_or_else(|| Error::parse(path, "missing field 'type'"))?
        .as_str()
        .ok_or_else(|| Error::parse(format!("{path}.type"), "expected a string"))?;
    let fields = Fields { obj, path };
    let spec = match ty {
        "disk" => {
            fields.only(&["center", "radius"])?;
            DomainSpec::Disk {
                center: fields.point("center")?,
                radius: fields.number("radius")?,
            }
        }
        "rect" => {
            fields.only(&["min", "max"])?;
            DomainSpec::Rect {
                min: fields.point("min")?,
                max: fields.point("max")?,
            }
        }
        "polygon" => {
            fields.only(&["vertices"])?;
            let arr = fields.array("vertices")?;
            let vertices = arr
                .iter()
                .enumerate()
                .map(|(i, p)| point_from_value(p, &format!("{path}.vertices[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            DomainSpec::Polygon { vertices }
        }
        "union" => {
            fields.only(&["parts"])?;
            let parts = fields
                .array("parts")?
                .iter()
                .enumerate()
                .map(|(i, p)| spec_from_value(p, &format!("{path}.parts[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            DomainSpec::Union { parts }
        }
        "difference" => {
            fields.only(&["base", "holes"])?;
            let base = spec_from_value(fields.get("base")?, &format!("{path}.base"))?;
            let holes = fields
                .array("holes")?
                .iter()
                .enumerate()
                .map(|(i, h)| spec_from_value(h, &format!("{path}.holes[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            DomainSpec::Difference {
                base: Box::new(base),
                holes,
            }
        }
        "slits" => {
            fields.only(&["base", "segments"])?;
            let base = spec_from_value(fields.get("base")?, &format!("{path}.base"))?;
            let slits = fields
                .array("segments")?
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let sp = format!("{path}.segments[{i}]");
                    let pair = s
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| Error::parse(&sp, "expected a pair of points"))?;
                    Ok((
                        point_from_value(&pair[0], &format!("{sp}[0]"))?,
                        point_from_value(&pair[1], &format!("{sp}[1]"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            DomainSpec::SlitSet {
                base: Box::new(base),
                slits,
            }
        }
        "foot_fingers" => {
            fields.only(&["alpha", "beta", "m_max", "r0", "decay"])?;
            let defaults = FootFingersParams::default();
            DomainSpec::FootFingers(FootFingersParams {
                alpha: fields.number("alpha")?,
                beta: fields.number("beta")?,
                m_max: fields.opt_count("m_max")?.unwrap_or(defaults.m_max),
                r0: fields.opt_number("r0")?.unwrap_or(defaults.r0),
                decay: fields.opt_number("decay")?.unwrap_or(defaults.decay),
            })
        }
        "comb" => {
            fields.only(&["teeth"])?;
            DomainSpec::Comb {
                teeth: fields.opt_count("teeth")?.unwrap_or(DEFAULT_COMB_TEETH),
            }
        }
        other => return Err(Error::parse(format!("{path}.type"), format!("unknown domain type '{other}'"))),
    };
    Ok(spec)
}

pub fn spec_to_value(spec: &DomainSpec) -> Value {
    match spec {
        DomainSpec::Disk { center, radius } => json!({"type": "disk", "center": pt(*center), "radius": radius}),
        DomainSpec::Rect { min, max } => json!({"type": "rect", "min": pt(*min), "max": pt(*max)}),
        DomainSpec::Polygon { vertices } => {
            json!({"type": "polygon", "vertices": vertices.iter().map(|p| pt(*p)).collect::<Vec<_>>()})
        }
        DomainSpec::Union { parts } => {
            json!({"type": "union", "parts": parts.iter().map(spec_to_value).collect::<Vec<_>>()})
        }
        DomainSpec::Difference { base, holes } => json!({
            "type": "difference",
            "base": spec_to_value(base),
            "holes": holes.iter().map(spec_to_value).collect::<Vec<_>>(),
        }),
        DomainSpec::SlitSet { base, slits } => json!({
            "type": "slits",
            "base": spec_to_value(base),
            "segments": slits.iter().map(|(a, b)| json!([pt(*a), pt(*b)])).collect::<Vec<_>>(),
        }),
        DomainSpec::FootFingers(p) => json!({
            "type": "foot_fingers",
            "alpha": p.alpha,
            "beta": p.beta,
            "m_max": p.m_max,
            "r0": p.r0,
            "decay": p.decay,
        }),
        DomainSpec::Comb { teeth } => json!({"type": "comb", "teeth": teeth}),
    }
}

fn pt(p: Point2) -> Value {
    json!([p.x, p.y])
}

/// Parses `[x, y]` with finite coordinates.
pub fn point_from_value(v: &Value, path: &str) -> Result<Point2> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::parse(path, "expected [x, y]"))?;
    let x = finite(&arr[0], &format!("{path}[0]"))?;
    let y = finite(&arr[1], &format!("{path}[1]"))?;
    Ok(Point2::new(x, y))
}

fn finite(v: &Value, path: &str) -> Result<f64> {
    let x = v.as_f64().ok_or_else(|| Error::parse(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(Error::parse(path, "number is not finite"));
    }
    Ok(x)
}

struct Fields<'a> {
    obj: &'a Map<String, Value>,
    path: &'a str,
}

impl<'a> Fields<'a> {
    fn only(&self, allowed: &[&str]) -> Result<()> {
        for key in self.obj.keys() {
            if key != "type" && !allowed.contains(&key.as_str()) {
                return Err(Error::parse(format!("{}.{key}", self.path), "unknown field"));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Result<&'a Value> {
        self.obj
            .get(key)
            .ok_or_else(|| Error::parse(self.path, format!("missing field '{key}'")))
    }

    fn sub(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn number(&self, key: &str) -> Result<f64> {
        finite(self.get(key)?, &self.sub(key))
    }

    fn opt_number(&self, key: &str) -> Result<Option<f64>> {
        self.obj.get(key).map(|v| finite(v, &self.sub(key))).transpose()
    }

    fn opt_count(&self, key: &str) -> Result<Option<u32>> {
        self.obj
            .get(key)
            .map(|v| {
                v.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| Error::parse(self.sub(key), "expected a non-negative integer"))
            })
            .transpose()
    }

    fn point(&self, key: &str) -> Result<Point2> {
        point_from_value(self.get(key)?, &self.sub(key))
    }

    fn array(&self, key: &str) -> Result<&'a Vec<Value>> {
        self.get(key)?
            .as_array()
            .ok_or_else(|| Error::parse(self.sub(key), "expected an array"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_maps_fields() {
        let spec = parse_domain(r#"{"type":"disk","center":[0,0],"radius":1}"#).unwrap();
        assert_eq!(
            spec,
            DomainSpec::Disk {
                center: Point2::ORIGIN,
                radius: 1.0
            }
        );
    }

    #[test]
    fn difference_node() {
        let spec = parse_domain(
            r#"{"type":"difference","base":{"type":"disk","center":[0,0],"radius":1},
                "holes":[{"type":"disk","center":[0.3,0],"radius":0.1}]}"#,
        )
        .unwrap();
        match spec {
            DomainSpec::Difference { base, holes } => {
                assert!(matches!(*base, DomainSpec::Disk { .. }));
                assert_eq!(holes.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn foot_fingers_requires_alpha_above_beta() {
        let err = parse_domain(r#"{"type":"foot_fingers","alpha":1.0,"beta":1.0,"m_max":3,"r0":0.125,"decay":0.5}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Constraint(_)), "{err:?}");
    }

    #[test]
    fn error_names_offending_path() {
        let err = parse_domain(r#"{"type":"union","parts":[{"type":"disk","center":[0,"a"],"radius":1}]}"#)
            .unwrap_err();
        match err {
            Error::Parse { path, .. } => assert_eq!(path, "$.parts[0].center[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_domain(r#"{"type":"disk","center":[0,0],"radius":1,"colour":"red"}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "$.colour"));
    }

    #[test]
    fn slit_schema() {
        let spec =
            parse_domain(r#"{"type":"slits","base":{"type":"disk","center":[0,0],"radius":1},"segments":[[[0,0],[1,0]]]}"#)
                .unwrap();
        assert!(matches!(spec, DomainSpec::SlitSet { ref slits, .. } if slits.len() == 1));
    }
}
