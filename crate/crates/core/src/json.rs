//! JSON documents: orientations, barcodes and tame representations.
//!
//! Rationals travel as `"p/q"` strings in lowest terms and infinities as
//! `"-inf"` / `"+inf"`, so files round-trip bit for bit.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interval::{BarMultiset, Interval};
use crate::linalg::{Field, Matrix};
use crate::number::{format_rational, parse_rational, ExtReal, Rational};
use crate::orientation::{Critical, EmptyDirection, Kind, Orientation};
use crate::tamerep::{junction_ends, Junction, MapDir, TameRep};

/// The bare message, so serde's position suffix is not preceded by a
/// second "parse error" prefix.
fn message(e: Error) -> String {
    match e {
        Error::Parse(m) => m,
        other => other.to_string(),
    }
}

fn rational<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(|e| D::Error::custom(message(e)))
}

fn ext_real<'de, D: Deserializer<'de>>(d: D) -> Result<ExtReal, D::Error> {
    let s = String::deserialize(d)?;
    ExtReal::parse(&s).map_err(|e| D::Error::custom(message(e)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCritical {
    #[serde(deserialize_with = "rational")]
    pos: Rational,
    kind: Kind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrientation {
    criticals: Vec<RawCritical>,
    #[serde(default)]
    empty_direction: Option<EmptyDirection>,
}

#[derive(Deserialize)]
#[serde(try_from = "RawOrientation")]
struct OrientationDoc(Orientation);

impl TryFrom<RawOrientation> for OrientationDoc {
    type Error = Error;

    fn try_from(raw: RawOrientation) -> Result<Self> {
        let criticals = raw
            .criticals
            .into_iter()
            .map(|c| Critical {
                pos: c.pos,
                kind: c.kind,
            })
            .collect();
        Orientation::new(criticals, raw.empty_direction.unwrap_or(EmptyDirection::Descending)).map(OrientationDoc)
    }
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBar {
    #[serde(deserialize_with = "ext_real")]
    lo: ExtReal,
    lo_closed: bool,
    #[serde(deserialize_with = "ext_real")]
    hi: ExtReal,
    hi_closed: bool,
    #[serde(default = "one")]
    mult: usize,
}

#[derive(Deserialize)]
#[serde(try_from = "RawBar")]
struct BarDoc(Interval, usize);

impl TryFrom<RawBar> for BarDoc {
    type Error = Error;

    fn try_from(raw: RawBar) -> Result<Self> {
        if raw.mult == 0 {
            return Err(Error::Parse("bar multiplicity must be positive".into()));
        }
        Ok(BarDoc(
            Interval::new(raw.lo, raw.lo_closed, raw.hi, raw.hi_closed)?,
            raw.mult,
        ))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    dir: MapDir,
    entries: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTame {
    grid: Vec<RationalDoc>,
    dims: Vec<usize>,
    maps: Vec<RawMap>,
}

#[derive(Deserialize)]
struct RationalDoc(#[serde(deserialize_with = "rational")] Rational);

#[derive(Deserialize, Serialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawField {
    Q,
    Fp { p: u64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    orientation: OrientationDoc,
    #[serde(default)]
    bars: Option<Vec<BarDoc>>,
    #[serde(default)]
    tame: Option<RawTame>,
    #[serde(default)]
    field: Option<RawField>,
}

/// What a document carries besides its orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Content {
    Bars(BarMultiset),
    Tame(TameRep),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub orientation: Orientation,
    /// The field named in the document, if any.
    pub field: Option<Field>,
    pub content: Content,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

impl Document {
    /// Parses a document. Matrices are read over `fallback` unless the
    /// document names its own field.
    pub fn parse(text: &str, fallback: Field) -> Result<Document> {
        let raw: RawDocument = serde_json::from_str(text).map_err(parse_error)?;
        let field = match raw.field {
            None => None,
            Some(RawField::Q) => Some(Field::Rational),
            Some(RawField::Fp { p }) => Some(Field::prime(p)?),
        };
        let orientation = raw.orientation.0;
        let content = match (raw.bars, raw.tame) {
            (Some(bars), None) => Content::Bars(bars.into_iter().map(|b| (b.0, b.1)).collect()),
            (None, Some(tame)) => Content::Tame(read_tame(&orientation, field.unwrap_or(fallback), tame)?),
            _ => {
                return Err(Error::Parse(
                    "document needs exactly one of \"bars\" and \"tame\"".into(),
                ))
            }
        };
        Ok(Document {
            orientation,
            field,
            content,
        })
    }

    /// The represented module, over the document's field or `fallback`.
    pub fn rep(&self, fallback: Field) -> TameRep {
        match &self.content {
            Content::Bars(bars) => TameRep::from_bars(&self.orientation, bars, self.field.unwrap_or(fallback)),
            Content::Tame(v) => v.clone(),
        }
    }
}

fn read_tame(o: &Orientation, field: Field, raw: RawTame) -> Result<TameRep> {
    let grid: Vec<Rational> = raw.grid.into_iter().map(|r| r.0).collect();
    if raw.dims.len() != 2 * grid.len() + 1 || raw.maps.len() != 2 * grid.len() {
        return Err(Error::Parse(format!(
            "tame: a grid of {} points needs {} dims and {} maps",
            grid.len(),
            2 * grid.len() + 1,
            2 * grid.len()
        )));
    }
    let maps = raw
        .maps
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let (s, t) = junction_ends(k, m.dir);
            let (rows, cols) = (raw.dims[t], raw.dims[s]);
            if m.entries.len() != rows || m.entries.iter().any(|r| r.len() != cols) {
                return Err(Error::Parse(format!("tame: map {k} must be {rows}x{cols}")));
            }
            let data = m
                .entries
                .iter()
                .flatten()
                .map(|e| field.from_rational(&parse_rational(e)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(Junction {
                dir: m.dir,
                matrix: Matrix::from_rows(field, rows, cols, data),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TameRep::new(o.clone(), field, grid, raw.dims, maps)
}

/// Reads an orientation given either bare or as the `orientation` member
/// of a document.
pub fn parse_orientation(text: &str) -> Result<Orientation> {
    let value: Value = serde_json::from_str(text).map_err(parse_error)?;
    let inner = value.get("orientation").cloned().unwrap_or(value);
    let doc: OrientationDoc = serde_json::from_value(inner).map_err(parse_error)?;
    Ok(doc.0)
}

pub fn ext_real_json(e: &ExtReal) -> Value {
    Value::String(e.to_string())
}

pub fn orientation_json(o: &Orientation) -> Value {
    let criticals: Vec<Value> = o
        .criticals()
        .iter()
        .map(|c| json!({ "pos": format_rational(&c.pos), "kind": c.kind }))
        .collect();
    json!({ "criticals": criticals, "empty_direction": o.empty_direction() })
}

pub fn interval_json(bar: &Interval) -> Value {
    json!({
        "lo": ext_real_json(bar.lo()),
        "lo_closed": bar.lo_closed(),
        "hi": ext_real_json(bar.hi()),
        "hi_closed": bar.hi_closed(),
    })
}

pub fn bars_json(bars: &BarMultiset) -> Value {
    Value::Array(
        bars.iter()
            .map(|(bar, m)| {
                let mut v = interval_json(bar);
                v["mult"] = json!(m);
                v
            })
            .collect(),
    )
}

pub fn matrix_json(m: &Matrix) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(f.format(x))).collect()))
            .collect(),
    )
}

pub fn tame_json(v: &TameRep) -> Value {
    json!({
        "grid": v.grid().iter().map(format_rational).collect::<Vec<_>>(),
        "dims": v.dims(),
        "maps": v.maps().iter().map(|j| json!({ "dir": j.dir, "entries": matrix_json(&j.matrix) })).collect::<Vec<_>>(),
    })
}

pub fn field_json(f: Field) -> Value {
    let raw = match f {
        Field::Rational => RawField::Q,
        Field::Prime(p) => RawField::Fp { p },
    };
    serde_json::to_value(raw).expect("field serializes")
}

/// A document holding a tame representation.
pub fn tame_document(v: &TameRep) -> Value {
    json!({
        "orientation": orientation_json(v.orientation()),
        "field": field_json(v.field()),
        "tame": tame_json(v),
    })
}

/// A document holding a barcode.
pub fn bars_document(o: &Orientation, bars: &BarMultiset) -> Value {
    json!({ "orientation": orientation_json(o), "bars": bars_json(bars) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat};

    const DOC: &str = r#"{
  "orientation": {"criticals": [{"pos": "0", "kind": "sink"}, {"pos": "1", "kind": "source"}]},
  "bars": [{"lo": "-inf", "lo_closed": false, "hi": "1/2", "hi_closed": true, "mult": 2}]
}"#;

    #[test]
    fn reads_bars() {
        let doc = Document::parse(DOC, Field::Rational).unwrap();
        assert_eq!(doc.orientation.criticals().len(), 2);
        let Content::Bars(b) = &doc.content else { panic!() };
        assert_eq!(b.multiplicity(&Interval::parse("(-inf,1/2]").unwrap()), 2);
        assert_eq!(doc.orientation.empty_direction(), EmptyDirection::Descending);
    }

    #[test]
    fn tame_round_trip() {
        let o = Orientation::alternating(&[int(0), rat(1, 2)], Kind::Source).unwrap();
        let bars: BarMultiset = [Interval::parse("[0,1)").unwrap(), Interval::parse("(-1,1/2]").unwrap()]
            .into_iter()
            .collect();
        for field in [Field::Rational, Field::Prime(5)] {
            let v = TameRep::from_bars(&o, &bars, field).scramble(9);
            let text = serde_json::to_string_pretty(&tame_document(&v)).unwrap();
            let doc = Document::parse(&text, Field::Rational).unwrap();
            assert_eq!(doc.field, Some(field));
            assert_eq!(doc.content, Content::Tame(v));
        }
    }

    #[test]
    fn errors_carry_lines() {
        let bad = DOC.replace("\"1/2\"", "\"2/4\"");
        let err = Document::parse(&bad, Field::Rational).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let both = r#"{"orientation": {"criticals": []}}"#;
        assert!(Document::parse(both, Field::Rational).is_err());
        let alternating = r#"{"orientation": {"criticals": [{"pos": "0", "kind": "sink"}, {"pos": "1", "kind": "sink"}]}, "bars": []}"#;
        assert!(Document::parse(alternating, Field::Rational).is_err());
    }

    #[test]
    fn bare_orientation() {
        let o = parse_orientation(r#"{"criticals": [], "empty_direction": "ascending"}"#).unwrap();
        assert_eq!(o, Orientation::ascending());
        let o2 = parse_orientation(DOC).unwrap();
        assert_eq!(orientation_json(&o2)["criticals"][1]["kind"], "source");
    }
}
