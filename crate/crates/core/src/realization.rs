//! Realizing a circular order on a finite set as marked points on the
//! circle `[0, 1)`, and reading an order back off such points.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::{format_ratio, parse_ratio};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::order::{orientation, CircularOrder, CircularOrderSpec, OrderValue};

/// Elements paired with distinct positions in `[0, 1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct RealizationMap {
    entries: Vec<(Element, BigRational)>,
    index: HashMap<Element, usize>,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    entries: Vec<(Element, String)>,
}

impl TryFrom<MapRepr> for RealizationMap {
    type Error = Error;

    fn try_from(r: MapRepr) -> Result<Self> {
        let entries = r
            .entries
            .into_iter()
            .map(|(e, q)| Ok((e, parse_ratio(&q)?)))
            .collect::<Result<Vec<_>>>()?;
        RealizationMap::new(entries)
    }
}

impl From<RealizationMap> for MapRepr {
    fn from(m: RealizationMap) -> Self {
        MapRepr {
            entries: m
                .entries
                .into_iter()
                .map(|(e, q)| (e, format_ratio(&q)))
                .collect(),
        }
    }
}

impl PartialEq for RealizationMap {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl RealizationMap {
    /// Rejects repeated elements, repeated positions and positions outside
    /// `[0, 1)`.
    pub fn new(entries: Vec<(Element, BigRational)>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut positions = std::collections::HashSet::new();
        for (i, (e, q)) in entries.iter().enumerate() {
            if q < &BigRational::zero() || q >= &BigRational::one() {
                return Err(Error::InvalidOrder(format!(
                    "position {q} of {e} is outside [0, 1)"
                )));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Precondition(format!("{e} is listed twice")));
            }
            if !positions.insert(q.clone()) {
                return Err(Error::InvalidOrder(format!(
                    "two elements share the position {q}"
                )));
            }
        }
        Ok(RealizationMap { entries, index })
    }

    pub fn entries(&self) -> &[(Element, BigRational)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, a: &Element) -> Result<&BigRational> {
        self.index
            .get(a)
            .map(|&i| &self.entries[i].1)
            .ok_or_else(|| Error::Precondition(format!("{a} has no marked point")))
    }

    pub fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        Ok(orientation(
            self.position(a)?,
            self.position(b)?,
            self.position(c)?,
        ))
    }

    /// CSV with header `element,position_numerator,position_denominator`;
    /// elements are written as compact JSON.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Io(io::Error::other(e));
        w.write_record(["element", "position_numerator", "position_denominator"])
            .map_err(csv_err)?;
        for (e, q) in &self.entries {
            let json = serde_json::to_string(e).expect("elements serialize");
            w.write_record([json, q.numer().to_string(), q.denom().to_string()])
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// A circle with one labelled tick per element, angle `2π·position`
    /// measured counterclockwise from the positive x-axis.
    pub fn to_svg(&self) -> String {
        let (cx, cy, r) = (200.0, 200.0, 150.0);
        let mut s = String::new();
        s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n");
        let _ = writeln!(
            s,
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"black\"/>"
        );
        for (e, q) in &self.entries {
            let angle = 2.0 * std::f64::consts::PI * q.to_f64().unwrap_or(0.0);
            let (c, sn) = (angle.cos(), angle.sin());
            let at = |rad: f64| (cx + rad * c, cy - rad * sn);
            let (x1, y1) = at(r - 6.0);
            let (x2, y2) = at(r + 6.0);
            let (tx, ty) = at(r + 22.0);
            let _ = writeln!(
                s,
                "  <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"black\"/>"
            );
            let label = e
                .to_string()
                .replace('&', "&amp;")
                .replace('<', "&lt;")
                .replace('>', "&gt;");
            let _ = writeln!(
                s,
                "  <text x=\"{tx:.3}\" y=\"{ty:.3}\" font-size=\"10\" text-anchor=\"middle\">{label}</text>"
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

impl CircularOrder for RealizationMap {
    fn eval(&self, a: &Element, b: &Element, c: &Element) -> Result<OrderValue> {
        RealizationMap::eval(self, a, b, c)
    }
}

/// The order read off marked points: `c(a, b, c)` is the orientation of
/// their positions.
pub fn order_from_points(map: RealizationMap) -> CircularOrderSpec {
    CircularOrderSpec::PointRecovered(map)
}

/// Places `elements` on the circle so that orientation of positions agrees
/// with `c`: the first goes to `0`, the second to `1/2`, and every later
/// one to the midpoint of the unique arc `(u, w)` between consecutive
/// placed points with `c(u, x, w) = +1`.
pub fn realize<C: CircularOrder + ?Sized>(c: &C, elements: &[Element]) -> Result<RealizationMap> {
    let mut placed: Vec<(Element, BigRational)> = Vec::with_capacity(elements.len());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for (i, x) in elements.iter().enumerate() {
        if placed.iter().any(|(y, _)| y == x) {
            return Err(Error::Precondition(format!("{x} is listed twice")));
        }
        let pos = match i {
            0 => BigRational::zero(),
            1 => half.clone(),
            _ => {
                // `placed` is kept sorted by position
                let n = placed.len();
                let mut slot = None;
                for j in 0..n {
                    let (u, pu) = &placed[j];
                    let (w, pw) = &placed[(j + 1) % n];
                    match c.eval(u, x, w)? {
                        OrderValue::Positive => {
                            if slot.is_some() {
                                return Err(Error::InvalidOrder(format!("{x} fits in two arcs")));
                            }
                            let end = if j + 1 == n {
                                BigRational::one()
                            } else {
                                pw.clone()
                            };
                            slot = Some((pu + end) * &half);
                        }
                        OrderValue::Negative => {}
                        OrderValue::Degenerate => {
                            return Err(Error::InvalidOrder(format!(
                                "c({u}, {x}, {w}) = 0 on distinct elements"
                            )));
                        }
                    }
                }
                slot.ok_or_else(|| Error::InvalidOrder(format!("{x} fits in no arc")))?
            }
        };
        let at = placed.partition_point(|(_, q)| q < &pos);
        placed.insert(at, (x.clone(), pos));
    }
    // report in input order
    let order: HashMap<&Element, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    placed.sort_by_key(|(e, _)| order[e]);
    RealizationMap::new(placed)
}
