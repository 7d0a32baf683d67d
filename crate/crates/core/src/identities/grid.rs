//! Declarative parameter grids: each axis is a named slot with a finite
//! list of values; points enumerate as the cartesian product in axis order
//! (later axes vary fastest).

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

use super::params::{ParamPoint, Slot};

#[derive(Clone, Debug, PartialEq)]
pub enum AxisValue {
    UInt(u32),
    Rat(Rational),
    Comp(Composition),
    UIntVec(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    UInt,
    Rat,
    Comp,
    UIntVec,
}

pub fn slot_kind(slot: Slot) -> SlotKind {
    match slot {
        Slot::N | Slot::P | Slot::M | Slot::R | Slot::L => SlotKind::UInt,
        Slot::X | Slot::Y | Slot::Z | Slot::Prob | Slot::A | Slot::Alpha => SlotKind::Rat,
        Slot::Comp => SlotKind::Comp,
        Slot::PVec | Slot::MVec => SlotKind::UIntVec,
    }
}

/// Parse one axis value list.
///
/// Integer slots accept `"lo..hi"` (inclusive) or comma lists; rational
/// slots accept comma lists of `a/b` literals; composition and vector slots
/// accept semicolon-separated parenthesized tuples such as `"(2,1);(3)"`.
pub fn parse_axis(slot: Slot, text: &str) -> Result<Vec<AxisValue>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse(format!("empty value list for `{}`", slot.name())));
    }
    match slot_kind(slot) {
        SlotKind::UInt => {
            if let Some((lo, hi)) = text.split_once("..") {
                let lo: u32 = lo
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad range start `{lo}`")))?;
                let hi: u32 = hi
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad range end `{hi}`")))?;
                if hi < lo {
                    return Err(Error::parse(format!("empty range {lo}..{hi}")));
                }
                Ok((lo..=hi).map(AxisValue::UInt).collect())
            } else {
                text.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map(AxisValue::UInt)
                            .map_err(|_| Error::parse(format!("bad integer `{t}`")))
                    })
                    .collect()
            }
        }
        SlotKind::Rat => text
            .split(',')
            .map(|t| parse_rational(t).map(AxisValue::Rat))
            .collect(),
        SlotKind::Comp => text
            .split(';')
            .map(|t| t.trim().parse::<Composition>().map(AxisValue::Comp))
            .collect(),
        SlotKind::UIntVec => text
            .split(';')
            .map(|t| {
                let t = t.trim().trim_start_matches('(').trim_end_matches(')');
                if t.is_empty() {
                    return Ok(AxisValue::UIntVec(Vec::new()));
                }
                t.split(',')
                    .map(|u| {
                        u.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(format!("bad vector entry `{u}`")))
                    })
                    .collect::<Result<Vec<u32>>>()
                    .map(AxisValue::UIntVec)
            })
            .collect(),
    }
}

/// A finite grid over parameter slots.
#[derive(Clone, Debug, Default)]
pub struct GridSpec {
    axes: Vec<(Slot, Vec<AxisValue>)>,
}

impl GridSpec {
    pub fn new() -> Self {
        GridSpec::default()
    }

    pub fn axis(mut self, slot: Slot, values: Vec<AxisValue>) -> Self {
        self.add_axis(slot, values);
        self
    }

    pub fn add_axis(&mut self, slot: Slot, values: Vec<AxisValue>) {
        // a later axis for the same slot replaces the earlier one
        self.axes.retain(|(s, _)| *s != slot);
        self.axes.push((slot, values));
    }

    pub fn parse_and_add(&mut self, slot: Slot, text: &str) -> Result<()> {
        let values = parse_axis(slot, text)?;
        for v in &values {
            let ok = matches!(
                (slot_kind(slot), v),
                (SlotKind::UInt, AxisValue::UInt(_))
                    | (SlotKind::Rat, AxisValue::Rat(_))
                    | (SlotKind::Comp, AxisValue::Comp(_))
                    | (SlotKind::UIntVec, AxisValue::UIntVec(_))
            );
            if !ok {
                return Err(Error::parse(format!(
                    "value type mismatch for `{}`",
                    slot.name()
                )));
            }
        }
        self.add_axis(slot, values);
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn len(&self) -> usize {
        if self.axes.is_empty() {
            return 0;
        }
        self.axes.iter().map(|(_, v)| v.len()).product()
    }

    /// Enumerate all points, later axes fastest. Requires an `n` axis.
    pub fn points(&self) -> Result<Vec<ParamPoint>> {
        if self.axes.is_empty() {
            return Ok(Vec::new());
        }
        if !self.axes.iter().any(|(s, _)| *s == Slot::N) {
            return Err(Error::parse("grid must include an `n` axis".to_string()));
        }
        if self.axes.iter().any(|(_, v)| v.is_empty()) {
            return Ok(Vec::new());
        }
        let mut points = Vec::with_capacity(self.len());
        let mut indices = vec![0usize; self.axes.len()];
        loop {
            let mut pt = ParamPoint::new(0);
            for (ai, (slot, values)) in self.axes.iter().enumerate() {
                apply(&mut pt, *slot, &values[indices[ai]]);
            }
            points.push(pt);
            // odometer increment, last axis fastest
            let mut ai = self.axes.len();
            loop {
                if ai == 0 {
                    return Ok(points);
                }
                ai -= 1;
                indices[ai] += 1;
                if indices[ai] < self.axes[ai].1.len() {
                    break;
                }
                indices[ai] = 0;
            }
        }
    }
}

fn apply(pt: &mut ParamPoint, slot: Slot, value: &AxisValue) {
    match (slot, value) {
        (Slot::N, AxisValue::UInt(v)) => pt.n = *v,
        (Slot::P, AxisValue::UInt(v)) => pt.p = Some(*v),
        (Slot::M, AxisValue::UInt(v)) => pt.m = Some(*v),
        (Slot::R, AxisValue::UInt(v)) => pt.r = Some(*v),
        (Slot::L, AxisValue::UInt(v)) => pt.l = Some(*v),
        (Slot::X, AxisValue::Rat(q)) => pt.x = Some(q.clone()),
        (Slot::Y, AxisValue::Rat(q)) => pt.y = Some(q.clone()),
        (Slot::Z, AxisValue::Rat(q)) => pt.z = Some(q.clone()),
        (Slot::Prob, AxisValue::Rat(q)) => pt.prob = Some(q.clone()),
        (Slot::A, AxisValue::Rat(q)) => pt.a = Some(q.clone()),
        (Slot::Alpha, AxisValue::Rat(q)) => pt.alpha = Some(q.clone()),
        (Slot::Comp, AxisValue::Comp(k)) => pt.k = Some(k.clone()),
        (Slot::PVec, AxisValue::UIntVec(v)) => pt.p_vec = Some(v.clone()),
        (Slot::MVec, AxisValue::UIntVec(v)) => pt.m_vec = Some(v.clone()),
        _ => unreachable!("axis value type checked at construction"),
    }
}
