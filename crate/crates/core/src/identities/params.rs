//! Parameter points: the named slots an identity is evaluated at.

use std::collections::BTreeMap;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// The parameter slots used across the registry. Each identity declares the
/// subset it reads.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    /// Outer summation bound (also the `j` of the nested-sum propositions).
    N,
    X,
    Y,
    Z,
    /// Probability-style rational (Mneimneh / Genčev `p`).
    Prob,
    /// The `a` of the nested-sum proposition.
    A,
    /// The `α` of the logarithm-integral proposition.
    Alpha,
    P,
    M,
    R,
    /// Shift offset of the shifted-sum lemma.
    L,
    /// Composition argument.
    Comp,
    PVec,
    MVec,
}

impl Slot {
    pub fn name(self) -> &'static str {
        match self {
            Slot::N => "n",
            Slot::X => "x",
            Slot::Y => "y",
            Slot::Z => "z",
            Slot::Prob => "prob",
            Slot::A => "a",
            Slot::Alpha => "alpha",
            Slot::P => "p",
            Slot::M => "m",
            Slot::R => "r",
            Slot::L => "l",
            Slot::Comp => "k",
            Slot::PVec => "pvec",
            Slot::MVec => "mvec",
        }
    }

    /// Reverse of [`Slot::name`]; `"j"` is accepted as an alias for the
    /// outer bound.
    pub fn from_name(s: &str) -> Result<Slot> {
        Ok(match s {
            "n" | "j" => Slot::N,
            "x" => Slot::X,
            "y" => Slot::Y,
            "z" => Slot::Z,
            "prob" | "p_rat" => Slot::Prob,
            "a" => Slot::A,
            "alpha" => Slot::Alpha,
            "p" => Slot::P,
            "m" => Slot::M,
            "r" => Slot::R,
            "l" => Slot::L,
            "k" => Slot::Comp,
            "pvec" => Slot::PVec,
            "mvec" => Slot::MVec,
            other => return Err(Error::parse(format!("unknown parameter `{other}`"))),
        })
    }
}

/// One evaluation point. `n` is always present; everything else is optional
/// and validated by the identity that consumes it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamPoint {
    pub n: u32,
    pub x: Option<Rational>,
    pub y: Option<Rational>,
    pub z: Option<Rational>,
    pub prob: Option<Rational>,
    pub a: Option<Rational>,
    pub alpha: Option<Rational>,
    pub p: Option<u32>,
    pub m: Option<u32>,
    pub r: Option<u32>,
    pub l: Option<u32>,
    pub k: Option<Composition>,
    pub p_vec: Option<Vec<u32>>,
    pub m_vec: Option<Vec<u32>>,
}

impl ParamPoint {
    pub fn new(n: u32) -> Self {
        ParamPoint {
            n,
            ..Default::default()
        }
    }

    pub fn with_x(mut self, x: Rational) -> Self {
        self.x = Some(x);
        self
    }
    pub fn with_y(mut self, y: Rational) -> Self {
        self.y = Some(y);
        self
    }
    pub fn with_z(mut self, z: Rational) -> Self {
        self.z = Some(z);
        self
    }
    pub fn with_prob(mut self, p: Rational) -> Self {
        self.prob = Some(p);
        self
    }
    pub fn with_a(mut self, a: Rational) -> Self {
        self.a = Some(a);
        self
    }
    pub fn with_alpha(mut self, alpha: Rational) -> Self {
        self.alpha = Some(alpha);
        self
    }
    pub fn with_p(mut self, p: u32) -> Self {
        self.p = Some(p);
        self
    }
    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }
    pub fn with_r(mut self, r: u32) -> Self {
        self.r = Some(r);
        self
    }
    pub fn with_l(mut self, l: u32) -> Self {
        self.l = Some(l);
        self
    }
    pub fn with_comp(mut self, k: Composition) -> Self {
        self.k = Some(k);
        self
    }
    pub fn with_p_vec(mut self, v: Vec<u32>) -> Self {
        self.p_vec = Some(v);
        self
    }
    pub fn with_m_vec(mut self, v: Vec<u32>) -> Self {
        self.m_vec = Some(v);
        self
    }

    fn missing(id: &str, slot: &'static str) -> Error {
        Error::MissingParam {
            identity: id.to_string(),
            slot,
        }
    }

    pub fn require_rat(&self, id: &str, slot: Slot) -> Result<&Rational> {
        let field = match slot {
            Slot::X => &self.x,
            Slot::Y => &self.y,
            Slot::Z => &self.z,
            Slot::Prob => &self.prob,
            Slot::A => &self.a,
            Slot::Alpha => &self.alpha,
            _ => &None,
        };
        field.as_ref().ok_or_else(|| Self::missing(id, slot.name()))
    }

    pub fn require_uint(&self, id: &str, slot: Slot) -> Result<u32> {
        let field = match slot {
            Slot::N => return Ok(self.n),
            Slot::P => self.p,
            Slot::M => self.m,
            Slot::R => self.r,
            Slot::L => self.l,
            _ => None,
        };
        field.ok_or_else(|| Self::missing(id, slot.name()))
    }

    pub fn require_comp(&self, id: &str) -> Result<&Composition> {
        self.k.as_ref().ok_or_else(|| Self::missing(id, "k"))
    }

    pub fn require_p_vec(&self, id: &str) -> Result<&[u32]> {
        self.p_vec
            .as_deref()
            .ok_or_else(|| Self::missing(id, "pvec"))
    }

    pub fn require_m_vec(&self, id: &str) -> Result<&[u32]> {
        self.m_vec
            .as_deref()
            .ok_or_else(|| Self::missing(id, "mvec"))
    }

    /// All set slots rendered as strings, for reports. Keys sort
    /// alphabetically, so serialized rows are stable.
    pub fn params_map(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("n".to_string(), self.n.to_string());
        let mut put_rat = |name: &str, v: &Option<Rational>| {
            if let Some(q) = v {
                map.insert(name.to_string(), format_rational(q));
            }
        };
        put_rat("x", &self.x);
        put_rat("y", &self.y);
        put_rat("z", &self.z);
        put_rat("prob", &self.prob);
        put_rat("a", &self.a);
        put_rat("alpha", &self.alpha);
        let mut put_uint = |name: &str, v: Option<u32>| {
            if let Some(u) = v {
                map.insert(name.to_string(), u.to_string());
            }
        };
        put_uint("p", self.p);
        put_uint("m", self.m);
        put_uint("r", self.r);
        put_uint("l", self.l);
        if let Some(k) = &self.k {
            map.insert("k".to_string(), k.to_string());
        }
        let fmt_vec = |v: &[u32]| {
            let inner: Vec<String> = v.iter().map(|u| u.to_string()).collect();
            format!("({})", inner.join(","))
        };
        if let Some(v) = &self.p_vec {
            map.insert("pvec".to_string(), fmt_vec(v));
        }
        if let Some(v) = &self.m_vec {
            map.insert("mvec".to_string(), fmt_vec(v));
        }
        map
    }
}
