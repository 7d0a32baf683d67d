//! Fixed-point decimals on top of `BigInt`: a value is `mant · 10^{-scale}`.
//! Every operation truncates toward zero, losing less than one unit in the
//! last place; callers work with guard digits beyond the requested
//! precision. This is all the arithmetic the truncated-series evaluators
//! need (the sums involved are positive and bounded, so truncation never
//! cancels catastrophically).

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Shared scale context; owns the `10^scale` constant.
#[derive(Clone, Debug)]
pub struct FixedCtx {
    scale: u32,
    pow10: BigInt,
}

/// A fixed-point number tied to a [`FixedCtx`] scale.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    mant: BigInt,
    scale: u32,
}

impl FixedCtx {
    pub fn new(scale: u32) -> Self {
        FixedCtx {
            scale,
            pow10: BigInt::from(10u32).pow(scale),
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn zero(&self) -> Fixed {
        Fixed {
            mant: BigInt::zero(),
            scale: self.scale,
        }
    }

    pub fn one(&self) -> Fixed {
        Fixed {
            mant: self.pow10.clone(),
            scale: self.scale,
        }
    }

    pub fn from_rational(&self, q: &Rational) -> Fixed {
        Fixed {
            mant: q.numer() * &self.pow10 / q.denom(),
            scale: self.scale,
        }
    }

    pub fn add(&self, a: &Fixed, b: &Fixed) -> Fixed {
        debug_assert_eq!(a.scale, self.scale);
        debug_assert_eq!(b.scale, self.scale);
        Fixed {
            mant: &a.mant + &b.mant,
            scale: self.scale,
        }
    }

    pub fn sub(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed {
            mant: &a.mant - &b.mant,
            scale: self.scale,
        }
    }

    pub fn mul(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed {
            mant: &a.mant * &b.mant / &self.pow10,
            scale: self.scale,
        }
    }

    pub fn div_uint(&self, a: &Fixed, v: u64) -> Fixed {
        Fixed {
            mant: &a.mant / BigInt::from(v),
            scale: self.scale,
        }
    }
}

impl Fixed {
    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Fixed {
        Fixed {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    pub fn to_f64(&self) -> f64 {
        // mantissas here stay far below f64 range for practical scales
        self.mant.to_f64().unwrap_or(f64::NAN) / 10f64.powi(self.scale as i32)
    }

    /// Decimal rendering with exactly `digits` fractional digits
    /// (`digits <= scale`; surplus guard digits are dropped).
    pub fn decimal_string(&self, digits: u32) -> String {
        let digits = digits.min(self.scale);
        let drop = self.scale - digits;
        let mant = &self.mant / BigInt::from(10u32).pow(drop);
        let neg = mant.is_negative();
        let mant = mant.abs();
        let ten = BigInt::from(10u32).pow(digits);
        let int_part = &mant / &ten;
        let frac_part = &mant % &ten;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }
}
