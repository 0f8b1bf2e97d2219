//! Nonnegative reals stored as natural logarithms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative extended real `x`, held as `ln x`; zero is `ln = -inf`.
#[derive(Clone, Copy, PartialEq)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { ln: f64::NEG_INFINITY };
    pub const ONE: LogValue = LogValue { ln: 0.0 };

    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan(), "logarithm is NaN");
        LogValue { ln }
    }

    pub fn new(x: f64) -> Result<Self> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!("log value of {x}")));
        }
        Ok(LogValue { ln: x.ln() })
    }

    pub fn from_u64(x: u64) -> Self {
        LogValue { ln: (x as f64).ln() }
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        if x.is_zero() {
            return LogValue::ZERO;
        }
        let bits = x.bits();
        let shift = bits.saturating_sub(64);
        let top: BigUint = x >> shift;
        let top = top.iter_u64_digits().next().unwrap_or(0) as f64;
        LogValue {
            ln: top.ln() + shift as f64 * std::f64::consts::LN_2,
        }
    }

    pub fn from_ratio(x: &BigRational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::Domain(format!("log value of {x}")));
        }
        let num = x.numer().magnitude();
        let den = x.denom().magnitude();
        Ok(LogValue::from_biguint(num) / LogValue::from_biguint(den))
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log10(self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn powf(self, e: f64) -> Self {
        if self.is_zero() {
            return if e == 0.0 { LogValue::ONE } else { LogValue::ZERO };
        }
        LogValue::from_ln(self.ln * e)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `|ln self - ln other|`, zero when both are zero.
    pub fn ln_distance(self, other: Self) -> f64 {
        if self.is_zero() && other.is_zero() {
            0.0
        } else {
            (self.ln - other.ln).abs()
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            LogValue::ZERO
        } else {
            LogValue::from_ln(self.ln + rhs.ln)
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by a zero log value");
        if self.is_zero() {
            LogValue::ZERO
        } else {
            LogValue::from_ln(self.ln - rhs.ln)
        }
    }
}

impl Add for LogValue {
    type Output = LogValue;

    fn add(self, rhs: Self) -> Self {
        let (hi, lo) = if self >= rhs { (self, rhs) } else { (rhs, self) };
        if lo.is_zero() {
            return hi;
        }
        LogValue::from_ln(hi.ln + (lo.ln - hi.ln).exp().ln_1p())
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl fmt::Debug for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.ln)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let l10 = self.log10();
        if l10.abs() < 15.0 {
            write!(f, "{}", self.value())
        } else {
            let exp = l10.floor();
            write!(f, "{:.6}e{}", 10f64.powf(l10 - exp), exp)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    ln: Option<f64>,
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            ln: (!self.is_zero()).then_some(self.ln),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        match r.ln {
            None => Ok(LogValue::ZERO),
            Some(l) if l.is_nan() => Err(serde::de::Error::custom("NaN logarithm")),
            Some(l) => Ok(LogValue::from_ln(l)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn arithmetic() {
        let a = LogValue::from_u64(6);
        let b = LogValue::from_u64(4);
        assert!(((a * b).value() - 24.0).abs() < 1e-12);
        assert!(((a + b).value() - 10.0).abs() < 1e-12);
        assert!(((a / b).value() - 1.5).abs() < 1e-12);
        assert!((b.powf(1.5).value() - 8.0).abs() < 1e-12);
        assert_eq!(a.min(b), b);
        assert_eq!(LogValue::ZERO + a, a);
        assert!((LogValue::ZERO * a).is_zero());
        assert_eq!(LogValue::ZERO.powf(0.0), LogValue::ONE);
    }

    #[test]
    fn big_integers() {
        let x = BigUint::from(3u32).pow(1000);
        let l = LogValue::from_biguint(&x);
        assert!((l.ln() - 1000.0 * 3f64.ln()).abs() / l.ln() < 1e-15);
        let r = BigRational::new(BigInt::from(1), BigInt::from(3u32).pow(50));
        assert!((LogValue::from_ratio(&r).unwrap().ln() + 50.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn serde_round_trip() {
        let v = vec![LogValue::ZERO, LogValue::from_u64(7)];
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"[{"ln":null}"#));
        let back: Vec<LogValue> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn display() {
        let shown: f64 = LogValue::from_u64(32).to_string().parse().unwrap();
        assert!((shown - 32.0).abs() < 1e-12);
        assert_eq!(LogValue::ZERO.to_string(), "0");
        assert!(LogValue::from_ln(1000.0).to_string().contains("e434"));
    }
}
