//! Human- and machine-facing number formatting.
//!
//! Certificates carry exact fraction strings; summary reports dual-encode
//! each number as the exact fraction plus a 17-significant-digit decimal.

use num_bigint::Sign;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::{Int, Rat, RatInterval};

/// Exact fraction string: `"3/10"`, `"-1"`, `"0"`.
pub fn rat_str(x: &Rat) -> String {
    if x.denom().to_u64() == Some(1) {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// 17-significant-digit decimal string.
pub fn dec17(x: &Rat) -> String {
    dec_sig(x, 17)
}

/// Decimal with `sig` significant digits (round half away from zero).
pub fn dec_sig(x: &Rat, sig: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // e = floor(log10(ax)), found by comparing against powers of ten.
    let mut e: i64 = ((ax.numer().bits() as i64 - ax.denom().bits() as i64) as f64 * 0.30103) as i64;
    let ten = Int::from(10);
    let pow10 = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(ten.pow(k as u32))
        } else {
            Rat::new(Int::from(1), ten.pow((-k) as u32))
        }
    };
    while ax >= pow10(e + 1) {
        e += 1;
    }
    while ax < pow10(e) {
        e -= 1;
    }
    // mantissa = round(ax * 10^(sig-1-e)) has exactly `sig` digits.
    let scaled = &ax * pow10(sig as i64 - 1 - e);
    let mut m = (&scaled + Rat::new(Int::from(1), Int::from(2))).floor().to_integer();
    let mut digits = m.to_str_radix(10);
    if digits.len() > sig as usize {
        // Rounding overflowed to the next power of ten.
        e += 1;
        m = &m / &ten;
        digits = m.to_str_radix(10);
    }
    let body = if (0..18).contains(&e) {
        let need = (e as usize) + 1;
        let padded = if digits.len() < need {
            format!("{digits}{}", "0".repeat(need - digits.len()))
        } else {
            digits.clone()
        };
        let (ip, fp) = padded.split_at(need);
        let fp = fp.trim_end_matches('0');
        if fp.is_empty() {
            ip.to_string()
        } else {
            format!("{ip}.{fp}")
        }
    } else if e < 0 && e >= -4 {
        let zeros = "0".repeat((-e - 1) as usize);
        let fp = format!("{zeros}{digits}");
        let fp = fp.trim_end_matches('0');
        format!("0.{fp}")
    } else {
        let head = &digits[..1];
        let tail = digits[1..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Dual encoding used in summary JSON.
pub fn dual(x: &Rat) -> Value {
    json!({"frac": rat_str(x), "dec": dec17(x)})
}

pub fn interval_json(iv: &RatInterval) -> Value {
    json!({"lo": dual(iv.lo()), "hi": dual(iv.hi())})
}

pub fn sign_char(s: Sign) -> &'static str {
    match s {
        Sign::Minus => "-",
        Sign::NoSign => "0",
        Sign::Plus => "+",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    #[test]
    fn fraction_strings() {
        assert_eq!(rat_str(&rat(3, 10)), "3/10");
        assert_eq!(rat_str(&rat_i(-4)), "-4");
        assert_eq!(rat_str(&rat(0, 5)), "0");
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(dec17(&rat(3, 10)), "0.3");
        assert_eq!(dec17(&rat(1, 3)), "0.33333333333333333");
        assert_eq!(dec17(&rat_i(2)), "2");
        assert_eq!(dec17(&rat(-1, 8)), "-0.125");
        assert_eq!(dec17(&rat(1, 1_000_000_000)), "1e-9");
        assert_eq!(dec_sig(&rat(2, 3), 5), "0.66667");
        assert_eq!(dec_sig(&rat(999_995, 1), 5), "1000000");
        assert_eq!(dec17(&Rat::zero()), "0");
    }

    #[test]
    fn dual_encoding() {
        let v = dual(&rat(1, 5));
        assert_eq!(v["frac"], "1/5");
        assert_eq!(v["dec"], "0.2");
    }
}
