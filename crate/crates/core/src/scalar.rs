//! Scalar abstraction and exact-rational helpers.
//!
//! Interval and polynomial arithmetic are generic over [`Scalar`]; concrete
//! code instantiates them at [`Rat`](crate::Rat) for certificates and at
//! `f64` for heuristics.

use num_bigint::Sign;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Int, Rat, Result};

/// Numeric type usable as interval endpoints and evaluation points.
pub trait Scalar: Clone + PartialOrd + num_traits::Num + Signed + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    /// Midpoint helper; exact for rationals, rounded for floats.
    fn half_sum(a: &Self, b: &Self) -> Self;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn half_sum(a: &Self, b: &Self) -> Self {
        0.5 * (a + b)
    }
}

impl Scalar for Rat {
    fn from_i64(v: i64) -> Self {
        Rat::from_integer(Int::from(v))
    }
    fn half_sum(a: &Self, b: &Self) -> Self {
        (a + b) / Rat::from_integer(Int::from(2))
    }
}

/// Embedding of coefficient rings into evaluation scalars.
pub trait EmbedInto<S> {
    fn embed(&self) -> S;
}

impl EmbedInto<Rat> for Int {
    fn embed(&self) -> Rat {
        Rat::from_integer(self.clone())
    }
}

impl EmbedInto<f64> for Int {
    fn embed(&self) -> f64 {
        int_to_f64(self)
    }
}

impl EmbedInto<Int> for Int {
    fn embed(&self) -> Int {
        self.clone()
    }
}

impl EmbedInto<Rat> for Rat {
    fn embed(&self) -> Rat {
        self.clone()
    }
}

impl EmbedInto<f64> for Rat {
    fn embed(&self) -> f64 {
        rat_to_f64(self)
    }
}

impl EmbedInto<f64> for f64 {
    fn embed(&self) -> f64 {
        *self
    }
}

/// Parse an exact fraction string: `"3/10"`, `"-7"`, `"0"`.
///
/// Decimal notation is rejected on purpose; inputs must be exactly
/// representable.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidParam(format!("not an exact fraction: {s:?}"));
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(Error::InvalidParam(format!(
            "decimal notation is not accepted, use an exact fraction: {s:?}"
        )));
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidParam("zero denominator".into()));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: Int = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// x^k for signed k; errors only through division by zero when x = 0, k < 0.
pub fn rat_pow(x: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// 2^-k as an exact rational.
pub fn pow2_neg(k: u64) -> Rat {
    Rat::new(Int::one(), Int::one() << k)
}

fn int_to_f64(x: &Int) -> f64 {
    // Shift down to a mantissa-sized window; enough for heuristics.
    let bits = x.bits();
    if bits <= 62 {
        return x.to_i64().map(|v| v as f64).unwrap_or(0.0);
    }
    let shift = bits - 62;
    let top = (x >> shift).to_i64().unwrap_or(0) as f64;
    top * 2f64.powi(shift as i32)
}

/// Approximate conversion safe for huge numerators/denominators; saturates
/// to ±inf or 0 when the exponent escapes the f64 range.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let sn = (nb - 62).max(0);
    let sd = (db - 62).max(0);
    let n = int_to_f64(&(x.numer() >> sn));
    let d = int_to_f64(&(x.denom() >> sd));
    if d == 0.0 {
        return 0.0;
    }
    let e = sn - sd;
    if e > 3000 {
        return if n >= 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    if e < -3000 {
        return 0.0;
    }
    (n / d) * 2f64.powi(e as i32)
}

/// Approximate log2 |x| from the bit counts; finite for any nonzero size.
pub fn rat_log2_approx(x: &Rat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let sn = (nb - 62).max(0);
    let sd = (db - 62).max(0);
    let n = int_to_f64(&(x.numer() >> sn)).abs();
    let d = int_to_f64(&(x.denom() >> sd));
    (n / d).log2() + (sn - sd) as f64
}

/// Total bit size of a rational in canonical form.
pub fn rat_bits(x: &Rat) -> u64 {
    x.numer().bits() + x.denom().bits()
}

/// Round outward to a dyadic interval with ~`bits` fractional bits.
/// Returns `(lo, hi)` with `lo <= x <= hi`, both with power-of-two
/// denominators. Exact arithmetic throughout; used to keep interval
/// endpoints small, never to round a certificate claim.
pub fn dyadic_enclosure(x: &Rat, bits: u64) -> (Rat, Rat) {
    if x.denom().bits() <= bits + 1 {
        return (x.clone(), x.clone());
    }
    let scale = Int::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    let fl = scaled.floor().to_integer();
    let lo = Rat::new(fl.clone(), scale.clone());
    let hi = Rat::new(fl + 1, scale);
    (lo, hi)
}

/// The rational with smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    if lo == hi {
        return lo.clone();
    }
    simplest_rec(lo, hi)
}

fn simplest_rec(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    // Integer available in [lo, hi]?
    let candidate = if fl >= *lo { fl.clone() } else { &fl + Rat::one() };
    if candidate <= *hi {
        return candidate;
    }
    // lo, hi share the same integer part and are non-integer.
    let frac_lo = hi - &fl; // careful: recurse on the inverted fractional parts
    let frac_hi = lo - &fl;
    let inner = simplest_rec(&frac_lo.recip().min(frac_hi.recip()), &frac_lo.recip().max(frac_hi.recip()));
    &fl + inner.recip()
}

/// Resource limits. Exceeding a limit is a hard error, never silent rounding.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Deepest enumeration level (3^level orbit points).
    pub max_level: u32,
    /// Cap on the bit size of any single certified scalar.
    pub max_bits: u64,
    /// Cap on the index search for the initial schedule cutoff.
    pub max_eta_index: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_level: 14,
            max_bits: 16_000_000,
            max_eta_index: 200,
        }
    }
}

impl Budget {
    pub fn check_level(&self, n: u32) -> Result<()> {
        if n > self.max_level {
            return Err(Error::BudgetExceeded(format!(
                "level {n} exceeds enumeration cap {}",
                self.max_level
            )));
        }
        Ok(())
    }

    pub fn check_bits(&self, x: &Rat, what: &str) -> Result<()> {
        let b = rat_bits(x);
        if b > self.max_bits {
            return Err(Error::BudgetExceeded(format!(
                "{what}: {b} bits exceeds bit budget {}",
                self.max_bits
            )));
        }
        Ok(())
    }

    pub fn check_bit_estimate(&self, bits: f64, what: &str) -> Result<()> {
        if bits > self.max_bits as f64 {
            return Err(Error::BudgetExceeded(format!(
                "{what}: estimated {bits:.3e} bits exceeds bit budget {}",
                self.max_bits
            )));
        }
        Ok(())
    }
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign_of(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fractions() {
        assert_eq!(parse_rat("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rat("-7").unwrap(), rat_i(-7));
        assert_eq!(parse_rat(" 6/20 ").unwrap(), rat(3, 10));
        assert!(parse_rat("0.3").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn pow_and_pow2() {
        assert_eq!(rat_pow(&rat(3, 10), 3), rat(27, 1000));
        assert_eq!(rat_pow(&rat(2, 1), -3), rat(1, 8));
        assert_eq!(rat_pow(&rat(5, 7), 0), Rat::one());
        assert_eq!(pow2_neg(4), rat(1, 16));
    }

    #[test]
    fn simplest_rational() {
        // 3/10 is the simplest rational in a window around it.
        let x = simplest_in_interval(&rat(29, 100), &rat(31, 100));
        assert_eq!(x, rat(3, 10));
        let x = simplest_in_interval(&rat(1, 3), &rat(1, 2));
        assert_eq!(x, rat(1, 2));
        let x = simplest_in_interval(&rat(102, 1000), &rat(103, 1000));
        // Verify membership and minimality against brute force.
        assert!(rat(102, 1000) <= x && x <= rat(103, 1000));
        for q in 1..x.denom().to_u64().unwrap() as i64 {
            for p in 0..=q {
                let c = rat(p, q);
                assert!(
                    !(rat(102, 1000) <= c && c <= rat(103, 1000)),
                    "simpler {p}/{q} exists"
                );
            }
        }
    }

    #[test]
    fn dyadic_enclosure_contains() {
        let x = rat(1, 3);
        let (lo, hi) = dyadic_enclosure(&x, 10);
        assert!(lo <= x && x <= hi);
        assert!(&hi - &lo <= pow2_neg(10));
        // Already-dyadic values pass through untouched.
        let y = rat(5, 16);
        let (lo, hi) = dyadic_enclosure(&y, 10);
        assert_eq!(lo, y);
        assert_eq!(hi, y);
    }

    #[test]
    fn to_f64_large() {
        let x = Rat::new(Int::from(1), Int::one() << 2000);
        assert_eq!(rat_to_f64(&x), 0.0); // underflows cleanly
        let y = rat(3, 10);
        assert!((rat_to_f64(&y) - 0.3).abs() < 1e-15);
    }
}
