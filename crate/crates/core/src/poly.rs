//! Dense univariate polynomials, generic over the coefficient ring.
//!
//! Coefficient index equals the power of the variable. The zero polynomial
//! is the empty coefficient vector; otherwise the leading coefficient is
//! nonzero.

use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::scalar::{EmbedInto, Scalar};
use crate::{Int, Rat};

/// Minimal ring bounds for polynomial coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::fmt::Debug
{
    fn from_u32(v: u32) -> Self;
}

impl Coeff for Int {
    fn from_u32(v: u32) -> Self {
        Int::from(v)
    }
}

impl Coeff for Rat {
    fn from_u32(v: u32) -> Self {
        Rat::from_integer(Int::from(v))
    }
}

impl Coeff for f64 {
    fn from_u32(v: u32) -> Self {
        v as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, power: usize) -> Self {
        let mut v = vec![C::zero(); power + 1];
        v[power] = c;
        Poly::new(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self
    where
        C: From<i64>,
    {
        Poly::new(coeffs.iter().map(|&c| C::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![C::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Divide by x^k, dropping lower terms (caller checks valuation).
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * C::from_u32(k as u32))
            .collect();
        Poly::new(v)
    }

    /// Horner evaluation in any scalar the coefficients embed into.
    pub fn eval<S>(&self, x: &S) -> S
    where
        S: Scalar,
        C: EmbedInto<S>,
    {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.embed();
        }
        acc
    }

    /// Interval Horner evaluation; inclusion-isotonic, exact when `x` is a
    /// point.
    pub fn eval_interval<S>(&self, x: &Interval<S>) -> Interval<S>
    where
        S: Scalar,
        C: EmbedInto<S>,
    {
        let mut acc = Interval::point(S::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_scalar(&c.embed());
        }
        acc
    }
}

impl Poly<Int> {
    /// `p(u/v) · v^D` exactly, for any `D ≥ deg p`, by integer Horner.
    /// Power-of-two denominators use shifts. Avoids rational reduction
    /// entirely, which matters at high precision.
    pub fn eval_scaled(&self, u: &Int, v: &Int, big_d: usize) -> Int {
        debug_assert!(self.degree().map_or(true, |d| d <= big_d));
        let shift = power_of_two_bits(v);
        let mut acc = Int::zero();
        let mut vpow = Int::one(); // v^(D-k), maintained downward
        // Iterate k = D..0; maintain v^(D-k) incrementally only for the
        // non-shift path.
        for k in (0..=big_d).rev() {
            acc *= u;
            let c = self.coeff(k);
            if !c.is_zero() {
                match shift {
                    Some(b) => acc += c << ((big_d - k) as u64 * b),
                    None => acc += c * &vpow,
                }
            }
            if shift.is_none() && k > 0 {
                vpow *= v;
            }
        }
        acc
    }

    /// Interval Horner with outward dyadic rounding of the accumulator at
    /// each step; sound, and keeps endpoint sizes near `prec` bits.
    pub fn eval_interval_dyadic(&self, x: &crate::interval::Interval<Rat>, prec: u64) -> crate::interval::Interval<Rat> {
        let mut acc = crate::interval::Interval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            let stepped = acc.mul(x).add_scalar(&Rat::from_integer(c.clone()));
            let (lo, _) = crate::scalar::dyadic_enclosure(stepped.lo(), prec);
            let (_, hi) = crate::scalar::dyadic_enclosure(stepped.hi(), prec);
            acc = crate::interval::Interval::new(lo, hi);
        }
        acc
    }
}

/// Some(bits) when v = 2^bits, for nonzero v.
fn power_of_two_bits(v: &Int) -> Option<u64> {
    if v.is_zero() || v.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let bits = v.bits();
    if v == &(Int::from(1) << (bits - 1)) {
        Some(bits - 1)
    } else {
        None
    }
}

impl Poly<Int> {
    /// gcd of all coefficients (non-negative); zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Poly<Int> {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Exact division; None when the divisor does not divide self over ℤ.
    pub fn div_exact(&self, d: &Poly<Int>) -> Option<Poly<Int>> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dn, dd) = (self.degree()?, d.degree()?);
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Int::zero(); dn - dd + 1];
        let lead = d.leading().unwrap();
        for k in (0..=dn - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            quo[k] = q.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(quo))
    }

    /// Pseudo-remainder of self by d over ℤ (scaled Euclidean step).
    fn pseudo_rem(&self, d: &Poly<Int>) -> Poly<Int> {
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            rem = rem.scale(&lead).sub(&d.shift_up(dr - dd).scale(&top));
            debug_assert!(rem.degree().map_or(true, |g| g < dr));
        }
        rem
    }

    /// Primitive polynomial gcd over ℤ (primitive pseudo-remainder sequence).
    pub fn gcd(&self, other: &Poly<Int>) -> Poly<Int> {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        // Positive leading coefficient by convention.
        if a.leading().map_or(false, |c| c.is_negative()) {
            a = a.neg();
        }
        a
    }

    pub fn to_f64_poly(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(|c| c.embed()).collect())
    }

    /// Exact sign of p(x) at a rational point.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        crate::scalar::sign_of(&self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};
    use crate::{IntPoly, RatInterval};

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn construction_trims() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn ring_ops() {
        let a = p(&[-1, 3, 1]); // λ²+3λ-1
        let b = p(&[1, 1]); // λ+1
        assert_eq!(a.add(&b), p(&[0, 4, 1]));
        assert_eq!(a.mul(&b), p(&[-1, 2, 4, 1]));
        assert_eq!(a.sub(&a), IntPoly::zero());
        assert_eq!(a.derivative(), p(&[3, 2]));
        assert_eq!(IntPoly::constant(rat_i(5).to_integer()).derivative(), IntPoly::zero());
    }

    #[test]
    fn eval_exact_and_interval() {
        // λ²+3λ-1 at 3/10 is -1/100.
        let a = p(&[-1, 3, 1]);
        assert_eq!(a.eval(&rat(3, 10)), rat(-1, 100));
        let x = RatInterval::point(rat(3, 10));
        let e = a.eval_interval(&x);
        assert_eq!(*e.lo(), rat(-1, 100));
        assert_eq!(*e.hi(), rat(-1, 100));
        // Zero polynomial over any interval is [0,0].
        let z = IntPoly::zero().eval_interval(&RatInterval::new(rat(1, 4), rat(1, 3)));
        assert!(z.lo().is_zero() && z.hi().is_zero());
    }

    #[test]
    fn division_and_gcd() {
        let cross = p(&[0, 0, -1, 2, 4, 1]); // λ²(λ³+4λ²+2λ-1) expanded
        let quad = p(&[-1, 3, 1]);
        let q = cross.div_exact(&quad).unwrap();
        assert_eq!(q.mul(&quad), cross);
        assert!(cross.div_exact(&p(&[1, 1, 1])).is_none());

        let a = quad.mul(&p(&[2, 4])); // (λ²+3λ-1)(4λ+2)
        let b = quad.mul(&p(&[0, 3]));
        let g = a.gcd(&b);
        assert_eq!(g, quad);
        // gcd of coprime polys is a constant.
        let g2 = p(&[1, 1]).gcd(&p(&[2, 1]));
        assert_eq!(g2.degree(), Some(0));
    }

    #[test]
    fn content_primitive() {
        let a = p(&[6, -9, 3]);
        assert_eq!(a.content(), 3.into());
        assert_eq!(a.primitive_part(), p(&[2, -3, 1]));
    }
}
