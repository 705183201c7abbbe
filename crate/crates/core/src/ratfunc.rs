//! Quotients of integer-coefficient polynomials in canonical form.
//!
//! Canonical form: numerator and denominator share no polynomial factor and
//! no integer content, and the denominator's leading coefficient is
//! positive. Two canonical forms are equal exactly when the functions are
//! identical, which is what the exact-overlap logic relies on.

use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::poly::Poly;
use crate::scalar::sign_of;
use crate::{Int, IntPoly, Rat, RatInterval, RatPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "denominator must not be identically zero");
        RatFunc { num, den }.canonicalize()
    }

    pub fn from_int(num: IntPoly) -> Self {
        RatFunc::new(num, IntPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::new(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
    }

    pub fn zero() -> Self {
        RatFunc::from_int(IntPoly::zero())
    }

    /// Clear rational coefficients into an integer-coefficient quotient.
    pub fn from_rat_polys(num: RatPoly, den: RatPoly) -> Self {
        fn clear(p: &RatPoly) -> (IntPoly, Int) {
            let mut lcm = Int::one();
            for c in p.coeffs() {
                lcm = lcm.lcm(c.denom());
            }
            let ints = p
                .coeffs()
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect();
            (Poly::new(ints), lcm)
        }
        let (n, nl) = clear(&num);
        let (d, dl) = clear(&den);
        // num/nl / (den/dl) = num*dl / (den*nl)
        RatFunc::new(n.scale(&dl), d.scale(&nl))
    }

    fn canonicalize(self) -> Self {
        let RatFunc { mut num, mut den } = self;
        if num.is_zero() {
            return RatFunc { num: IntPoly::zero(), den: IntPoly::one() };
        }
        let g = num.gcd(&den);
        if g.degree().map_or(false, |d| d > 0) || g.content() > Int::one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let c = num.content().gcd(&den.content());
        if c > Int::one() {
            num = num.div_exact(&IntPoly::constant(c.clone())).unwrap();
            den = den.div_exact(&IntPoly::constant(c)).unwrap();
        }
        if den.leading().map_or(false, |l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().map_or(true, |d| d == 0) && self.den.degree() == Some(0)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero function");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Exact quotient-rule derivative in canonical form.
    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.mul(&self.den))
    }

    /// num(f)·den(g) − num(g)·den(f); the zero polynomial iff f ≡ g.
    pub fn cross_difference(&self, other: &Self) -> IntPoly {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den))
    }

    /// Exact value; None where the denominator vanishes.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Exact sign of f(x); None where the denominator vanishes.
    pub fn sign_at(&self, x: &Rat) -> Option<i32> {
        let ds = self.den.sign_at(x);
        if ds == 0 {
            return None;
        }
        Some(self.num.sign_at(x) * ds)
    }

    /// Inclusion-isotonic enclosure; None when the denominator's enclosure
    /// contains zero.
    pub fn eval_interval(&self, x: &RatInterval) -> Option<RatInterval> {
        let d = self.den.eval_interval(x);
        if d.contains_zero() {
            return None;
        }
        Some(self.num.eval_interval(x).div(&d).unwrap())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.to_f64_poly().eval(&x) / self.den.to_f64_poly().eval(&x)
    }

    /// Enclosure with the evaluation point rounded outward to `bits`
    /// fractional bits first; sound, and keeps endpoint sizes bounded.
    pub fn eval_dyadic(&self, x: &Rat, bits: u64) -> Option<RatInterval> {
        let (lo, hi) = crate::scalar::dyadic_enclosure(x, bits);
        self.eval_interval(&Interval::new(lo, hi))
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})/({:?})", self.num.coeffs(), self.den.coeffs())
    }
}

/// Convenience free function mirroring the operation table.
pub fn cross_difference(f: &RatFunc, g: &RatFunc) -> IntPoly {
    f.cross_difference(g)
}

/// Exact sign of (f-g)(x) without forming the difference function.
pub fn diff_sign_at(f: &RatFunc, g: &RatFunc, x: &Rat) -> Option<i32> {
    let df = f.den.sign_at(x);
    let dg = g.den.sign_at(x);
    if df == 0 || dg == 0 {
        return None;
    }
    let cross = f.num.eval(x) * g.den.eval(x) - g.num.eval(x) * f.den.eval(x);
    Some(sign_of(&cross) * df * dg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn canonical_forms() {
        // (2λ² - 2)/(2λ - 2) reduces to (λ+1)/1.
        let f = RatFunc::new(p(&[-2, 0, 2]), p(&[-2, 2]));
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &IntPoly::one());
        // Sign normalization puts the positive leading coefficient below.
        let g = RatFunc::new(p(&[1]), p(&[-3]));
        assert_eq!(g.num(), &p(&[-1]));
        assert_eq!(g.den(), &p(&[3]));
        // Monomial factors cancel.
        let h = RatFunc::new(p(&[0, 0, 0, 1]), p(&[0, 0, 2, 2]));
        assert_eq!(h.num(), &p(&[0, 1]));
        assert_eq!(h.den(), &p(&[2, 2]));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dλ λ = 1
        let f = RatFunc::from_int(p(&[0, 1]));
        assert_eq!(f.derivative(), RatFunc::from_int(p(&[1])));
        // constants drop to zero
        let c = RatFunc::constant(rat(5, 7));
        assert!(c.derivative().is_zero());
        // (λ+λ⁴)/(1+λ-λ²-λ³): check against central differences at 0.3.
        let g = RatFunc::new(p(&[0, 1, 0, 0, 1]), p(&[1, 1, -1, -1]));
        let d = g.derivative();
        let h = 1e-7;
        let fd = (g.eval_f64(0.3 + h) - g.eval_f64(0.3 - h)) / (2.0 * h);
        let exact = d.eval(&rat(3, 10)).unwrap();
        let approx = crate::scalar::rat_to_f64(&exact);
        assert!(
            (fd - approx).abs() / approx.abs() < 1e-6,
            "fd={fd} exact={approx}"
        );
    }

    #[test]
    fn cross_difference_cases() {
        let f = RatFunc::new(p(&[0, 1, 0, 0, 1]), p(&[1, 1, -1, -1]));
        assert!(cross_difference(&f, &f).is_zero());
        let a = RatFunc::from_int(p(&[0, 1]));
        let b = RatFunc::from_int(p(&[1, 1]));
        assert_eq!(cross_difference(&a, &b), p(&[-1]));
        // Antisymmetry.
        assert_eq!(cross_difference(&b, &a), p(&[1]));
    }

    #[test]
    fn evaluation() {
        let f = RatFunc::new(p(&[0, 1]), p(&[-3, 10])); // λ/(10λ-3)
        assert!(f.eval(&rat(3, 10)).is_none());
        assert_eq!(f.eval(&rat_i(1)), Some(rat(1, 7)));
        let e = f
            .eval_interval(&RatInterval::new(rat(1, 2), rat(1, 1)))
            .unwrap();
        assert!(e.contains(&rat(1, 7)));
        assert!(f
            .eval_interval(&RatInterval::new(rat(1, 4), rat(1, 3)))
            .is_none());
    }

    #[test]
    fn function_equality_iff_canonical_equality() {
        // Same function through different representations.
        let a = RatFunc::new(p(&[0, 0, 1, 1]), p(&[0, 0, 2])); // λ²(λ+1)/(2λ²)
        let b = RatFunc::new(p(&[1, 1]), p(&[2]));
        assert_eq!(a, b);
        assert!(a.cross_difference(&b).is_zero());
        let c = RatFunc::new(p(&[1, 1]), p(&[2, 1]));
        assert_ne!(a, c);
        assert!(!a.cross_difference(&c).is_zero());
    }
}
