//! Inclusion-isotonic interval arithmetic over any [`Scalar`].
//!
//! Over exact rationals every operation is exact, so inclusion isotonicity
//! holds unconditionally; over floats the same code is a heuristic only.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Interval<S: Scalar> {
    lo: S,
    hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: S) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn of_i64(lo: i64, hi: i64) -> Self {
        Interval::new(S::from_i64(lo), S::from_i64(hi))
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn into_endpoints(self) -> (S, S) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> S {
        S::half_sum(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() + other.lo.clone(),
            hi: self.hi.clone() + other.hi.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() - other.hi.clone(),
            hi: self.hi.clone() - other.lo.clone(),
        }
    }

    pub fn add_scalar(&self, x: &S) -> Self {
        Interval {
            lo: self.lo.clone() + x.clone(),
            hi: self.hi.clone() + x.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn mul_scalar(&self, x: &S) -> Self {
        if x.is_negative() {
            Interval {
                lo: self.hi.clone() * x.clone(),
                hi: self.lo.clone() * x.clone(),
            }
        } else {
            Interval {
                lo: self.lo.clone() * x.clone(),
                hi: self.hi.clone() * x.clone(),
            }
        }
    }

    /// None when the divisor encloses zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let inv = Interval {
            lo: S::one() / other.hi.clone(),
            hi: S::one() / other.lo.clone(),
        };
        Some(self.mul(&inv))
    }

    /// Point at relative position `t` in `[0,1]` along the interval.
    pub fn lerp(&self, t: &S) -> S {
        self.lo.clone() + (self.hi.clone() - self.lo.clone()) * t.clone()
    }

    pub fn split(&self) -> (Self, Self) {
        let m = self.midpoint();
        (
            Interval { lo: self.lo.clone(), hi: m.clone() },
            Interval { lo: m, hi: self.hi.clone() },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::RatInterval;

    #[test]
    fn arithmetic_basics() {
        let a = RatInterval::new(rat(1, 4), rat(1, 3));
        let b = RatInterval::new(rat(-1, 2), rat(1, 2));
        let s = a.add(&b);
        assert_eq!(*s.lo(), rat(-1, 4));
        assert_eq!(*s.hi(), rat(5, 6));
        let m = a.mul(&b);
        assert_eq!(*m.lo(), rat(-1, 6));
        assert_eq!(*m.hi(), rat(1, 6));
        assert!(a.div(&b).is_none());
        let d = b.div(&a).unwrap();
        assert_eq!(*d.lo(), rat(-2, 1));
        assert_eq!(*d.hi(), rat(2, 1));
    }

    #[test]
    fn predicates() {
        let a = RatInterval::new(rat(1, 4), rat(1, 3));
        assert!(a.contains(&rat(3, 10)));
        assert!(!a.contains(&rat(1, 5)));
        assert!(!a.contains_zero());
        assert_eq!(a.width(), rat(1, 12));
        assert_eq!(a.midpoint(), rat(7, 24));
        let (l, r) = a.split();
        assert_eq!(*l.hi(), rat(7, 24));
        assert_eq!(*r.lo(), rat(7, 24));
        assert!(a.contains_interval(&l));
    }

    #[test]
    fn float_instantiation() {
        let a = Interval::<f64>::new(0.25, 1.0 / 3.0);
        assert!(a.contains(&0.3));
        assert!((a.midpoint() - 7.0 / 24.0).abs() < 1e-15);
    }
}
