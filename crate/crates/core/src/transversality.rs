//! Certified two-sided bounds on the derivative of the slope difference
//! between the two admissible word families, uniform over all tails.
//!
//! A word with the first admissible 5-prefix has coordinate polynomials
//! `λ+λ⁴+a(λ)` over `1+λ−λ²−λ³+b(λ)`; the second family gives `λ−λ⁴+c(λ)`
//! over `1+λ²+λ³+d(λ)`. All four tails have coefficients in {−1,0,1} from
//! degree 5 up, so `|tail| ≤ λ⁵/(1−λ)` and `|tail′| ≤ λ⁴(5−4λ)/(1−λ)²`.
//! Feeding those ranges as interval coefficients into the quotient-rule
//! formula bounds the derivative difference for every admissible pair at
//! once.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::certify::{certify_positive, Certificate};
use crate::ifs::{orbit_polys, slope_ratfunc};
use crate::ratfunc::RatFunc;
use crate::report::rat_str;
use crate::scalar::{rat, rat_i};
use crate::words::{admissible_prefix_a, admissible_prefix_b, WordJ};
use crate::{Error, Int, IntPoly, Rat, RatInterval, Result};

/// λ⁵/(1-λ): uniform bound on an admissible tail.
pub fn tail_bound() -> RatFunc {
    RatFunc::new(IntPoly::from_i64(&[0, 0, 0, 0, 0, 1]), IntPoly::from_i64(&[1, -1]))
}

/// λ⁴(5-4λ)/(1-λ)²: uniform bound on an admissible tail derivative.
pub fn tail_derivative_bound() -> RatFunc {
    RatFunc::new(IntPoly::from_i64(&[0, 0, 0, 0, 5, -4]), IntPoly::from_i64(&[1, -2, 1]))
}

/// The exact derivative terms of the slope difference for one specific
/// admissible pair: `(A, B)` with `A = d/dλ slope(k)` and `B = d/dλ
/// slope(l)`, plus the four tail polynomials.
#[derive(Debug, Clone)]
pub struct AbSplit {
    pub a_term: RatFunc,
    pub b_term: RatFunc,
    /// Tails beyond degree 4 of (x_k, y_k, x_l, y_l).
    pub tails: [IntPoly; 4],
}

/// Quotient-rule split of the derivative for a specific pair with the
/// admissible 5-prefixes (first family for `k`, second for `l`).
pub fn ab_split(k: &WordJ, l: &WordJ) -> Result<AbSplit> {
    if !(k.len() >= 5 && k.prefix(5) == admissible_prefix_a()) {
        return Err(Error::PreconditionViolated(
            "first word must carry the first admissible 5-prefix".into(),
        ));
    }
    if !(l.len() >= 5 && l.prefix(5) == admissible_prefix_b()) {
        return Err(Error::PreconditionViolated(
            "second word must carry the second admissible 5-prefix".into(),
        ));
    }
    let (xk, yk) = orbit_polys(k);
    let (xl, yl) = orbit_polys(l);
    let tails = [
        xk.sub(&IntPoly::from_i64(&[0, 1, 0, 0, 1])),
        yk.sub(&IntPoly::from_i64(&[1, 1, -1, -1])),
        xl.sub(&IntPoly::from_i64(&[0, 1, 0, 0, -1])),
        yl.sub(&IntPoly::from_i64(&[1, 0, 1, 1])),
    ];
    for t in &tails {
        if let Some(v) = t.valuation() {
            if v < 5 {
                return Err(Error::PreconditionViolated("tail below degree 5".into()));
            }
        }
        if t.coeffs().iter().any(|c| c.abs() > Int::one()) {
            return Err(Error::PreconditionViolated("tail coefficient out of {-1,0,1}".into()));
        }
    }
    let a_term = RatFunc::new(xk.derivative().mul(&yk).sub(&xk.mul(&yk.derivative())), yk.mul(&yk));
    let b_term = RatFunc::new(xl.derivative().mul(&yl).sub(&xl.mul(&yl.derivative())), yl.mul(&yl));
    Ok(AbSplit { a_term, b_term, tails })
}

/// Interval terms shared by the envelope evaluations on one λ box.
struct EnvelopePieces {
    /// Symmetric tail range [-E, E].
    tail: RatInterval,
    /// Symmetric tail-derivative range [-E', E'].
    tail_d: RatInterval,
    lam: RatInterval,
}

fn pieces(lam: &RatInterval) -> Option<EnvelopePieces> {
    let e = tail_bound().eval_interval(lam)?;
    let ed = tail_derivative_bound().eval_interval(lam)?;
    Some(EnvelopePieces {
        tail: RatInterval::new(-e.hi().clone(), e.hi().clone()),
        tail_d: RatInterval::new(-ed.hi().clone(), ed.hi().clone()),
        lam: lam.clone(),
    })
}

fn poly_iv(coeffs: &[i64], lam: &RatInterval) -> RatInterval {
    IntPoly::from_i64(coeffs).eval_interval(lam)
}

/// Enclosure of `A(λ) − B(λ)` over a λ box, uniform over every admissible
/// tail (tails and their derivatives range over the certified envelopes).
/// None when a denominator cannot be certified away from zero.
pub fn derivative_difference_enclosure(lam: &RatInterval) -> Option<RatInterval> {
    let p = pieces(lam)?;
    let a = a_enclosure(&p)?;
    let b = b_enclosure(&p)?;
    Some(a.sub(&b))
}

fn a_enclosure(p: &EnvelopePieces) -> Option<RatInterval> {
    // A = ((1+4λ³+a')(y_k) − (x_k)(y_k')) / y_k², with
    // x_k = λ+λ⁴+a, y_k = 1+λ−λ²−λ³+b, y_k' = 1−2λ−3λ²+b'.
    let xk = poly_iv(&[0, 1, 0, 0, 1], &p.lam).add(&p.tail);
    let yk = poly_iv(&[1, 1, -1, -1], &p.lam).add(&p.tail);
    let xkd = poly_iv(&[1, 0, 0, 4], &p.lam).add(&p.tail_d);
    let ykd = poly_iv(&[1, -2, -3], &p.lam).add(&p.tail_d);
    let num = xkd.mul(&yk).sub(&xk.mul(&ykd));
    let den = yk.mul(&yk);
    num.div(&den)
}

fn b_enclosure(p: &EnvelopePieces) -> Option<RatInterval> {
    // B = ((1−4λ³+c')(y_l) − (x_l)(y_l')) / y_l², with
    // x_l = λ−λ⁴+c, y_l = 1+λ²+λ³+d, y_l' = 2λ+3λ²+d'.
    let xl = poly_iv(&[0, 1, 0, 0, -1], &p.lam).add(&p.tail);
    let yl = poly_iv(&[1, 0, 1, 1], &p.lam).add(&p.tail);
    let xld = poly_iv(&[1, 0, 0, -4], &p.lam).add(&p.tail_d);
    let yld = poly_iv(&[0, 2, 3], &p.lam).add(&p.tail_d);
    let num = xld.mul(&yl).sub(&xl.mul(&yld));
    let den = yl.mul(&yl);
    num.div(&den)
}

/// The two displayed envelope numerators as explicit univariate functions:
/// the worst-case-tail numerator of the lower bound on A and of the upper
/// bound on B.
pub fn envelope_numerators() -> (RatFunc, RatFunc) {
    let e = tail_bound();
    let ed = tail_derivative_bound();
    let pf = |c: &[i64]| RatFunc::from_int(IntPoly::from_i64(c));
    // A-lower numerator: (1+4λ³−E')(1+λ−λ²−λ³−E) − (λ+λ⁴+E)(1−2λ−3λ²+E').
    let num_a = pf(&[1, 0, 0, 4])
        .sub(&ed)
        .mul(&pf(&[1, 1, -1, -1]).sub(&e))
        .sub(&pf(&[0, 1, 0, 0, 1]).add(&e).mul(&pf(&[1, -2, -3]).add(&ed)));
    // B-upper numerator: (1−4λ³+E')(1+λ²+λ³+E) − (λ−λ⁴−E)(2λ+3λ²−E').
    let num_b = pf(&[1, 0, 0, -4])
        .add(&ed)
        .mul(&pf(&[1, 0, 1, 1]).add(&e))
        .sub(&pf(&[0, 1, 0, 0, -1]).sub(&e).mul(&pf(&[0, 2, 3]).sub(&ed)));
    (num_a, num_b)
}

/// Certified transversality data for the working λ domain.
#[derive(Debug, Clone)]
pub struct TransversalityCert {
    pub lambda_domain: RatInterval,
    /// Certified floor for the derivative difference, uniform over tails.
    pub lower: Rat,
    /// Certified ceiling for the derivative difference.
    pub upper: Rat,
    /// Working constant fed to the construction: min(lower, 1/upper, 1/145).
    pub delta: Rat,
    /// Floor certified for the two displayed envelope numerators.
    pub numerator_floor: Rat,
    pub numerator_certs: Vec<Certificate>,
    pub boxes: usize,
}

impl TransversalityCert {
    pub fn delta_inv(&self) -> Rat {
        self.delta.recip()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda_domain": crate::report::interval_json(&self.lambda_domain),
            "lower": crate::report::dual(&self.lower),
            "upper": crate::report::dual(&self.upper),
            "delta": crate::report::dual(&self.delta),
            "numerator_floor": crate::report::dual(&self.numerator_floor),
            "numerator_certs": self.numerator_certs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "boxes": self.boxes,
            "digest": self.digest(),
        })
    }

    /// Content address: domain endpoints plus the envelope identifiers.
    pub fn digest(&self) -> String {
        let payload = format!(
            "trans:{}:{}:{}:{}:l5/(1-l);l4(5-4l)/(1-l)^2",
            rat_str(self.lambda_domain.lo()),
            rat_str(self.lambda_domain.hi()),
            rat_str(&self.lower),
            rat_str(&self.upper),
        );
        let mut h: u64 = 0xcbf29ce484222325;
        for b in payload.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

/// Certify `lower ≤ d/dλ (slope(k) − slope(l)) ≤ upper` uniformly over all
/// admissible pairs on the domain, and derive the working constant.
pub fn certify_transversality(lambda_domain: &RatInterval) -> Result<TransversalityCert> {
    if !(lambda_domain.lo() > &rat(1, 4) && lambda_domain.hi() < &rat(1, 3)) {
        return Err(Error::PreconditionViolated(
            "domain must lie strictly inside (1/4, 1/3)".into(),
        ));
    }
    let floor = rat(57, 1000);
    let num_floor = rat(4, 5);
    let (num_a, num_b) = envelope_numerators();
    let numerator_certs = vec![
        certify_positive("envelope_numerator_a", &num_a, lambda_domain, &num_floor, 40)?,
        certify_positive("envelope_numerator_b", &num_b, lambda_domain, &num_floor, 40)?,
    ];
    for c in &numerator_certs {
        if !c.proved() {
            return Err(Error::CertificationFailed(format!(
                "{} not proved: {:?}",
                c.claim, c.outcome
            )));
        }
    }

    // Branch and bound on the uniform enclosure: certify the floor and
    // collect a global ceiling.
    let mut boxes = 0usize;
    let mut upper = Rat::zero();
    let mut stack = vec![(lambda_domain.clone(), 0u32)];
    while let Some((lb, d)) = stack.pop() {
        boxes += 1;
        if boxes > 500_000 {
            return Err(Error::CertificationFailed("box budget exhausted".into()));
        }
        let enc = derivative_difference_enclosure(&lb);
        if let Some(enc) = enc {
            if enc.lo() >= &floor {
                if enc.hi() > &upper {
                    upper = enc.hi().clone();
                }
                continue;
            }
            if enc.hi() < &floor {
                return Err(Error::CertificationFailed(format!(
                    "derivative difference drops below {} on [{}, {}]",
                    rat_str(&floor),
                    rat_str(lb.lo()),
                    rat_str(lb.hi())
                )));
            }
        }
        if d >= 60 {
            return Err(Error::CertificationFailed(format!(
                "undecided box [{}, {}] at depth cap",
                rat_str(lb.lo()),
                rat_str(lb.hi())
            )));
        }
        let (l, r) = lb.split();
        stack.push((l, d + 1));
        stack.push((r, d + 1));
    }

    let delta = floor.clone().min(upper.recip()).min(rat(1, 145));
    Ok(TransversalityCert {
        lambda_domain: lambda_domain.clone(),
        lower: floor,
        upper,
        delta,
        numerator_floor: num_floor,
        numerator_certs,
        boxes,
    })
}

/// Classification of a planar word by its leading-exponent offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordClass {
    /// No symbol with nonzero second coordinate: infinite slope.
    InfiniteSlope,
    /// Offset ≤ −2: the slope magnitude exceeds the admissible band and
    /// the pair is discarded by the magnitude envelope.
    SteepDiscard,
    /// Offset ≥ −1: covered by the uniform derivative bound.
    Bounded,
}

pub fn classify_word(w: &WordJ) -> WordClass {
    if !w.has_nonzero_y() {
        return WordClass::InfiniteSlope;
    }
    match crate::ifs::leading_offset(w).unwrap() {
        Some(m) if m <= -2 => WordClass::SteepDiscard,
        _ => WordClass::Bounded,
    }
}

/// Certified upper bound on |d slope/dλ| over the domain: the tighter of
/// the offset envelope and direct interval evaluation of the exact
/// derivative.
pub fn derivative_bound(w: &WordJ, lambda_domain: &RatInterval) -> Result<Rat> {
    let f = slope_ratfunc(w)?;
    let bounds = crate::ifs::slope_bounds(w, lambda_domain)?;
    let direct = {
        let d = f.derivative();
        crate::ifs::refine_eval(&d, lambda_domain, 10)
            .map(|enc| enc.lo().abs().max(enc.hi().abs()))
    };
    let envelope = if bounds.offset == Some(0) || bounds.offset.is_none() {
        // Offset envelope degenerates; rely on the direct enclosure.
        None
    } else {
        Some(bounds.derivative_bound)
    };
    match (envelope, direct) {
        (Some(e), Some(d)) => Ok(e.min(d)),
        (Some(e), None) => Ok(e),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::CertificationFailed(
            "no certified derivative bound available".into(),
        )),
    }
}

/// Uniform envelope on |d slope/dλ| over all words with offset m:
/// |m| λ^(m−1)/(1−2λ) + 2 λ^m / ((1−λ)(1−2λ)²) as a rational function.
fn offset_envelope(m: i64) -> RatFunc {
    let lam = RatFunc::from_int(IntPoly::from_i64(&[0, 1]));
    let one = RatFunc::from_int(IntPoly::one());
    let two = RatFunc::constant(rat_i(2));
    let one_m_2l = one.sub(&lam.mul(&two));
    let one_m_l = one.sub(&lam);
    let lpow = |k: i64| -> RatFunc {
        if k >= 0 {
            RatFunc::from_int(IntPoly::monomial(Int::one(), k as usize))
        } else {
            RatFunc::new(IntPoly::one(), IntPoly::monomial(Int::one(), (-k) as usize))
        }
    };
    let term1 = RatFunc::constant(rat_i(m.abs())).mul(&lpow(m - 1)).div(&one_m_2l);
    let term2 = two.mul(&lpow(m)).div(&one_m_l.mul(&one_m_2l).mul(&one_m_2l));
    term1.add(&term2)
}

#[derive(Debug, Clone)]
pub struct UniformDerivativeCert {
    pub lambda_domain: RatInterval,
    pub bound: Rat,
    /// Envelope certificates for offsets −1, 0, 1; larger offsets are
    /// dominated pointwise (each envelope term shrinks by a factor < 2λ < 1
    /// per offset step for m ≥ 1).
    pub certs: Vec<Certificate>,
    /// Certificate that offset ≤ −2 slopes exceed the admissible band:
    /// λ⁻²(1−2λ) − 2λ/(1−λ) ≥ 0.
    pub steep_cert: Certificate,
}

/// Certify that every word with offset ≥ −1 has |d slope/dλ| ≤ 144 on the
/// domain, and that offset ≤ −2 slopes stay outside twice the admissible
/// band.
pub fn certify_uniform_derivative_bound(lambda_domain: &RatInterval) -> Result<UniformDerivativeCert> {
    let bound = rat_i(144);
    let mut certs = vec![];
    for m in [-1i64, 0, 1] {
        let margin = RatFunc::constant(bound.clone()).sub(&offset_envelope(m));
        let cert = certify_positive(
            &format!("uniform_derivative_offset_{m}"),
            &margin,
            lambda_domain,
            &Rat::zero(),
            40,
        )?;
        if !cert.proved() {
            return Err(Error::CertificationFailed(format!(
                "uniform derivative bound failed at offset {m}: {:?}",
                cert.outcome
            )));
        }
        certs.push(cert);
    }
    // λ⁻²(1−2λ) ≥ 2λ/(1−λ): steep slopes dominate the band max 2λ/(1-λ).
    let lam = RatFunc::from_int(IntPoly::from_i64(&[0, 1]));
    let one = RatFunc::from_int(IntPoly::one());
    let two = RatFunc::constant(rat_i(2));
    let steep = one
        .sub(&lam.mul(&two))
        .div(&lam.mul(&lam))
        .sub(&two.mul(&lam).div(&one.sub(&lam)));
    let steep_cert = certify_positive("steep_offset_discard", &steep, lambda_domain, &Rat::zero(), 40)?;
    if !steep_cert.proved() {
        return Err(Error::CertificationFailed("steep-offset discard failed".into()));
    }
    Ok(UniformDerivativeCert {
        lambda_domain: lambda_domain.clone(),
        bound,
        certs,
        steep_cert,
    })
}

/// Pointwise domination check used by the tail argument of the uniform
/// bound: envelope(m+1) ≤ envelope(m) at a sample λ for m ≥ 1.
pub fn envelope_dominates_next(m: i64, lambda: &Rat) -> bool {
    let a = offset_envelope(m).eval(lambda).unwrap();
    let b = offset_envelope(m + 1).eval(lambda).unwrap();
    b <= a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_to_f64;
    use crate::words::SymJ;

    fn dom() -> RatInterval {
        RatInterval::new(
            rat(1, 4) + rat(1, 1_000_000_000),
            rat(1, 3) - rat(1, 1_000_000_000),
        )
    }

    #[test]
    fn ab_split_tail_free() {
        let k = admissible_prefix_a();
        let l = admissible_prefix_b();
        let s = ab_split(&k, &l).unwrap();
        for t in &s.tails {
            assert!(t.is_zero());
        }
        // A − B against central finite differences of the slope difference.
        let fk = slope_ratfunc(&k).unwrap();
        let fl = slope_ratfunc(&l).unwrap();
        let h = 1e-7;
        let diff = |x: f64| fk.eval_f64(x) - fl.eval_f64(x);
        let fd = (diff(0.3 + h) - diff(0.3 - h)) / (2.0 * h);
        let exact = s.a_term.eval(&rat(3, 10)).unwrap() - s.b_term.eval(&rat(3, 10)).unwrap();
        let ex = rat_to_f64(&exact);
        assert!((fd - ex).abs() / ex.abs() < 1e-6, "fd {fd} exact {ex}");
    }

    #[test]
    fn ab_split_extension_tails() {
        let mut k = admissible_prefix_a();
        k.push(SymJ::new(1, 1).unwrap());
        k.push(SymJ::new(-1, 0).unwrap());
        let s = ab_split(&k, &admissible_prefix_b()).unwrap();
        let xt = &s.tails[0];
        assert_eq!(xt.valuation(), Some(5));
        assert!(xt.coeffs().iter().all(|c| c.abs() <= Int::one()));
        // Wrong prefixes are rejected.
        assert!(ab_split(&admissible_prefix_b(), &admissible_prefix_b()).is_err());
    }

    #[test]
    fn envelope_matches_exact_at_point_with_zero_tails() {
        // At a degenerate λ box the enclosure brackets the tail-free exact
        // derivative difference.
        let s = ab_split(&admissible_prefix_a(), &admissible_prefix_b()).unwrap();
        let x = rat(3, 10);
        let exact = s.a_term.eval(&x).unwrap() - s.b_term.eval(&x).unwrap();
        let enc = derivative_difference_enclosure(&RatInterval::point(x)).unwrap();
        assert!(enc.contains(&exact));
    }

    #[test]
    fn transversality_certificate() {
        let cert = certify_transversality(&dom()).unwrap();
        assert_eq!(cert.lower, rat(57, 1000));
        assert!(cert.upper > cert.lower);
        assert_eq!(cert.delta, rat(1, 145));
        assert!(cert.delta < rat(1, 144));
        assert!(cert.delta <= cert.lower.clone().min(cert.upper.recip()));
        // Exact tail-free value sits inside the certified band at a point.
        let s = ab_split(&admissible_prefix_a(), &admissible_prefix_b()).unwrap();
        let v = s.a_term.eval(&rat(3, 10)).unwrap() - s.b_term.eval(&rat(3, 10)).unwrap();
        assert!(v >= cert.lower && v <= cert.upper);
    }

    #[test]
    fn soundness_random_tails() {
        // Random admissible extensions: the exact derivative difference
        // stays within the certified band.
        let cert = certify_transversality(&dom()).unwrap();
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for trial in 0..300 {
            let mut k = admissible_prefix_a();
            let mut l = admissible_prefix_b();
            for _ in 0..(next() % 8) {
                k.push(SymJ::ALPHABET[(next() % 7) as usize]);
            }
            for _ in 0..(next() % 8) {
                l.push(SymJ::ALPHABET[(next() % 7) as usize]);
            }
            let s = ab_split(&k, &l).unwrap();
            let num = 250_000_001 + (next() % 83_000_000);
            let x = rat(num as i64, 1_000_000_000);
            assert!(dom().contains(&x));
            let v = s.a_term.eval(&x).unwrap() - s.b_term.eval(&x).unwrap();
            assert!(
                v >= cert.lower && v <= cert.upper,
                "trial {trial}: {} outside [{}, {}]",
                rat_str(&v),
                rat_str(&cert.lower),
                rat_str(&cert.upper)
            );
        }
    }

    #[test]
    fn derivative_bound_cases() {
        let dom = RatInterval::new(rat(29, 100), rat(31, 100));
        // Offset 0: envelope degenerate, direct evaluation used.
        let w = WordJ::from_pairs(&[(1, 1), (1, 0)]).unwrap();
        let b = derivative_bound(&w, &dom).unwrap();
        let f = slope_ratfunc(&w).unwrap().derivative();
        for k in 0..=20 {
            let x = dom.lerp(&rat(k, 20));
            assert!(f.eval(&x).unwrap().abs() <= b);
        }
        // Offset 1 with the first admissible prefix: bound dominates
        // sampled finite-difference slopes.
        let w = admissible_prefix_a();
        let b = derivative_bound(&w, &dom).unwrap();
        let f = slope_ratfunc(&w).unwrap();
        for k in 1..20 {
            let x = rat_to_f64(&dom.lerp(&rat(k, 20)));
            let h = 1e-7;
            let fd = ((f.eval_f64(x + h) - f.eval_f64(x - h)) / (2.0 * h)).abs();
            assert!(fd <= rat_to_f64(&b) + 1e-6);
        }
        // Classification flags.
        assert_eq!(classify_word(&WordJ::from_pairs(&[(1, 0)]).unwrap()), WordClass::InfiniteSlope);
        assert_eq!(
            classify_word(&WordJ::from_pairs(&[(1, 0), (0, 0), (0, 1)]).unwrap()),
            WordClass::SteepDiscard
        );
        assert_eq!(classify_word(&admissible_prefix_a()), WordClass::Bounded);
    }

    #[test]
    fn uniform_derivative_bound_certified() {
        let cert = certify_uniform_derivative_bound(&dom()).unwrap();
        assert_eq!(cert.bound, rat_i(144));
        assert_eq!(cert.certs.len(), 3);
        // Domination of deeper offsets at sample parameters.
        for m in 1..6 {
            assert!(envelope_dominates_next(m, &rat(3, 10)));
            assert!(envelope_dominates_next(m, &rat(13, 48)));
        }
        // The bound really dominates exact derivatives of random words
        // with offset ≥ -1.
        let mut seed = 42u64;
        for _ in 0..100 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let mut w = WordJ::from_pairs(&[(0, 1)]).unwrap();
            for _ in 0..(seed % 9) {
                w.push(SymJ::ALPHABET[((seed >> 17) % 7) as usize]);
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            }
            if classify_word(&w) != WordClass::Bounded {
                continue;
            }
            let f = match slope_ratfunc(&w) {
                Ok(f) => f.derivative(),
                Err(_) => continue,
            };
            let v = f.eval(&rat(3, 10)).unwrap().abs();
            assert!(v <= rat_i(144), "derivative {} exceeds 144", rat_str(&v));
        }
    }
}
