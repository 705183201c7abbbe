//! The parametrized three-map system on the line, the induced planar system,
//! and the slope of planar orbit points as an exact rational function of the
//! contraction parameter.
//!
//! Compositions are leftmost-outermost: the word `w = w1 w2 ... wn` acts as
//! `map(w1) ∘ map(w2) ∘ ... ∘ map(wn)`, so orbit points are power series in
//! the contraction truncated at the word length.

use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::{rat_i, rat_pow};
use crate::words::{Word3, WordJ};
use crate::{Error, Int, IntPoly, Rat, RatInterval, Result};

/// Admissible parameter pair: `0 < λ < 1/3` and `0 < t < λ/(1-λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPair {
    lambda: Rat,
    t: Rat,
}

impl ParamPair {
    pub fn new(lambda: Rat, t: Rat) -> Result<Self> {
        if !(lambda.is_positive() && lambda < crate::scalar::rat(1, 3)) {
            return Err(Error::InvalidParam(format!(
                "lambda = {} not in (0, 1/3)",
                crate::report::rat_str(&lambda)
            )));
        }
        let bound = &lambda / (Rat::one() - &lambda);
        if !(t.is_positive() && t < bound) {
            return Err(Error::InvalidParam(format!(
                "t = {} not in (0, lambda/(1-lambda))",
                crate::report::rat_str(&t)
            )));
        }
        Ok(ParamPair { lambda, t })
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn t(&self) -> &Rat {
        &self.t
    }

    /// Diameter of the attractor: the two extreme fixed points are 0 and
    /// 1/(1-λ).
    pub fn diameter(&self) -> Rat {
        (Rat::one() - &self.lambda).recip()
    }
}

/// Translation of the base map for a symbol: 0, t, or 1.
fn translation(sym: u8, t: &Rat) -> Rat {
    match sym {
        1 => Rat::zero(),
        2 => t.clone(),
        3 => Rat::one(),
        _ => unreachable!(),
    }
}

/// Orbit point of zero under the composed word:
/// `Σ_k (δ³(w_k) + t δ²(w_k)) λ^(k-1)`, exact.
pub fn phi_at_zero(w: &Word3, p: &ParamPair) -> Rat {
    let mut acc = Rat::zero();
    for &s in w.symbols().iter().rev() {
        acc = &acc * &p.lambda + translation(s, &p.t);
    }
    acc
}

/// Planar orbit point `(Σ x_k λ^(k-1), Σ y_k λ^(k-1))`, exact.
pub fn orbit_point(w: &WordJ, lambda: &Rat) -> (Rat, Rat) {
    let mut x = Rat::zero();
    let mut y = Rat::zero();
    for s in w.symbols().iter().rev() {
        x = &x * lambda + rat_i(s.x as i64);
        y = &y * lambda + rat_i(s.y as i64);
    }
    (x, y)
}

/// Coordinate polynomials of the planar orbit point, exact in λ.
pub fn orbit_polys(w: &WordJ) -> (IntPoly, IntPoly) {
    let xs: Vec<Int> = w.symbols().iter().map(|s| Int::from(s.x)).collect();
    let ys: Vec<Int> = w.symbols().iter().map(|s| Int::from(s.y)).collect();
    (Poly::new(xs), Poly::new(ys))
}

/// Slope x/y of the planar orbit point as a canonical rational function of
/// λ. Errors when no symbol has a nonzero second coordinate (slope is
/// infinite).
pub fn slope_ratfunc(w: &WordJ) -> Result<RatFunc> {
    if !w.has_nonzero_y() {
        return Err(Error::NoSecondCoordinate);
    }
    let (x, y) = orbit_polys(w);
    Ok(RatFunc::new(x, y))
}

/// Exact slope value at a rational λ; `None` means infinite slope.
pub fn slope_value(w: &WordJ, lambda: &Rat) -> Option<Rat> {
    let (x, y) = orbit_point(w, lambda);
    if y.is_zero() {
        return None;
    }
    Some(x / y)
}

/// Leading-exponent offset: (position of first nonzero x) − (position of
/// first nonzero y). `None` when the slope is identically zero (no nonzero
/// x coordinate).
pub fn leading_offset(w: &WordJ) -> Result<Option<i64>> {
    let (px, py) = w.first_nonzero_positions();
    let py = py.ok_or(Error::NoSecondCoordinate)?;
    Ok(px.map(|px| px as i64 - py as i64))
}

/// Two-sided slope bounds and a derivative bound from the leading-exponent
/// offset, valid on domains inside (1/4, 1/3).
#[derive(Debug, Clone)]
pub struct SlopeBounds {
    /// None encodes an identically zero numerator (offset convention m→∞).
    pub offset: Option<i64>,
    /// Bounds on |slope| over the domain.
    pub abs_bounds: RatInterval,
    /// Interval enclosure of the slope itself over the domain.
    pub enclosure: RatInterval,
    /// Upper bound on |d slope / dλ| over the domain.
    pub derivative_bound: Rat,
}

/// Enclosure of the slope over `domain ⊂ (1/4, 1/3)` together with the
/// offset-based envelope `λ^m(1-2λ) ≤ |slope| ≤ λ^m/(1-2λ)` and the
/// derivative envelope `2|m| λ^(m-1) / ((1-λ)(1-2λ))`.
pub fn slope_bounds(w: &WordJ, domain: &RatInterval) -> Result<SlopeBounds> {
    let quarter = crate::scalar::rat(1, 4);
    let third = crate::scalar::rat(1, 3);
    if !(domain.lo() > &quarter && domain.hi() < &third) {
        return Err(Error::PreconditionViolated(
            "domain must lie strictly inside (1/4, 1/3)".into(),
        ));
    }
    let f = slope_ratfunc(w)?;
    let offset = leading_offset(w)?;

    if offset.is_none() {
        // Identically zero slope.
        return Ok(SlopeBounds {
            offset: None,
            abs_bounds: RatInterval::point(Rat::zero()),
            enclosure: RatInterval::point(Rat::zero()),
            derivative_bound: Rat::zero(),
        });
    }
    let m = offset.unwrap();

    // Envelope endpoints are monotone in λ, evaluate at both ends and hull.
    let env_at = |lam: &Rat| -> (Rat, Rat) {
        let lm = rat_pow(lam, m);
        let one_minus_2l = Rat::one() - lam * rat_i(2);
        (&lm * &one_minus_2l, &lm / &one_minus_2l)
    };
    let (lo1, hi1) = env_at(domain.lo());
    let (lo2, hi2) = env_at(domain.hi());
    let abs_bounds = RatInterval::new(lo1.min(lo2), hi1.max(hi2));

    // Direct interval evaluation with a few refinement splits if the
    // denominator straddles zero at the top level.
    let enclosure = refine_eval(&f, domain, 12).ok_or_else(|| {
        Error::DenominatorVanishes(
            crate::report::rat_str(domain.lo()),
            crate::report::rat_str(domain.hi()),
        )
    })?;

    // 2|m| λ^(m-1) / ((1-λ)(1-2λ)) maximized over the domain endpoints; the
    // factor λ^(m-1) is monotone, the rest is increasing on (1/4,1/3).
    let deriv_at = |lam: &Rat| -> Rat {
        let lm = rat_pow(lam, m - 1);
        let d = (Rat::one() - lam) * (Rat::one() - lam * rat_i(2));
        rat_i(2 * m.abs()) * lm / d
    };
    let derivative_bound = deriv_at(domain.lo()).max(deriv_at(domain.hi()));

    Ok(SlopeBounds {
        offset: Some(m),
        abs_bounds,
        enclosure,
        derivative_bound,
    })
}

/// Interval evaluation with a bounded number of bisections to work around
/// denominator enclosures that straddle zero.
pub fn refine_eval(f: &RatFunc, domain: &RatInterval, splits: u32) -> Option<RatInterval> {
    if let Some(enc) = f.eval_interval(domain) {
        return Some(enc);
    }
    if splits == 0 {
        return None;
    }
    let (l, r) = domain.split();
    let a = refine_eval(f, &l, splits - 1)?;
    let b = refine_eval(f, &r, splits - 1)?;
    Some(a.hull(&b))
}
