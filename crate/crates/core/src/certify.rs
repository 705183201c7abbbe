//! Branch-and-bound positivity certificates and certified root isolation.
//!
//! A certificate is a subdivision tree over the domain; each leaf carries an
//! exact interval enclosure whose lower endpoint clears the claimed floor.
//! Inclusion isotonicity of the rational interval arithmetic makes a PROVED
//! answer unconditional. Floats never enter: proposals for root refinement
//! use dyadic rationals and every accepted step is re-verified by exact sign
//! evaluation.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::ratfunc::RatFunc;
use crate::report::rat_str;
use crate::scalar::{rat_i, rat_to_f64, sign_of};
use crate::{Error, IntPoly, Rat, RatInterval, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone)]
pub struct CertNode {
    pub domain: RatInterval,
    /// Certified lower bound of the enclosure on this box.
    pub bound: Rat,
    pub children: Vec<CertNode>,
}

impl CertNode {
    fn to_json(&self) -> Value {
        let mut arr = vec![
            Value::String(rat_str(self.domain.lo())),
            Value::String(rat_str(self.domain.hi())),
            Value::String(rat_str(&self.bound)),
        ];
        if !self.children.is_empty() {
            arr.push(Value::Array(self.children.iter().map(|c| c.to_json()).collect()));
        }
        Value::Array(arr)
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(|c| c.count()).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CertOutcome {
    Proved,
    /// Enclosure entirely below the floor on the witness box.
    Refuted { witness: RatInterval },
    /// Undecided boxes remained at the depth cap.
    Inconclusive { undecided: RatInterval },
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub claim: String,
    pub domain: RatInterval,
    pub floor: Rat,
    pub outcome: CertOutcome,
    pub tree: CertNode,
}

impl Certificate {
    pub fn proved(&self) -> bool {
        self.outcome == CertOutcome::Proved
    }

    pub fn boxes(&self) -> usize {
        self.tree.count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "domain": {"lo": rat_str(self.domain.lo()), "hi": rat_str(self.domain.hi())},
            "floor": rat_str(&self.floor),
            "status": match &self.outcome {
                CertOutcome::Proved => "proved".to_string(),
                CertOutcome::Refuted { .. } => "refuted".to_string(),
                CertOutcome::Inconclusive { .. } => "inconclusive".to_string(),
            },
            "boxes": self.boxes(),
            "tree": self.tree.to_json(),
        })
    }
}

enum NodeResult {
    Proved(CertNode),
    Refuted(CertNode, RatInterval),
    Inconclusive(CertNode, RatInterval),
}

fn certify_rec(f: &RatFunc, domain: &RatInterval, floor: &Rat, depth: u32, max_depth: u32) -> Result<NodeResult> {
    let den_enc = f.den().eval_interval(domain);
    if den_enc.contains_zero() {
        if depth >= max_depth {
            return Err(Error::DenominatorVanishes(
                rat_str(domain.lo()),
                rat_str(domain.hi()),
            ));
        }
        return split_and_merge(f, domain, floor, depth, max_depth);
    }
    let enc = f.num().eval_interval(domain).div(&den_enc).unwrap();
    if enc.lo() >= floor {
        return Ok(NodeResult::Proved(CertNode {
            domain: domain.clone(),
            bound: enc.lo().clone(),
            children: vec![],
        }));
    }
    if enc.hi() < floor {
        let node = CertNode {
            domain: domain.clone(),
            bound: enc.lo().clone(),
            children: vec![],
        };
        return Ok(NodeResult::Refuted(node, domain.clone()));
    }
    if depth >= max_depth {
        let node = CertNode {
            domain: domain.clone(),
            bound: enc.lo().clone(),
            children: vec![],
        };
        return Ok(NodeResult::Inconclusive(node, domain.clone()));
    }
    split_and_merge(f, domain, floor, depth, max_depth)
}

fn split_and_merge(f: &RatFunc, domain: &RatInterval, floor: &Rat, depth: u32, max_depth: u32) -> Result<NodeResult> {
    let (l, r) = domain.split();
    let (left, right) = if depth < 4 {
        rayon::join(
            || certify_rec(f, &l, floor, depth + 1, max_depth),
            || certify_rec(f, &r, floor, depth + 1, max_depth),
        )
    } else {
        (
            certify_rec(f, &l, floor, depth + 1, max_depth),
            certify_rec(f, &r, floor, depth + 1, max_depth),
        )
    };
    let (left, right) = (left?, right?);
    let node_of = |a: &CertNode, b: &CertNode| {
        let bound = if a.bound <= b.bound { a.bound.clone() } else { b.bound.clone() };
        CertNode {
            domain: domain.clone(),
            bound,
            children: vec![a.clone(), b.clone()],
        }
    };
    Ok(match (left, right) {
        (NodeResult::Proved(a), NodeResult::Proved(b)) => NodeResult::Proved(node_of(&a, &b)),
        (NodeResult::Refuted(a, w), b) => NodeResult::Refuted(node_of(&a, node_child(&b)), w),
        (a, NodeResult::Refuted(b, w)) => NodeResult::Refuted(node_of(node_child(&a), &b), w),
        (NodeResult::Inconclusive(a, u), b) => {
            NodeResult::Inconclusive(node_of(&a, node_child(&b)), u)
        }
        (a, NodeResult::Inconclusive(b, u)) => {
            NodeResult::Inconclusive(node_of(node_child(&a), &b), u)
        }
    })
}

fn node_child(r: &NodeResult) -> &CertNode {
    match r {
        NodeResult::Proved(n) | NodeResult::Refuted(n, _) | NodeResult::Inconclusive(n, _) => n,
    }
}

/// Certify `f(x) >= floor` for every x in `domain`.
///
/// Never returns a false PROVED; a REFUTED outcome carries a box on which
/// the enclosure lies entirely below the floor. The denominator must stay
/// away from zero on every box that cannot be decided before `max_depth`.
pub fn certify_positive(
    claim: &str,
    f: &RatFunc,
    domain: &RatInterval,
    floor: &Rat,
    max_depth: u32,
) -> Result<Certificate> {
    let result = certify_rec(f, domain, floor, 0, max_depth)?;
    let (tree, outcome) = match result {
        NodeResult::Proved(n) => (n, CertOutcome::Proved),
        NodeResult::Refuted(n, w) => (n, CertOutcome::Refuted { witness: w }),
        NodeResult::Inconclusive(n, u) => (n, CertOutcome::Inconclusive { undecided: u }),
    };
    Ok(Certificate {
        claim: claim.to_string(),
        domain: domain.clone(),
        floor: floor.clone(),
        outcome,
        tree,
    })
}

/// Certified maximum: smallest certified `c` (within `slack`) such that
/// f <= c on the domain, by enclosure refinement.
pub fn certified_upper_bound(f: &RatFunc, domain: &RatInterval, slack: &Rat, max_depth: u32) -> Result<Rat> {
    fn rec(f: &RatFunc, domain: &RatInterval, slack: &Rat, depth: u32, max_depth: u32) -> Result<Rat> {
        let den = f.den().eval_interval(domain);
        if !den.contains_zero() {
            let enc = f.num().eval_interval(domain).div(&den).unwrap();
            if depth >= max_depth || enc.width() <= *slack {
                return Ok(enc.hi().clone());
            }
        } else if depth >= max_depth {
            return Err(Error::DenominatorVanishes(
                rat_str(domain.lo()),
                rat_str(domain.hi()),
            ));
        }
        let (l, r) = domain.split();
        let a = rec(f, &l, slack, depth + 1, max_depth)?;
        let b = rec(f, &r, slack, depth + 1, max_depth)?;
        Ok(if a >= b { a } else { b })
    }
    rec(f, domain, slack, 0, max_depth)
}

/// Bisection with exact sign evaluation, accelerated by dyadic Newton
/// proposals that are only accepted after exact sign checks.
///
/// Requires a strict sign change of `p` across `domain` (the caller
/// certifies uniqueness of the root, e.g. through a monotonicity bound).
/// The returned interval has width ≤ `width` and certified opposite signs
/// at its endpoints.
pub fn isolate_root(p: &IntPoly, domain: &RatInterval, width: &Rat) -> Result<RatInterval> {
    assert!(width > &Rat::zero(), "target width must be positive");
    let mut lo = domain.lo().clone();
    let mut hi = domain.hi().clone();
    let mut slo = p.sign_at(&lo);
    let mut shi = p.sign_at(&hi);
    if slo == 0 || shi == 0 || slo == shi {
        return Err(Error::NoSignChange(slo));
    }

    let dp = p.derivative();
    let mut newton_failures = 0u32;
    while &hi - &lo > *width {
        // Newton proposal once the bracket is reasonably tight.
        if newton_failures < 3 {
            if let Some((nlo, nhi)) = newton_proposal(p, &dp, &lo, &hi, width) {
                let nslo = p.sign_at(&nlo);
                let nshi = p.sign_at(&nhi);
                if nslo == slo && nshi == shi {
                    lo = nlo;
                    hi = nhi;
                    continue;
                }
                // Proposal missed the root; maybe it brackets on one side.
                if nslo == slo && nshi == slo {
                    lo = nhi;
                    newton_failures += 1;
                    continue;
                }
                if nslo == shi && nshi == shi {
                    hi = nlo;
                    newton_failures += 1;
                    continue;
                }
                newton_failures += 1;
            } else {
                newton_failures += 1;
            }
        }
        let mid = RatInterval::new(lo.clone(), hi.clone()).midpoint();
        let sm = p.sign_at(&mid);
        if sm == 0 {
            // Exact rational root; build a symmetric bracket inside [lo, hi].
            let h = width / rat_i(4);
            let a = if &mid - &h > lo { &mid - &h } else { lo.clone() };
            let b = if &mid + &h < hi { &mid + &h } else { hi.clone() };
            let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
            if sa != 0 && sb != 0 && sa != sb {
                return Ok(RatInterval::new(a, b));
            }
            return Err(Error::RootNotFound(
                "exact root without a certified sign change around it".into(),
            ));
        }
        if sm == slo {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
            shi = sm;
        }
    }
    Ok(RatInterval::new(lo, hi))
}

/// One dyadic Newton contraction from the bracket midpoint. Pure heuristic:
/// returns a candidate sub-bracket strictly inside `[lo, hi]`, or None.
fn newton_proposal(
    p: &IntPoly,
    dp: &IntPoly,
    lo: &Rat,
    hi: &Rat,
    width: &Rat,
) -> Option<(Rat, Rat)> {
    let cur_width = hi - lo;
    // Precision: current accuracy doubled, plus guard bits.
    let cur_bits = -rat_to_f64(&cur_width).log2();
    if !cur_bits.is_finite() || cur_bits < 8.0 {
        return None;
    }
    let target_bits = (2.2 * cur_bits + 48.0).min(1e9) as u64;
    let x = RatInterval::new(lo.clone(), hi.clone()).midpoint();
    let (x, _) = crate::scalar::dyadic_enclosure(&x, target_bits);
    let fx = p.eval(&x);
    let dfx = dp.eval(&x);
    if dfx.is_zero() {
        return None;
    }
    let step = &fx / &dfx;
    let x1 = &x - &step;
    // Error bound heuristic: |step| shrinks quadratically; take a bracket of
    // twice the step plus the dyadic rounding slack.
    let slack = crate::scalar::pow2_neg(target_bits.saturating_sub(2));
    let rad = step.abs() + slack;
    let rad = if rad < width / rat_i(4) { width / rat_i(4) } else { rad };
    let (a, b) = (&x1 - &rad, &x1 + &rad);
    if a <= *lo || b >= *hi {
        return None;
    }
    // Trim endpoints to dyadics to keep later arithmetic small.
    let (a, _) = crate::scalar::dyadic_enclosure(&a, target_bits + 8);
    let (_, b) = crate::scalar::dyadic_enclosure(&b, target_bits + 8);
    Some((a, b))
}

/// Exact sign of a rational function's numerator × denominator at a point,
/// i.e. the sign of f; None on a pole.
pub fn ratfunc_sign(f: &RatFunc, x: &Rat) -> Option<i32> {
    f.sign_at(x)
}

/// Exact signed distance witness used by refutation reporting.
pub fn exact_value_below(f: &RatFunc, x: &Rat, floor: &Rat) -> bool {
    match f.eval(x) {
        Some(v) => &v < floor,
        None => false,
    }
}

pub fn sign_i32(x: &Rat) -> i32 {
    sign_of(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    fn dom(a: (i64, i64), b: (i64, i64)) -> RatInterval {
        RatInterval::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn proves_projint_style_bounds() {
        // 2/(1-2λ²-2λ³) - 2 >= 0 on [1/4, 1/3]
        let f = RatFunc::new(p(&[2]), p(&[1, 0, -2, -2])).sub(&RatFunc::constant(rat_i(2)));
        let cert = certify_positive("lower", &f, &dom((1, 4), (1, 3)), &Rat::zero(), 40).unwrap();
        assert!(cert.proved(), "{:?}", cert.outcome);

        // 3 - 2/(1-λ+λ²-2λ³) >= 0 on [1/4, 1/3]
        let g = RatFunc::constant(rat_i(3)).sub(&RatFunc::new(p(&[2]), p(&[1, -1, 1, -2])));
        let cert = certify_positive("upper", &g, &dom((1, 4), (1, 3)), &Rat::zero(), 40).unwrap();
        assert!(cert.proved());
    }

    #[test]
    fn refutes_negative_function() {
        // λ - 1 < 0 on [1/4, 1/3]: refuted at the root box.
        let f = RatFunc::from_int(p(&[-1, 1]));
        let cert = certify_positive("neg", &f, &dom((1, 4), (1, 3)), &Rat::zero(), 40).unwrap();
        match cert.outcome {
            CertOutcome::Refuted { .. } => {}
            ref o => panic!("expected refuted, got {o:?}"),
        }
        assert_eq!(cert.boxes(), 1);
    }

    #[test]
    fn denominator_vanishes_is_an_error() {
        // 1/(λ - 0.3) on a domain straddling the pole.
        let f = RatFunc::new(p(&[1]), p(&[-3, 10]));
        let err = certify_positive("pole", &f, &dom((1, 4), (1, 3)), &Rat::zero(), 6);
        assert!(matches!(err, Err(Error::DenominatorVanishes(_, _))));
    }

    #[test]
    fn soundness_by_sampling() {
        // Whenever PROVED, dense rational sampling never violates the floor.
        let f = RatFunc::new(p(&[2]), p(&[1, 0, -2, -2])).sub(&RatFunc::constant(rat_i(2)));
        let domain = dom((1, 4), (1, 3));
        let cert = certify_positive("lower", &f, &domain, &Rat::zero(), 40).unwrap();
        assert!(cert.proved());
        for k in 0..=1000 {
            let x = domain.lerp(&rat(k, 1000));
            assert!(f.eval(&x).unwrap() >= Rat::zero());
        }
    }

    #[test]
    fn isolates_quadratic_root() {
        // λ²+3λ-1 has its positive root at (√13-3)/2 ≈ 0.302776.
        let q = p(&[-1, 3, 1]);
        let w = rat(1, 1_000_000_000_000i64);
        let enc = isolate_root(&q, &dom((1, 4), (1, 3)), &w).unwrap();
        assert!(enc.width() <= w);
        // Sign change across the result.
        assert_eq!(q.sign_at(enc.lo()), -1);
        assert_eq!(q.sign_at(enc.hi()), 1);
        // Contains the true root: 0.302775637731994646...
        let approx = rat_to_f64(&enc.midpoint());
        assert!((approx - 0.30277563773199464).abs() < 1e-11);
    }

    #[test]
    fn isolates_linear_and_shared_roots() {
        let lin = p(&[-1, 2]);
        let enc = isolate_root(&lin, &dom((0, 1), (1, 1)), &rat(1, 1000)).unwrap();
        assert!(enc.contains(&rat(1, 2)));

        // λ³+4λ²+2λ-1 = (λ+1)(λ²+3λ-1) shares the root on [1/4,1/3].
        let cubic = p(&[-1, 2, 4, 1]);
        let w = rat(1, 1_000_000_000_000i64);
        let e1 = isolate_root(&cubic, &dom((1, 4), (1, 3)), &w).unwrap();
        let quad = p(&[-1, 3, 1]);
        let e2 = isolate_root(&quad, &dom((1, 4), (1, 3)), &w).unwrap();
        // Both brackets contain the common root: the quadratic changes sign
        // across each.
        assert!(quad.sign_at(e1.lo()) == -1 && quad.sign_at(e1.hi()) == 1);
        assert!(cubic.sign_at(e2.lo()) == -1 && cubic.sign_at(e2.hi()) == 1);
    }

    #[test]
    fn no_sign_change_detected() {
        let q = p(&[1, 0, 1]); // λ²+1
        assert!(matches!(
            isolate_root(&q, &dom((0, 1), (1, 1)), &rat(1, 100)),
            Err(Error::NoSignChange(1))
        ));
    }

    #[test]
    fn certificate_serializes() {
        let f = RatFunc::from_int(p(&[0, 1]));
        let cert = certify_positive("x>=0", &f, &dom((1, 4), (1, 3)), &Rat::zero(), 10).unwrap();
        let v = cert.to_json();
        assert_eq!(v["status"], "proved");
        assert_eq!(v["domain"]["lo"], "1/4");
        assert!(v["tree"].is_array());
    }
}
