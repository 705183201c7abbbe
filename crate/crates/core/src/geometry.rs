//! Planar hull geometry: slope intervals of translated scaled hulls, the
//! seven-child covering of a slope interval, and the certified
//! interval-structure facts about projected cylinders.
//!
//! The planar hull is the hexagon spanned by the fixed points of the seven
//! maps; membership tests and all covering inequalities are exact rational
//! comparisons. Box certificates treat the hull-scale term `λ^n` as an
//! independent interval, so one certificate can cover every depth at once.

use num_traits::{One, Signed, Zero};

use crate::certify::{certify_positive, Certificate};
use crate::ifs::orbit_point;
use crate::ratfunc::RatFunc;
use crate::scalar::{rat, rat_i, rat_pow};
use crate::words::{SymJ, WordJ};
use crate::{Error, IntPoly, Rat, RatInterval, Result};

/// A point (a, b) of the plane, used as the translated center of a scaled
/// hull.
#[derive(Debug, Clone, PartialEq)]
pub struct HullPoint {
    pub a: Rat,
    pub b: Rat,
}

impl HullPoint {
    pub fn new(a: Rat, b: Rat) -> Self {
        HullPoint { a, b }
    }

    /// Membership in the image of the hull under the (0,1)-map, intersected
    /// with the open right half plane: (a, b-1) lies in λ·hull and a > 0.
    /// The hull is the hexagon |x| ≤ 1/(1-λ), |y| ≤ 1/(1-λ),
    /// |x - y| ≤ 1/(1-λ).
    pub fn in_upper_cell(&self, lambda: &Rat) -> bool {
        if !self.a.is_positive() {
            return false;
        }
        let r = lambda / (Rat::one() - lambda);
        let y = &self.b - Rat::one();
        self.a.abs() <= r && y.abs() <= r && (&self.a - &y).abs() <= r
    }
}

/// Slope interval of the set `(a,b) + λ^n · hull`:
/// `[(a - λ^n/(1-λ))/b, (a + λ^n/(1-λ))/b]`.
///
/// Requires the point in the upper cell and `a ≥ λ^n/(1-λ)` so the set
/// stays in the closed right half plane.
pub fn hull_slope_interval(pt: &HullPoint, lambda: &Rat, n: u32) -> Result<RatInterval> {
    if !pt.in_upper_cell(lambda) {
        return Err(Error::PreconditionViolated(format!(
            "({}, {}) is not in the translated hull cell",
            crate::report::rat_str(&pt.a),
            crate::report::rat_str(&pt.b)
        )));
    }
    let reach = rat_pow(lambda, n as i64) / (Rat::one() - lambda);
    if pt.a < reach {
        return Err(Error::PreconditionViolated(format!(
            "a = {} < lambda^{n}/(1-lambda) = {}",
            crate::report::rat_str(&pt.a),
            crate::report::rat_str(&reach)
        )));
    }
    Ok(RatInterval::new(
        (&pt.a - &reach) / &pt.b,
        (&pt.a + &reach) / &pt.b,
    ))
}

/// Hull-scale exponent in a covering certificate.
#[derive(Debug, Clone, Copy)]
pub enum DepthSpec {
    /// The single level n.
    Exact(u32),
    /// Every level >= n at once (the scale ranges over (0, λ^n]).
    AllAtLeast(u32),
}

/// Result of certifying the six chain-overlap inequalities.
#[derive(Debug, Clone)]
pub struct CoveringCert {
    pub lambda: RatInterval,
    pub a: RatInterval,
    pub b: RatInterval,
    pub depth_spec_min: u32,
    pub all_depths: bool,
    pub proved: bool,
    /// 1-based indices of inequalities certified violated somewhere.
    pub failed: Vec<usize>,
    /// 1-based indices left undecided at the subdivision cap.
    pub undecided: Vec<usize>,
    pub boxes: usize,
}

impl CoveringCert {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": crate::report::interval_json(&self.lambda),
            "a": crate::report::interval_json(&self.a),
            "b": crate::report::interval_json(&self.b),
            "level": self.depth_spec_min,
            "all_depths": self.all_depths,
            "proved": self.proved,
            "failed": self.failed,
            "undecided": self.undecided,
            "boxes": self.boxes,
        })
    }
}

fn ipow(iv: &RatInterval, n: u32) -> RatInterval {
    debug_assert!(iv.lo().is_positive());
    RatInterval::new(rat_pow(iv.lo(), n as i64), rat_pow(iv.hi(), n as i64))
}

/// Margins of the six consecutive-overlap inequalities in the fixed child
/// order, cross-multiplied by the (certified positive) denominators, scaled
/// by (1-λ), and with the common positive factor s divided out:
///
/// 1: 2λb + s(1-2λ) - a(1-λ)
/// 2: 2a(1-λ) - s(1-λ) - (1-3λ)b
/// 3: 2λb + sλ - a(1-λ)
/// 4: 2λb - sλ - a(1-λ)
/// 5: 2a(1-λ) + s(1-λ) - (1-3λ)b
/// 6: 2λb - s(1-2λ) - a(1-λ)
///
/// Each variable occurs once per margin, so the interval evaluation is
/// exact in a, b, s; only λ needs subdivision. Returns None when a
/// denominator b ± s cannot be certified positive.
fn overlap_margins(
    a: &RatInterval,
    b: &RatInterval,
    lam: &RatInterval,
    s: &RatInterval,
) -> Option<[RatInterval; 6]> {
    if !(b.lo() > s.hi()) || !b.lo().is_positive() {
        return None;
    }
    let one = RatInterval::point(Rat::one());
    let two = RatInterval::point(rat_i(2));
    let one_m_l = one.sub(lam);
    let one_m_2l = one.sub(&lam.mul(&two));
    let one_m_3l = one.sub(&lam.mul(&RatInterval::point(rat_i(3))));
    let lb2 = lam.mul(b).mul(&two);
    let a1ml = a.mul(&one_m_l);
    let a1ml2 = a1ml.mul(&two);
    let s1ml = s.mul(&one_m_l);
    let b13 = one_m_3l.mul(b);
    Some([
        lb2.add(&s.mul(&one_m_2l)).sub(&a1ml),
        a1ml2.sub(&s1ml).sub(&b13),
        lb2.add(&s.mul(lam)).sub(&a1ml),
        lb2.sub(&s.mul(lam)).sub(&a1ml),
        a1ml2.add(&s1ml).sub(&b13),
        lb2.sub(&s.mul(&one_m_2l)).sub(&a1ml),
    ])
}

/// Certify the covering for the whole family of admissible cylinder
/// centers: λ is subdivided and the (a, b) center box is recomputed for
/// each λ sub-box, preserving the coupling between center and parameter.
pub fn check_covering_family(
    lambda_domain: &RatInterval,
    depth: DepthSpec,
    max_depth: u32,
) -> CoveringCert {
    let (n_min, all_depths) = match depth {
        DepthSpec::Exact(n) => (n, false),
        DepthSpec::AllAtLeast(n) => (n, true),
    };
    let mut failed = std::collections::BTreeSet::new();
    let mut undecided = std::collections::BTreeSet::new();
    let mut boxes = 0usize;
    let mut proved = true;
    let mut stack = vec![(lambda_domain.clone(), 0u32)];
    while let Some((lb, d)) = stack.pop() {
        boxes += 1;
        let (ab, bb) = admissible_center_box(&lb);
        let s = match depth {
            DepthSpec::Exact(n) => ipow(&lb, n),
            DepthSpec::AllAtLeast(n) => RatInterval::new(Rat::zero(), rat_pow(lb.hi(), n as i64)),
        };
        let mut bad: Vec<usize> = vec![];
        match overlap_margins(&ab, &bb, &lb, &s) {
            Some(margins) => {
                for (k, margin) in margins.iter().enumerate() {
                    if margin.lo().is_negative() {
                        if margin.hi().is_negative() {
                            failed.insert(k + 1);
                            proved = false;
                        } else {
                            bad.push(k + 1);
                        }
                    }
                }
                if bad.is_empty() {
                    continue;
                }
            }
            None => bad = (1..=6).collect(),
        }
        if d >= max_depth || lb.width().is_zero() || boxes > 200_000 {
            for k in bad {
                undecided.insert(k);
            }
            proved = false;
            continue;
        }
        let (l, r) = lb.split();
        stack.push((l, d + 1));
        stack.push((r, d + 1));
    }
    let (a, b) = admissible_center_box(lambda_domain);
    CoveringCert {
        lambda: lambda_domain.clone(),
        a,
        b,
        depth_spec_min: n_min,
        all_depths,
        proved,
        failed: failed.into_iter().collect(),
        undecided: undecided.into_iter().collect(),
        boxes,
    }
}

/// Certify that the seven child slope intervals overlap in the fixed order
/// over the whole (a, b, λ) box, hence cover the parent interval.
pub fn check_covering_box(
    a: &RatInterval,
    b: &RatInterval,
    lambda: &RatInterval,
    depth: DepthSpec,
    max_depth: u32,
) -> CoveringCert {
    let (n_min, all_depths) = match depth {
        DepthSpec::Exact(n) => (n, false),
        DepthSpec::AllAtLeast(n) => (n, true),
    };
    let mut failed = std::collections::BTreeSet::new();
    let mut undecided = std::collections::BTreeSet::new();
    let mut boxes = 0usize;
    let mut stack = vec![(a.clone(), b.clone(), lambda.clone(), 0u32)];
    let mut proved = true;
    while let Some((ab, bb, lb, d)) = stack.pop() {
        boxes += 1;
        let s = match depth {
            DepthSpec::Exact(n) => ipow(&lb, n),
            DepthSpec::AllAtLeast(n) => RatInterval::new(Rat::zero(), rat_pow(lb.hi(), n as i64)),
        };
        let margins = overlap_margins(&ab, &bb, &lb, &s);
        let mut bad: Vec<usize> = vec![];
        match margins {
            Some(margins) => {
                for (k, margin) in margins.iter().enumerate() {
                    if margin.lo().is_negative() {
                        if margin.hi().is_negative() {
                            failed.insert(k + 1);
                            proved = false;
                        } else {
                            bad.push(k + 1);
                        }
                    }
                }
                if bad.is_empty() {
                    continue;
                }
            }
            None => bad = (1..=6).collect(),
        }
        if d >= max_depth || boxes > 200_000 {
            for k in bad {
                undecided.insert(k);
            }
            proved = false;
            continue;
        }
        // Split the relatively widest coordinate.
        let rel = |iv: &RatInterval, whole: &RatInterval| {
            if whole.width().is_zero() {
                Rat::zero()
            } else {
                iv.width() / whole.width()
            }
        };
        let (ra, rb, rl) = (rel(&ab, a), rel(&bb, b), rel(&lb, lambda));
        if rl >= ra && rl >= rb && !lb.width().is_zero() {
            let (l, r) = lb.split();
            stack.push((ab.clone(), bb.clone(), l, d + 1));
            stack.push((ab, bb, r, d + 1));
        } else if ra >= rb && !ab.width().is_zero() {
            let (l, r) = ab.split();
            stack.push((l, bb.clone(), lb.clone(), d + 1));
            stack.push((r, bb, lb, d + 1));
        } else if !bb.width().is_zero() {
            let (l, r) = bb.split();
            stack.push((ab.clone(), l, lb.clone(), d + 1));
            stack.push((ab, r, lb, d + 1));
        } else {
            for k in bad {
                undecided.insert(k);
            }
            proved = false;
        }
    }
    CoveringCert {
        lambda: lambda.clone(),
        a: a.clone(),
        b: b.clone(),
        depth_spec_min: n_min,
        all_depths,
        proved,
        failed: failed.into_iter().collect(),
        undecided: undecided.into_iter().collect(),
        boxes,
    }
}

/// Point version over a λ interval.
pub fn check_covering(pt: &HullPoint, lambda: &RatInterval, n: u32) -> CoveringCert {
    check_covering_box(
        &RatInterval::point(pt.a.clone()),
        &RatInterval::point(pt.b.clone()),
        lambda,
        DepthSpec::Exact(n),
        40,
    )
}

/// The (a, b) box containing the centers of every cylinder with one of the
/// two admissible 3-prefixes, at any depth ≥ 3:
/// a ∈ λ ± λ³/(1-λ), b ∈ [1+λ² − λ³/(1-λ), 1+λ−λ² + λ³/(1-λ)].
pub fn admissible_center_box(lambda: &RatInterval) -> (RatInterval, RatInterval) {
    let one = Rat::one();
    let slack_at = |l: &Rat| rat_pow(l, 3) / (&one - l);
    let a_lo = lambda.lo() - slack_at(lambda.hi());
    let a_hi = lambda.hi() + slack_at(lambda.hi());
    let b_lo = &one + rat_pow(lambda.lo(), 2) - slack_at(lambda.hi());
    let b_hi = &one + lambda.hi() - rat_pow(lambda.lo(), 2) + slack_at(lambda.hi());
    (RatInterval::new(a_lo, a_hi), RatInterval::new(b_lo, b_hi))
}

/// Exact membership of a deep cylinder center in the admissible box.
pub fn center_in_admissible_box(w: &WordJ, lambda: &Rat) -> bool {
    let (xa, xb) = admissible_center_box(&RatInterval::point(lambda.clone()));
    let (a, b) = orbit_point(w, lambda);
    xa.contains(&a) && xb.contains(&b)
}

#[derive(Debug, Clone)]
pub struct CylinderReport {
    pub word_len: u32,
    /// Exact slope of the cylinder's orbit point.
    pub center: Rat,
    /// Exact slope interval of the translated hull.
    pub hull_interval: RatInterval,
    pub length: Rat,
    /// 2 λ^|k| ≤ length ≤ 3 λ^|k|.
    pub length_bounds_ok: bool,
    /// One box certificate valid for every deeper level.
    pub covering: CoveringCert,
    /// Explicit per-node covering checks chained down `depth` levels.
    pub chained_nodes: usize,
    pub chained_ok: bool,
}

/// Certified description of the slope interval of a projected cylinder:
/// center, exact endpoints, length bounds, and a covering certificate
/// witnessing that the hull interval is filled at every depth.
pub fn projected_cylinder_interval(k: &WordJ, lambda: &Rat, depth: u32) -> Result<CylinderReport> {
    let quarter = rat(1, 4);
    let third = rat(1, 3);
    if !(lambda > &quarter && lambda < &third) {
        return Err(Error::PreconditionViolated("lambda must lie in (1/4, 1/3)".into()));
    }
    let p3a = WordJ::from_pairs(&[(0, 1), (1, 1), (0, -1)]).unwrap();
    let p3b = WordJ::from_pairs(&[(0, 1), (1, 0), (0, 1)]).unwrap();
    if k.len() < 3 || !(k.prefix(3) == p3a || k.prefix(3) == p3b) {
        return Err(Error::PreconditionViolated(
            "word must start with one of the two admissible 3-prefixes".into(),
        ));
    }
    let n = k.len() as u32;
    let (ax, by) = orbit_point(k, lambda);
    let pt = HullPoint::new(ax.clone(), by.clone());
    let hull_interval = hull_slope_interval(&pt, lambda, n)?;
    let center = &ax / &by;
    let length = hull_interval.width();
    let ln = rat_pow(lambda, n as i64);
    let length_bounds_ok = rat_i(2) * &ln <= length && length <= rat_i(3) * &ln;

    // Family certificate covering all depths at once.
    let lam_iv = RatInterval::point(lambda.clone());
    let covering = check_covering_family(&lam_iv, DepthSpec::AllAtLeast(3), 40);

    // Explicit chain for illustration: each node's children overlap and
    // their union reproduces the node's interval exactly.
    let mut chained_nodes = 0usize;
    let mut chained_ok = true;
    let mut frontier = vec![k.clone()];
    for _ in 0..depth {
        let mut next = vec![];
        for w in &frontier {
            chained_nodes += 1;
            if !chain_step_exact(w, lambda)? {
                chained_ok = false;
            }
            for s in SymJ::COVERING_ORDER {
                next.push(w.child(s));
            }
        }
        frontier = next;
        if frontier.len() > 4000 {
            break;
        }
    }
    Ok(CylinderReport {
        word_len: n,
        center,
        hull_interval,
        length,
        length_bounds_ok,
        covering,
        chained_nodes,
        chained_ok,
    })
}

/// Exact single-node covering check: children in order, consecutive
/// overlaps, and union endpoints equal to the parent endpoints.
pub fn chain_step_exact(w: &WordJ, lambda: &Rat) -> Result<bool> {
    let n = w.len() as u32;
    let (ax, by) = orbit_point(w, lambda);
    let parent = hull_slope_interval(&HullPoint::new(ax, by), lambda, n)?;
    let mut prev: Option<RatInterval> = None;
    let mut lo_min: Option<Rat> = None;
    let mut hi_max: Option<Rat> = None;
    for s in SymJ::COVERING_ORDER {
        let c = w.child(s);
        let (cx, cy) = orbit_point(&c, lambda);
        let child = hull_slope_interval(&HullPoint::new(cx, cy), lambda, n + 1)?;
        if let Some(p) = &prev {
            if p.hi() < child.lo() {
                return Ok(false);
            }
        }
        if lo_min.as_ref().map_or(true, |m| child.lo() < m) {
            lo_min = Some(child.lo().clone());
        }
        if hi_max.as_ref().map_or(true, |m| child.hi() > m) {
            hi_max = Some(child.hi().clone());
        }
        prev = Some(child);
    }
    Ok(lo_min.as_ref() == Some(parent.lo()) && hi_max.as_ref() == Some(parent.hi()))
}

#[derive(Debug)]
pub struct ProjintCert {
    pub certificates: Vec<Certificate>,
    pub proved: bool,
}

/// Certify the closed-form length bounds and the covering feasibility
/// display over a λ domain inside [1/4, 1/3].
pub fn verify_projint_numeric(lambda_domain: &RatInterval) -> Result<ProjintCert> {
    verify_projint_with_floors(lambda_domain, &Rat::zero(), &Rat::zero())
}

/// Same with adjustable floors on the two sides of the min display
/// (exploration only; the contract floor is zero).
pub fn verify_projint_with_floors(
    lambda_domain: &RatInterval,
    len_floor: &Rat,
    min_floor: &Rat,
) -> Result<ProjintCert> {
    if !(lambda_domain.lo() >= &rat(1, 4) && lambda_domain.hi() <= &rat(1, 3)) {
        return Err(Error::PreconditionViolated(
            "domain must lie inside [1/4, 1/3]".into(),
        ));
    }
    let lam = RatFunc::from_int(IntPoly::from_i64(&[0, 1]));
    let one = RatFunc::from_int(IntPoly::one());
    let two = RatFunc::constant(rat_i(2));
    let three = RatFunc::constant(rat_i(3));

    // 2/(1-2λ²-2λ³) ≥ 2  and  2/(1-λ+λ²-2λ³) ≤ 3.
    let f_lo = two.div(&RatFunc::from_int(IntPoly::from_i64(&[1, 0, -2, -2]))).sub(&two);
    let f_hi = three.sub(&two.div(&RatFunc::from_int(IntPoly::from_i64(&[1, -1, 1, -2]))));

    // Covering feasibility: both arms of the min display exceed λ³.
    let slack = lam.mul(&lam).mul(&lam).div(&one.sub(&lam)); // λ³/(1-λ)
    let a_min = lam.sub(&slack);
    let a_max = lam.add(&slack);
    let b_min = one.add(&lam.mul(&lam)).sub(&slack);
    let b_max = one.add(&lam).sub(&lam.mul(&lam)).add(&slack);
    let ratio1 = one.sub(&lam.mul(&RatFunc::constant(rat_i(3)))).div(&one.sub(&lam));
    let arm1 = two.mul(&a_min).sub(&ratio1.mul(&b_max));
    let denom2 = one.sub(&lam.mul(&two));
    let arm2 = two
        .mul(&lam)
        .div(&denom2)
        .mul(&b_min)
        .sub(&one.sub(&lam).div(&denom2).mul(&a_max));
    let lam3 = lam.mul(&lam).mul(&lam);
    let g1 = arm1.sub(&lam3);
    let g2 = arm2.sub(&lam3);

    let certificates = vec![
        certify_positive("cylinder_length_lower", &f_lo, lambda_domain, len_floor, 40)?,
        certify_positive("cylinder_length_upper", &f_hi, lambda_domain, len_floor, 40)?,
        certify_positive("covering_min_arm1", &g1, lambda_domain, min_floor, 40)?,
        certify_positive("covering_min_arm2", &g2, lambda_domain, min_floor, 40)?,
    ];
    let proved = certificates.iter().all(|c| c.proved());
    Ok(ProjintCert { certificates, proved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::CertOutcome;
    use crate::scalar::rat;

    #[test]
    fn hull_slope_interval_example() {
        // (a,b) = (3/10, 1), λ = 3/10, n = 2: reach λ²/(1-λ) = 9/70.
        let pt = HullPoint::new(rat(3, 10), rat(1, 1));
        let iv = hull_slope_interval(&pt, &rat(3, 10), 2).unwrap();
        assert_eq!(*iv.lo(), rat(6, 35));
        assert_eq!(*iv.hi(), rat(3, 7));
        // Large n: interval shrinks toward a/b.
        let iv = hull_slope_interval(&pt, &rat(3, 10), 40).unwrap();
        assert!(iv.contains(&rat(3, 10)));
        assert!(iv.width() < rat(1, 1_000_000_000_000i64));
        // Boundary a = λ^n/(1-λ): left endpoint exactly zero.
        let a = rat_pow(&rat(3, 10), 3) / (Rat::one() - rat(3, 10));
        let pt = HullPoint::new(a, rat(1, 1));
        let iv = hull_slope_interval(&pt, &rat(3, 10), 3).unwrap();
        assert!(iv.lo().is_zero());
    }

    #[test]
    fn hull_slope_preconditions() {
        // a below the reach fails with the stated inequality.
        let pt = HullPoint::new(rat(1, 1000), rat(1, 1));
        assert!(matches!(
            hull_slope_interval(&pt, &rat(3, 10), 2),
            Err(Error::PreconditionViolated(_))
        ));
        // Point outside the translated cell fails membership.
        let pt = HullPoint::new(rat(2, 1), rat(1, 1));
        assert!(hull_slope_interval(&pt, &rat(3, 10), 2).is_err());
    }

    #[test]
    fn hull_slope_inclusion_sampling() {
        // Slopes of sampled points of (a,b) + λ^n·hull stay inside the
        // returned interval. Samples are rational convex combinations of
        // the hexagon vertices.
        let lambda = rat(3, 10);
        let n = 3u32;
        let pt = HullPoint::new(rat(3, 10), rat(11, 10));
        let iv = hull_slope_interval(&pt, &lambda, n).unwrap();
        let r = Rat::one() / (Rat::one() - &lambda);
        let verts: Vec<(Rat, Rat)> = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
            .iter()
            .map(|&(x, y)| (rat_i(x) * &r, rat_i(y) * &r))
            .collect();
        let scale = rat_pow(&lambda, n as i64);
        let mut seed = 9u64;
        for _ in 0..200 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (seed >> 33) as usize % 6;
            let j = (seed >> 13) as usize % 6;
            let w1 = rat((seed % 97) as i64, 97);
            let w2 = (Rat::one() - &w1) * rat((seed % 53) as i64, 53);
            let w3 = Rat::one() - &w1 - &w2;
            let x = &verts[i].0 * &w1 + &verts[j].0 * &w2 + &verts[(i + j) % 6].0 * &w3;
            let y = &verts[i].1 * &w1 + &verts[j].1 * &w2 + &verts[(i + j) % 6].1 * &w3;
            let px = &pt.a + &scale * x;
            let py = &pt.b + &scale * y;
            let slope = px / py;
            assert!(iv.contains(&slope), "sample slope escaped the interval");
        }
    }

    #[test]
    fn covering_proved_on_reference_box() {
        // The admissible center box over a λ interval just inside the
        // working range, hull-scale treated for all depths ≥ 3.
        let lam = RatInterval::new(
            rat(1, 4) + rat(1, 1_000_000),
            rat(1, 3) - rat(1, 1_000_000),
        );
        let cert = check_covering_family(&lam, DepthSpec::AllAtLeast(3), 40);
        assert!(cert.proved, "failed: {:?} undecided: {:?}", cert.failed, cert.undecided);
    }

    #[test]
    fn covering_fails_near_zero_a() {
        // a near zero violates the inequalities that need 2a − λ^n large
        // (the second and fifth in the chain).
        let lam = RatInterval::point(rat(3, 10));
        let pt = HullPoint::new(rat(1, 100), rat(11, 10));
        let cert = check_covering(&pt, &lam, 3);
        assert!(!cert.proved);
        assert!(cert.failed.contains(&2) || cert.failed.contains(&5), "{:?}", cert.failed);
    }

    #[test]
    fn covering_point_proved() {
        let lam = RatInterval::point(rat(3, 10));
        let (a, b) = admissible_center_box(&lam);
        let pt = HullPoint::new(a.midpoint(), b.midpoint());
        let cert = check_covering(&pt, &lam, 3);
        assert!(cert.proved);
    }

    #[test]
    fn admissible_box_absorbs_deep_centers() {
        // Orbit points of any admissible-prefix extension stay in the box.
        let lambda = rat(3, 10);
        let mut seed = 5u64;
        for prefix in [crate::words::admissible_prefix_a(), crate::words::admissible_prefix_b()] {
            for len in [3usize, 5, 9, 15] {
                let mut w = prefix.prefix(3.min(len));
                while w.len() < len {
                    seed = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                    let s = SymJ::ALPHABET[(seed >> 29) as usize % 7];
                    w.push(s);
                }
                assert!(center_in_admissible_box(&w, &lambda), "len {len}");
            }
        }
    }

    #[test]
    fn cylinder_interval_report() {
        // |k| = 3 at λ = 3/10: length within [2λ³, 3λ³] = [0.054, 0.081].
        let k = WordJ::from_pairs(&[(0, 1), (1, 1), (0, -1)]).unwrap();
        let rep = projected_cylinder_interval(&k, &rat(3, 10), 1).unwrap();
        assert!(rep.length_bounds_ok);
        assert!(rep.length >= rat(54, 1000) && rep.length <= rat(81, 1000));
        // Center equals the slope function value.
        let f = crate::ifs::slope_ratfunc(&k).unwrap();
        assert_eq!(rep.center, f.eval(&rat(3, 10)).unwrap());
        // Length formula 2λ^|k| / (b (1-λ)) against the hull endpoints.
        let (_, b) = orbit_point(&k, &rat(3, 10));
        let expect = rat_i(2) * rat_pow(&rat(3, 10), 3) / (&b * (Rat::one() - rat(3, 10)));
        assert_eq!(rep.length, expect);
        assert!(rep.covering.proved);
        assert!(rep.chained_ok);
        assert_eq!(rep.chained_nodes, 1);
    }

    #[test]
    fn cylinder_interval_preconditions() {
        let k = WordJ::from_pairs(&[(0, 1), (1, 1), (0, -1)]).unwrap();
        assert!(projected_cylinder_interval(&k, &rat(1, 5), 0).is_err());
        let bad = WordJ::from_pairs(&[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(projected_cylinder_interval(&bad, &rat(3, 10), 0).is_err());
    }

    #[test]
    fn projint_bounds_certified() {
        let dom = RatInterval::new(rat(1, 4), rat(1, 3));
        let cert = verify_projint_numeric(&dom).unwrap();
        assert!(cert.proved);
        assert_eq!(cert.certificates.len(), 4);
        // Degenerate point domain: direct rational evaluation.
        let point = RatInterval::point(rat(3, 10));
        let cert = verify_projint_numeric(&point).unwrap();
        assert!(cert.proved);
    }

    #[test]
    fn projint_exploratory_floor_is_refuted() {
        // Tightening the min-display floor to 0.2 fails near the left
        // endpoint; the outcome is recorded, not asserted.
        let dom = RatInterval::new(rat(1, 4), rat(1, 3));
        let cert = verify_projint_with_floors(&dom, &Rat::zero(), &rat(1, 5)).unwrap();
        assert!(!cert.proved);
        let arm1 = &cert.certificates[2];
        assert!(matches!(
            arm1.outcome,
            CertOutcome::Refuted { .. } | CertOutcome::Inconclusive { .. }
        ));
    }
}
