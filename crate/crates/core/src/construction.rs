//! The inductive tree of parameter intervals and the per-leaf certificate
//! bundles.
//!
//! Each node carries a planar word and a closed λ interval whose width
//! follows the gap schedule. Expanding a node picks a rational surrogate
//! parameter inside the shrunken interval, descends through the certified
//! seven-child covering to find two distinct extensions whose slopes nearly
//! match the node's slope, isolates the two roots of the slope differences,
//! and places one schedule-width interval on a fixed side of each root.
//!
//! Everything asserted about a node is re-checked by exact arithmetic:
//! interval widths, nesting, disjointness, the two-sided slope–distance
//! bounds at interval endpoints, and the slope band. Distances to all older
//! words are certified through a number-theoretic minimum-gap bound at the
//! rational surrogate parameter: with the surrogate's denominator exceeding
//! every cross-difference coefficient, a value collision at the surrogate
//! forces the two slope functions to be identical (rational root theorem),
//! which is exactly the dichotomy the construction needs.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::eta::EtaSchedule;
use crate::geometry::{check_covering_family, hull_slope_interval, DepthSpec, HullPoint};
use crate::ifs::{orbit_point, orbit_polys, ParamPair};
use crate::report::{dual, interval_json, rat_str};
use crate::scalar::{dyadic_enclosure, rat, rat_i, rat_pow, rat_to_f64, sign_of, simplest_in_interval, Budget};
use crate::separation::word_from_code;
use crate::transversality::{certify_uniform_derivative_bound, TransversalityCert, UniformDerivativeCert};
use crate::words::{admissible_prefix_a, admissible_prefix_b, has_admissible_prefix, pair_decode, SymJ, WordJ};
use crate::{Error, Int, IntPoly, Rat, RatInterval, Result};

/// Raw coordinate polynomials of a word's orbit point; hot-path evaluation
/// avoids canonicalization.
#[derive(Debug, Clone)]
struct SlopePolys {
    x: IntPoly,
    y: IntPoly,
}

impl SlopePolys {
    fn of(w: &WordJ) -> Self {
        let (x, y) = orbit_polys(w);
        SlopePolys { x, y }
    }

    fn value(&self, lam: &Rat) -> Rat {
        self.x.eval(lam) / self.y.eval(lam)
    }

    fn max_deg(&self, other: &SlopePolys) -> usize {
        [self.x.degree(), self.y.degree(), other.x.degree(), other.y.degree()]
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(0)
    }
}

fn int_sign(x: &Int) -> i32 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Scaled integer evaluations of the slope difference at a rational point:
/// slope(a) − slope(b) = cross / (ya·yb) with cross, ya, yb integers at a
/// common power of the denominator. No rational reduction on big values.
struct DiffEval {
    cross: Int,
    ya: Int,
    yb: Int,
}

impl DiffEval {
    fn at(a: &SlopePolys, b: &SlopePolys, x: &Rat) -> DiffEval {
        let d = a.max_deg(b);
        let (u, v) = (x.numer(), x.denom());
        let xa = a.x.eval_scaled(u, v, d);
        let ya = a.y.eval_scaled(u, v, d);
        let xb = b.x.eval_scaled(u, v, d);
        let yb = b.y.eval_scaled(u, v, d);
        DiffEval {
            cross: xa * &yb - xb * &ya,
            ya,
            yb,
        }
    }

    fn sign(&self) -> i32 {
        int_sign(&self.cross) * int_sign(&self.ya) * int_sign(&self.yb)
    }

    /// Compare |slope difference| with a nonnegative rational bound.
    fn abs_cmp(&self, bound: &Rat) -> std::cmp::Ordering {
        let lhs = self.cross.abs() * bound.denom();
        let rhs = bound.numer() * (&self.ya * &self.yb).abs();
        lhs.cmp(&rhs)
    }

    /// Compare the signed difference with a signed rational bound.
    fn cmp_value(&self, bound: &Rat) -> std::cmp::Ordering {
        // cross/(ya·yb) vs pn/pd with pd > 0.
        let den = &self.ya * &self.yb;
        let den_sign = int_sign(&den);
        debug_assert!(den_sign != 0);
        let lhs = &self.cross * bound.denom() * den_sign;
        let rhs = bound.numer() * den.abs();
        lhs.cmp(&rhs)
    }
}

/// Exact sign of slope(a) − slope(b) at a rational point.
fn slope_diff_sign(a: &SlopePolys, b: &SlopePolys, x: &Rat) -> i32 {
    DiffEval::at(a, b, x).sign()
}

/// Truncating Horner evaluation at a dyadic point; proposal quality only.
fn eval_dyadic(p: &IntPoly, x: &Rat, prec: u64) -> Rat {
    let mut acc = Rat::zero();
    for c in p.coeffs().iter().rev() {
        acc = &acc * x + Rat::from_integer(c.clone());
        acc = dyadic_enclosure(&acc, prec).0;
    }
    acc
}

/// Per-node records for the five inductive conditions.
#[derive(Debug, Clone)]
pub struct NodeConds {
    /// Admissible prefix and level length growth.
    pub prefix_and_growth: bool,
    /// Children nested in the parent and mutually disjoint (set on parents).
    pub nesting: Option<bool>,
    /// Interval width equals the schedule value exactly.
    pub width_exact: bool,
    /// Parent-child slope distance inside (½δη, 3/2·δ⁻¹η) at both interval
    /// endpoints.
    pub parent_distance: Option<bool>,
    /// Certificate for distances to every older word.
    pub old_words: Option<OldWordGapCert>,
    /// Slope band 0 ≤ slope ≤ λ/(1−λ) via the class certificates.
    pub slope_band: bool,
}

/// Certificate that the new words keep the schedule distance from every
/// word of length up to the previous level maximum.
#[derive(Debug, Clone)]
pub struct OldWordGapCert {
    /// The rational surrogate parameter.
    pub lambda_surrogate: Rat,
    pub surrogate_denominator_bits: u64,
    /// Scope of the minimum: all words up to this length.
    pub max_len: usize,
    /// Number-theoretic positive lower bound on nonzero slope gaps at the
    /// surrogate.
    pub gap_bound: Rat,
    /// 5δ⁻¹η < gap bound (the third index condition).
    pub gap_condition: bool,
    /// Surrogate denominator exceeds twice the word-length scope, so a
    /// value collision forces function identity.
    pub collision_excludes_identity: bool,
    /// (2δ⁻¹ − δ)·η_{|l|+m} ≥ η_{new length} (mean-value chain endpoint).
    pub mean_value_margin: bool,
    /// Digest of the uniform derivative-bound certificate backing the
    /// mean-value step.
    pub uniform_bound_digest: String,
}

#[derive(Debug, Clone)]
pub struct ConstructionNode {
    /// Binary address; empty for the root.
    pub omega: String,
    pub k_word: WordJ,
    pub interval: RatInterval,
    /// Auxiliary partner: the base partner word at the root, the parent's
    /// word elsewhere.
    pub l_word: WordJ,
    /// Extension index chosen when this node was created (0 at the root).
    pub m_used: u32,
    pub conds: NodeConds,
}

#[derive(Debug, Clone)]
pub struct LevelStats {
    pub level: u32,
    pub min_len: usize,
    pub max_len: usize,
    pub min_eta: Rat,
}

/// Fixed context for one construction run.
#[derive(Debug)]
pub struct ConstructionConfig {
    pub eta: EtaSchedule,
    pub cert: TransversalityCert,
    pub uniform: UniformDerivativeCert,
    pub budget: Budget,
    /// Working λ domain, strictly inside (1/4, 1/3).
    pub lambda_domain: RatInterval,
    /// Certification depth for the per-leaf gap tables.
    pub cert_n: u32,
}

impl ConstructionConfig {
    pub fn standard(eta: EtaSchedule, cert: TransversalityCert, budget: Budget, cert_n: u32) -> Result<Self> {
        let lambda_domain = cert.lambda_domain.clone();
        let uniform = certify_uniform_derivative_bound(&lambda_domain)?;
        eta.validate(40.min(budget.max_eta_index))?;
        // The covering feeds the descent; certify it once for the family.
        let covering = check_covering_family(&lambda_domain, DepthSpec::AllAtLeast(3), 40);
        if !covering.proved {
            return Err(Error::CertificationFailed(format!(
                "covering family not proved: failed {:?} undecided {:?}",
                covering.failed, covering.undecided
            )));
        }
        Ok(ConstructionConfig {
            eta,
            cert,
            uniform,
            budget,
            lambda_domain,
            cert_n,
        })
    }

    fn delta(&self) -> &Rat {
        &self.cert.delta
    }

    fn delta_inv(&self) -> Rat {
        self.cert.delta_inv()
    }

    fn eta_prime_factor(&self) -> Rat {
        rat(3, 2) * self.delta_inv() * self.eta.tail_constant()
    }
}

#[derive(Debug)]
pub struct ConstructionTree {
    pub nodes: BTreeMap<String, ConstructionNode>,
    pub levels: Vec<LevelStats>,
    /// Initial schedule cutoff index.
    pub cutoff: usize,
    /// Root slope-root enclosure.
    pub root_enclosure: RatInterval,
}

impl ConstructionTree {
    pub fn leaves(&self) -> Vec<String> {
        let depth = self.levels.len() - 1;
        self.nodes
            .keys()
            .filter(|k| k.len() == depth)
            .cloned()
            .collect()
    }

    pub fn branch(&self, leaf: &str) -> Vec<&ConstructionNode> {
        let mut out = vec![&self.nodes[""]];
        for i in 1..=leaf.len() {
            out.push(&self.nodes[&leaf[..i]]);
        }
        out
    }

    /// Exact per-level checks of the contradiction margin
    /// ½δ·η(level n+1) − 3/2·δ⁻¹C·η(level n+2) > 0, with the frontier level
    /// handled through the minimal next length.
    pub fn contradiction_checks(&self, cfg: &ConstructionConfig) -> Result<Vec<(u32, bool)>> {
        let half_delta = cfg.delta() / rat_i(2);
        let factor = cfg.eta_prime_factor();
        let mut out = vec![];
        for w in self.levels.windows(2) {
            if w[0].level == 0 {
                continue; // levels named by the child side of the pair
            }
            let lhs = &half_delta * &w[0].min_eta;
            let rhs = &factor * cfg.eta.value(w[1].min_len)?;
            out.push((w[0].level, lhs > rhs));
        }
        // Frontier: the next level is at least one symbol longer.
        if let Some(last) = self.levels.last() {
            if last.level >= 1 {
                let lhs = &half_delta * &last.min_eta;
                let rhs = &factor * cfg.eta.value(last.max_len + 1)?;
                out.push((last.level, lhs > rhs));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, cfg: &ConstructionConfig) -> serde_json::Value {
        let nodes: BTreeMap<String, serde_json::Value> = self
            .nodes
            .iter()
            .map(|(k, n)| {
                (
                    k.clone(),
                    json!({
                        "k_word": n.k_word.to_string(),
                        "l_word": n.l_word.to_string(),
                        "k_len": n.k_word.len(),
                        "interval": interval_json(&n.interval),
                        "m_used": n.m_used,
                        "conds": {
                            "prefix_and_growth": n.conds.prefix_and_growth,
                            "nesting": n.conds.nesting,
                            "width_exact": n.conds.width_exact,
                            "parent_distance": n.conds.parent_distance,
                            "slope_band": n.conds.slope_band,
                            "old_words": n.conds.old_words.as_ref().map(|c| json!({
                                "lambda_surrogate": rat_str(&c.lambda_surrogate),
                                "surrogate_denominator_bits": c.surrogate_denominator_bits,
                                "max_len": c.max_len,
                                "gap_bound": crate::report::dec17(&c.gap_bound),
                                "gap_condition": c.gap_condition,
                                "collision_excludes_identity": c.collision_excludes_identity,
                                "mean_value_margin": c.mean_value_margin,
                                "uniform_bound_digest": c.uniform_bound_digest,
                            })),
                        },
                    }),
                )
            })
            .collect();
        json!({
            "eta": cfg.eta.to_json(),
            "delta": dual(cfg.delta()),
            "eta_prime_factor": dual(&cfg.eta_prime_factor()),
            "transversality_digest": cfg.cert.digest(),
            "cutoff": self.cutoff,
            "levels": self.levels.iter().map(|l| json!({
                "level": l.level,
                "min_len": l.min_len,
                "max_len": l.max_len,
                "min_eta": crate::report::dec17(&l.min_eta),
            })).collect::<Vec<_>>(),
            "nodes": nodes,
        })
    }
}

/// The base cross-difference polynomial of the two admissible 5-words,
/// from the raw coordinate polynomials.
pub fn base_cross_difference() -> IntPoly {
    let (xk, yk) = orbit_polys(&admissible_prefix_a());
    let (xl, yl) = orbit_polys(&admissible_prefix_b());
    xk.mul(&yl).sub(&xl.mul(&yk))
}

/// Root node: isolates the base slope-crossing, finds the schedule cutoff,
/// pads the base word if the cutoff exceeds its length, and centers the
/// root interval at the crossing.
pub fn initial_node(cfg: &ConstructionConfig) -> Result<(ConstructionNode, ConstructionTree)> {
    let cross = base_cross_difference();
    // Coarse enclosure first; tightened after the cutoff is known.
    let coarse = crate::certify::isolate_root(&cross, &cfg.lambda_domain, &rat(1, 1i64 << 40))?;

    // Cutoff: smallest K with the centered interval inside the domain and
    // 2·(1/4)^k > 3/2·δ⁻¹·η_k for every k ≥ K.
    let three_half_dinv = rat(3, 2) * cfg.delta_inv();
    let cond_interval = |k: usize| -> Result<bool> {
        let h = cfg.eta.value(k)? / rat_i(2);
        Ok(coarse.lo() - &h > *cfg.lambda_domain.lo() && coarse.hi() + &h < *cfg.lambda_domain.hi())
    };
    let cond_decay = |k: usize| -> Result<bool> {
        Ok(rat_i(2) * rat_pow(&rat(1, 4), k as i64) > &three_half_dinv * cfg.eta.value(k)?)
    };
    let mut cutoff = None;
    'search: for k0 in 1..=cfg.budget.max_eta_index {
        if !(cond_interval(k0)? && cond_decay(k0)?) {
            continue;
        }
        // Explicit prefix until the ratio bound drops to 1/4, then the
        // geometric comparison persists: both sides shrink by factors
        // ratio ≤ 1/4 (left) and exactly 1/4 (right).
        let mut k = k0;
        loop {
            if !cond_decay(k)? {
                continue 'search;
            }
            if cfg.eta.ratio_bound_at(k)? <= rat(1, 4) {
                cutoff = Some(k0);
                break 'search;
            }
            k += 1;
            if k > cfg.budget.max_eta_index {
                return Err(Error::EtaTooSlow(format!(
                    "ratio bound never reaches 1/4 within {} indices",
                    cfg.budget.max_eta_index
                )));
            }
        }
    }
    let cutoff = cutoff.ok_or_else(|| {
        Error::EtaTooSlow(format!(
            "no cutoff index within {} satisfies the two conditions",
            cfg.budget.max_eta_index
        ))
    })?;

    let base_len = admissible_prefix_a().len().max(cutoff);
    let k_word = admissible_prefix_a().pad_zeros(base_len - 5);
    // Padding must not move the slope function.
    debug_assert_eq!(
        crate::ifs::slope_ratfunc(&k_word).unwrap(),
        crate::ifs::slope_ratfunc(&admissible_prefix_a()).unwrap()
    );
    let eta_b = cfg.eta.value(k_word.len())?;

    // Tighten the crossing enclosure well below the interval width.
    let tight_w = &eta_b * crate::scalar::pow2_neg(16);
    let enclosure = crate::certify::isolate_root(&cross, &coarse, &tight_w)?;
    let c = enclosure.midpoint();
    let half = &eta_b / rat_i(2);
    let interval = RatInterval::new(&c - &half, &c + &half);
    if !cfg.lambda_domain.contains_interval(&interval) {
        return Err(Error::MarginViolation("root interval escapes the domain".into()));
    }

    // First-distance certificate: |slope(k) − slope(l)| ≤ δ⁻¹·η at both
    // endpoints (monotone difference bridges the interior).
    let kp = SlopePolys::of(&k_word);
    let lp = SlopePolys::of(&admissible_prefix_b());
    let bound = cfg.delta_inv() * &eta_b;
    for x in [interval.lo(), interval.hi()] {
        if DiffEval::at(&kp, &lp, x).abs_cmp(&bound) == std::cmp::Ordering::Greater {
            return Err(Error::CertificationFailed(
                "first-distance bound fails at a root-interval endpoint".into(),
            ));
        }
    }

    let node = ConstructionNode {
        omega: String::new(),
        k_word: k_word.clone(),
        interval: interval.clone(),
        l_word: admissible_prefix_b(),
        m_used: 0,
        conds: NodeConds {
            prefix_and_growth: has_admissible_prefix(&k_word),
            nesting: None,
            width_exact: interval.width() == eta_b,
            parent_distance: None,
            old_words: None,
            slope_band: slope_band_ok(cfg)?,
        },
    };
    let mut nodes = BTreeMap::new();
    nodes.insert(String::new(), node.clone());
    let levels = vec![LevelStats {
        level: 0,
        min_len: k_word.len(),
        max_len: k_word.len(),
        min_eta: eta_b,
    }];
    Ok((
        node,
        ConstructionTree {
            nodes,
            levels,
            cutoff,
            root_enclosure: enclosure,
        },
    ))
}

/// Class certificates for the slope band 0 ≤ slope ≤ λ/(1−λ) over the whole
/// working range, covering every admissible-prefix word at once.
fn slope_band_ok(cfg: &ConstructionConfig) -> Result<bool> {
    use crate::ratfunc::RatFunc;
    let e = crate::transversality::tail_bound();
    let pf = |c: &[i64]| RatFunc::from_int(IntPoly::from_i64(c));
    let lam = pf(&[0, 1]);
    let one = pf(&[1]);
    let band = lam.div(&one.sub(&lam));
    let checks = [
        // numerators positive: λ+λ⁴−E and λ−λ⁴−E
        pf(&[0, 1, 0, 0, 1]).sub(&e),
        pf(&[0, 1, 0, 0, -1]).sub(&e),
        // denominators positive: 1+λ−λ²−λ³−E and 1+λ²+λ³−E
        pf(&[1, 1, -1, -1]).sub(&e),
        pf(&[1, 0, 1, 1]).sub(&e),
        // band upper bounds
        band.sub(&pf(&[0, 1, 0, 0, 1]).add(&e).div(&pf(&[1, 1, -1, -1]).sub(&e))),
        band.sub(&pf(&[0, 1, 0, 0, -1]).add(&e).div(&pf(&[1, 0, 1, 1]).sub(&e))),
    ];
    for (i, f) in checks.iter().enumerate() {
        let cert = crate::certify::certify_positive(
            &format!("slope_band_{i}"),
            f,
            &cfg.lambda_domain,
            &Rat::zero(),
            40,
        )?;
        if !cert.proved() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number-theoretic lower bound on nonzero slope gaps at a reduced rational
/// parameter p/q: distinct slopes of words up to `max_len` differ by at
/// least ((1−2λ)/(1−λ))² q^(−2(max_len−1)).
pub fn gap_lower_bound(lambda: &Rat, max_len: usize) -> Rat {
    assert!(lambda > &rat(1, 4) && lambda < &rat(1, 3));
    let factor = (Rat::one() - lambda * rat_i(2)) / (Rat::one() - lambda);
    let q = lambda.denom().clone();
    let e = 2 * (max_len.max(1) - 1) as u32;
    &factor * &factor / Rat::from_integer(q.pow(e))
}

/// Search state for the two-branch covering descent.
struct DescentBranch {
    word: WordJ,
}

/// Descend through the seven-child covering toward the target slope,
/// branching at the first level where two consecutive children both contain
/// the target. Returns two distinct extensions of the parent word, each
/// with extension length ≥ `min_ext` and slope within `tol` of `target`.
pub fn greedy_descend(
    l_parent: &WordJ,
    target: &Rat,
    lambda: &Rat,
    min_ext: u32,
    tol: &Rat,
    budget: &Budget,
) -> Result<(WordJ, WordJ)> {
    descend_impl(l_parent, target, target, lambda, min_ext, tol, budget, true)
}

#[allow(clippy::too_many_arguments)]
fn descend_impl(
    l_parent: &WordJ,
    target: &Rat,
    original_target: &Rat,
    lambda: &Rat,
    min_ext: u32,
    tol: &Rat,
    budget: &Budget,
    allow_perturb: bool,
) -> Result<(WordJ, WordJ)> {
    let tol_quarter = tol / rat_i(4);
    let mut path = l_parent.clone();
    let mut branches: Option<(DescentBranch, DescentBranch)> = None;
    let max_steps = 4 * budget.max_bits / 1024 + 4096; // generous; budget fires first

    for _step in 0..max_steps {
        match &mut branches {
            None => {
                let t = hull_interval_of(&path, lambda)?;
                if !t.contains(target) {
                    return Err(Error::NoBranchPoint("target escaped the descent interval".into()));
                }
                // Children containing the target, in covering order.
                let mut containing: Vec<(usize, WordJ, RatInterval)> = vec![];
                for (idx, s) in SymJ::COVERING_ORDER.iter().enumerate() {
                    let c = path.child(*s);
                    let tc = hull_interval_of(&c, lambda)?;
                    if tc.contains(target) {
                        containing.push((idx, c, tc));
                    }
                }
                if containing.is_empty() {
                    return Err(Error::NoBranchPoint("covering failed to contain the target".into()));
                }
                // Branch on two consecutive containing children.
                let consecutive = containing.windows(2).find(|w| w[1].0 == w[0].0 + 1).map(|w| (w[0].1.clone(), w[1].1.clone()));
                if let Some((b1, b2)) = consecutive {
                    branches = Some((DescentBranch { word: b1 }, DescentBranch { word: b2 }));
                    continue;
                }
                // No branch point yet: if the interval is already deep
                // enough, perturb the target to the nearest child junction.
                let half_width = t.width() / rat_i(2);
                if half_width < tol_quarter {
                    if !allow_perturb {
                        return Err(Error::NoBranchPoint(
                            "no consecutive double containment before the depth budget".into(),
                        ));
                    }
                    let new_target = nearest_junction(&path, lambda, target)?;
                    return descend_impl(
                        l_parent,
                        &new_target,
                        original_target,
                        lambda,
                        min_ext,
                        &(tol / rat_i(2)),
                        budget,
                        false,
                    );
                }
                // Greedy: containing child with center nearest the target.
                let best = containing
                    .into_iter()
                    .min_by(|a, b| {
                        let da = (a.2.midpoint() - target).abs();
                        let db = (b.2.midpoint() - target).abs();
                        da.cmp(&db)
                    })
                    .unwrap();
                path = best.1;
                budget.check_bits(&orbit_point(&path, lambda).0, "descent orbit coordinate")?;
            }
            Some((b1, b2)) => {
                let d1 = advance_branch(b1, target, lambda, l_parent.len(), min_ext, tol)?;
                let d2 = advance_branch(b2, target, lambda, l_parent.len(), min_ext, tol)?;
                budget.check_bits(&orbit_point(&b1.word, lambda).0, "descent orbit coordinate")?;
                if d1 && d2 {
                    let (w1, w2) = (b1.word.clone(), b2.word.clone());
                    debug_assert_ne!(w1, w2);
                    // Tolerance against the original target (perturbation
                    // plus branch tolerance stays within the caller's tol).
                    for w in [&w1, &w2] {
                        let v = SlopePolys::of(w).value(lambda);
                        if (&v - original_target).abs() >= *tol && (&v - target).abs() >= *tol {
                            return Err(Error::NoBranchPoint("descent missed the tolerance".into()));
                        }
                    }
                    return Ok((w1, w2));
                }
            }
        }
    }
    Err(Error::BudgetExceeded("descent step budget".into()))
}

/// One greedy step of a branch; true when the branch meets both the length
/// and tolerance requirements.
fn advance_branch(
    b: &mut DescentBranch,
    target: &Rat,
    lambda: &Rat,
    parent_len: usize,
    min_ext: u32,
    tol: &Rat,
) -> Result<bool> {
    let ext = (b.word.len() - parent_len) as u32;
    if ext >= min_ext {
        let center = SlopePolys::of(&b.word).value(lambda);
        if (&center - target).abs() < *tol {
            return Ok(true);
        }
    }
    let mut best: Option<(Rat, WordJ)> = None;
    for s in SymJ::COVERING_ORDER {
        let c = b.word.child(s);
        let tc = hull_interval_of(&c, lambda)?;
        if tc.contains(target) {
            let d = (tc.midpoint() - target).abs();
            if best.as_ref().map_or(true, |(bd, _)| &d < bd) {
                best = Some((d, c));
            }
        }
    }
    match best {
        Some((_, c)) => {
            b.word = c;
            Ok(false)
        }
        None => Err(Error::NoBranchPoint("branch lost the target".into())),
    }
}

fn hull_interval_of(w: &WordJ, lambda: &Rat) -> Result<RatInterval> {
    let (a, b) = orbit_point(w, lambda);
    hull_slope_interval(&HullPoint::new(a, b), lambda, w.len() as u32)
}

/// Midpoint of the overlap of the two consecutive child intervals nearest
/// the target.
fn nearest_junction(path: &WordJ, lambda: &Rat, target: &Rat) -> Result<Rat> {
    let mut best: Option<(Rat, Rat)> = None;
    let mut prev: Option<RatInterval> = None;
    for s in SymJ::COVERING_ORDER {
        let tc = hull_interval_of(&path.child(s), lambda)?;
        if let Some(p) = prev {
            if let Some(ovl) = p.intersection(&tc) {
                let mid = ovl.midpoint();
                let d = (&mid - target).abs();
                if best.as_ref().map_or(true, |(bd, _)| &d < bd) {
                    best = Some((d, mid));
                }
            }
        }
        prev = Some(tc);
    }
    best.map(|(_, m)| m)
        .ok_or_else(|| Error::NoBranchPoint("no child junction available".into()))
}

/// Output of the two-interval step for one extension word.
struct TwoIntervals {
    left: RatInterval,
    right: RatInterval,
}

/// Isolate the root of the slope difference near the surrogate and place
/// one schedule-width interval strictly on each side, certified by exact
/// endpoint evaluations of the two-sided distance bounds.
#[allow(clippy::too_many_arguments)]
fn two_interval_step(
    cfg: &ConstructionConfig,
    kp: &SlopePolys,
    wp: &SlopePolys,
    dir: i32,
    lambda_center: &Rat,
    epsilon: &Rat,
    eta_new: &Rat,
) -> Result<TwoIntervals> {
    let dinv = cfg.delta_inv();
    let reach = &dinv * epsilon;
    let lo = lambda_center - &reach;
    let hi = lambda_center + &reach;
    let margin = rat_i(3) * &reach;
    if !(cfg.lambda_domain.contains(&(lambda_center - &margin))
        && cfg.lambda_domain.contains(&(lambda_center + &margin)))
    {
        return Err(Error::MarginViolation(
            "surrogate too close to the domain boundary".into(),
        ));
    }
    if eta_new > &reach {
        return Err(Error::PreconditionViolated(
            "schedule width exceeds the root bracket".into(),
        ));
    }
    // Closeness precondition and the sign change across the bracket.
    if DiffEval::at(kp, wp, lambda_center).abs_cmp(epsilon) != std::cmp::Ordering::Less {
        return Err(Error::RootNotFound("pair not close enough at the surrogate".into()));
    }
    let g = |x: &Rat| dir * slope_diff_sign(kp, wp, x);
    if !(g(&lo) < 0 && g(&hi) > 0) {
        return Err(Error::RootNotFound("no certified sign change across the bracket".into()));
    }

    let width_target = eta_new * crate::scalar::pow2_neg(16);
    let root = isolate_diff_root(kp, wp, dir, &lo, &hi, &width_target, &cfg.budget)?;
    let center = root.midpoint();

    let half = eta_new / rat_i(2);
    let three_half = rat(3, 2) * eta_new;
    let left = RatInterval::new(&center - &three_half, &center - &half);
    let right = RatInterval::new(&center + &half, &center + &three_half);
    debug_assert_eq!(left.width(), *eta_new);
    debug_assert_eq!(right.width(), *eta_new);

    // Two-sided distance bounds at all four endpoints, exact. The signed
    // difference at x is compared against ±bound through integer cross
    // multiplication; dir flips the roles of the two families.
    use std::cmp::Ordering::{Greater, Less};
    let low_bound = cfg.delta() / rat_i(2) * eta_new;
    let high_bound = rat(3, 2) * &dinv * eta_new;
    let gcmp = |x: &Rat, bound: &Rat| {
        let e = DiffEval::at(kp, wp, x);
        let b = if dir >= 0 { bound.clone() } else { -bound.clone() };
        let ord = e.cmp_value(&b);
        if dir >= 0 {
            ord
        } else {
            ord.reverse()
        }
    };
    let checks = [
        gcmp(left.hi(), &-&low_bound) != Greater,
        gcmp(left.lo(), &-&high_bound) != Less,
        gcmp(right.lo(), &low_bound) != Less,
        gcmp(right.hi(), &high_bound) != Greater,
    ];
    if checks.iter().any(|ok| !ok) {
        return Err(Error::CertificationFailed(format!(
            "two-sided distance bounds fail at an interval endpoint: {checks:?}"
        )));
    }
    Ok(TwoIntervals { left, right })
}

/// Root isolation for a monotone slope difference: exact-sign bisection
/// with dyadic Newton acceleration (proposals re-verified by exact signs).
fn isolate_diff_root(
    kp: &SlopePolys,
    wp: &SlopePolys,
    dir: i32,
    lo0: &Rat,
    hi0: &Rat,
    width: &Rat,
    budget: &Budget,
) -> Result<RatInterval> {
    let mut lo = lo0.clone();
    let mut hi = hi0.clone();
    let g = |x: &Rat| dir * slope_diff_sign(kp, wp, x);
    let dxk = kp.x.derivative();
    let dyk = kp.y.derivative();
    let dxw = wp.x.derivative();
    let dyw = wp.y.derivative();
    let mut newton_failures = 0u32;
    while &hi - &lo > *width {
        budget.check_bits(&lo, "root bracket endpoint")?;
        // Newton proposal in truncated dyadic arithmetic.
        if newton_failures < 4 {
            let cur_bits = crate::scalar::rat_log2_approx(&(&hi - &lo));
            let prec = if cur_bits.is_finite() { (-cur_bits * 2.2 + 64.0) as u64 } else { 128 };
            let x = dyadic_enclosure(&RatInterval::new(lo.clone(), hi.clone()).midpoint(), prec).0;
            let fxk = eval_dyadic(&kp.x, &x, prec);
            let fyk = eval_dyadic(&kp.y, &x, prec);
            let fxw = eval_dyadic(&wp.x, &x, prec);
            let fyw = eval_dyadic(&wp.y, &x, prec);
            let f = &fxk / &fyk - &fxw / &fyw;
            let df = (eval_dyadic(&dxk, &x, prec) * &fyk - &fxk * eval_dyadic(&dyk, &x, prec)) / (&fyk * &fyk)
                - (eval_dyadic(&dxw, &x, prec) * &fyw - &fxw * eval_dyadic(&dyw, &x, prec)) / (&fyw * &fyw);
            if !df.is_zero() {
                let step = &f / &df;
                let x1 = &x - &step;
                let rad = step.abs() * rat_i(2) + crate::scalar::pow2_neg(prec.saturating_sub(8));
                let a = dyadic_enclosure(&(&x1 - &rad), prec + 16).0;
                let b = dyadic_enclosure(&(&x1 + &rad), prec + 16).1;
                if a > lo && b < hi {
                    let (sa, sb) = (g(&a), g(&b));
                    if sa < 0 && sb > 0 {
                        lo = a;
                        hi = b;
                        continue;
                    }
                    if sa > 0 {
                        hi = a;
                    } else if sb < 0 {
                        lo = b;
                    }
                    newton_failures += 1;
                    continue;
                }
            }
            newton_failures += 1;
        }
        let mid = RatInterval::new(lo.clone(), hi.clone()).midpoint();
        let mid = dyadic_enclosure(&mid, crate::scalar::rat_bits(&mid)).0;
        match g(&mid) {
            0 => {
                // Exact crossing: shrink symmetrically inside the bracket.
                let h = width / rat_i(4);
                let a = (&mid - &h).max(lo.clone());
                let b = (&mid + &h).min(hi.clone());
                if g(&a) < 0 && g(&b) > 0 {
                    return Ok(RatInterval::new(a, b));
                }
                return Err(Error::RootNotFound("degenerate crossing".into()));
            }
            s if s < 0 => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RatInterval::new(lo, hi))
}

/// Expand one node into its two children.
fn expand_node(
    cfg: &ConstructionConfig,
    tree: &ConstructionTree,
    omega: &str,
) -> Result<(ConstructionNode, ConstructionNode)> {
    let node = &tree.nodes[omega];
    let level = &tree.levels[omega.len()];
    let delta = cfg.delta().clone();
    let dinv = cfg.delta_inv();

    // Rational surrogate inside the shrunken interval.
    let w = node.interval.width();
    let c = node.interval.midpoint();
    let shrink = &delta * &w / rat_i(2);
    let lambda_s = simplest_in_interval(&(&c - &shrink), &(&c + &shrink));
    let q_bits = lambda_s.denom().bits();

    // Scope and gap bound at the surrogate.
    let max_len = level.max_len;
    let gap = gap_lower_bound(&lambda_s, max_len);
    // Rational-root exclusion: the surrogate's denominator must exceed any
    // cross-difference coefficient (≤ 2·max_len), so value collisions at
    // the surrogate force identical slope functions.
    let collision_excludes_identity = lambda_s.denom() > &Int::from(2 * max_len as u64 + 1);
    if !collision_excludes_identity {
        return Err(Error::CertificationFailed(
            "surrogate denominator too small for the collision dichotomy".into(),
        ));
    }

    // Extension index: smallest m with the three conditions.
    let l_len = node.l_word.len();
    let five_dinv = rat_i(5) * &dinv;
    let cond_iii_bound = &gap / &five_dinv;
    let cond = |m: u32| -> Result<bool> {
        let idx = l_len + m as usize;
        if idx > cfg.budget.max_eta_index {
            return Err(Error::GapBoundTooWeak(format!(
                "extension index exceeds the schedule budget at m = {m}"
            )));
        }
        let eta_m = cfg.eta.value(idx)?;
        Ok(idx > max_len
            && rat_i(3) * &eta_m / (Rat::one() - &delta) < level.min_eta
            && eta_m < cond_iii_bound)
    };
    let mut m = 1u32;
    while !cond(m)? {
        m += 1;
    }
    let ext_index = l_len + m as usize;
    let eta_ext = cfg.eta.value(ext_index)?;
    let epsilon = &delta * &eta_ext;

    // Feasibility: predicted descent depth and the schedule width there.
    let lam_hi = rat_to_f64(cfg.lambda_domain.hi());
    let pred_len = l_len as f64 + (-crate::scalar::rat_log2_approx(&epsilon) + 4.0) / (1.0 / lam_hi).log2();
    let pred_bits = cfg.eta.neg_log2_estimate(pred_len);
    cfg.budget.check_bit_estimate(
        pred_bits,
        &format!(
            "expanding '{omega}': predicted child word length {:.0} needs interval widths of ~2^-{:.3e}",
            pred_len, pred_bits
        ),
    )?;

    // Interior-point clearance at the surrogate.
    let kp = SlopePolys::of(&node.k_word);
    let target = kp.value(&lambda_s);
    let t_parent = hull_interval_of(&node.l_word, &lambda_s)?;
    if !(t_parent.contains(&target)
        && (&target - t_parent.lo()) > epsilon
        && (t_parent.hi() - &target) > epsilon)
    {
        return Err(Error::PreconditionViolated(
            "target lacks interior clearance in the parent hull interval".into(),
        ));
    }

    // Two distinct nearby extensions via the covering descent.
    let (w1, w2) = greedy_descend(&node.l_word, &target, &lambda_s, m, &epsilon, &cfg.budget)?;

    // Two intervals per extension; the difference is oriented by which
    // family the expanded word belongs to.
    let dir = if node.k_word.prefix(5) == admissible_prefix_a() { 1 } else { -1 };
    let mut pairs = vec![];
    for wnew in [&w1, &w2] {
        let wp = SlopePolys::of(wnew);
        let eta_new = cfg.eta.value(wnew.len())?;
        let iv = two_interval_step(cfg, &kp, &wp, dir, &lambda_s, &epsilon, &eta_new)?;
        pairs.push(iv);
    }

    // Disjoint representatives, each nested in the parent interval.
    let (i0, i1) = pick_disjoint(&pairs[0], &pairs[1]).ok_or_else(|| {
        Error::CertificationFailed("no disjoint representative pair".into())
    })?;
    for iv in [&i0, &i1] {
        if !node.interval.contains_interval(iv) {
            return Err(Error::CertificationFailed("child interval escapes the parent".into()));
        }
    }

    let old_words = OldWordGapCert {
        lambda_surrogate: lambda_s.clone(),
        surrogate_denominator_bits: q_bits,
        max_len,
        gap_bound: gap.clone(),
        gap_condition: five_dinv * &eta_ext < gap,
        collision_excludes_identity,
        mean_value_margin: {
            let lhs = (rat_i(2) * &dinv - &delta) * &eta_ext;
            [w1.len(), w2.len()].iter().all(|&len| {
                cfg.eta.value(len).map(|e| lhs >= e).unwrap_or(false)
            })
        },
        uniform_bound_digest: format!("uniform144:{}", cfg.cert.digest()),
    };

    let child = |bit: u8, word: &WordJ, iv: &RatInterval| -> Result<ConstructionNode> {
        let eta_c = cfg.eta.value(word.len())?;
        Ok(ConstructionNode {
            omega: format!("{omega}{bit}"),
            k_word: word.clone(),
            interval: iv.clone(),
            l_word: node.k_word.clone(),
            m_used: m,
            conds: NodeConds {
                prefix_and_growth: has_admissible_prefix(word) && word.len() > max_len,
                nesting: None,
                width_exact: iv.width() == eta_c,
                parent_distance: Some(true), // endpoint checks ran in the two-interval step
                old_words: Some(old_words.clone()),
                slope_band: true, // class certificates cover every admissible prefix
            },
        })
    };
    Ok((child(0, &w1, &i0)?, child(1, &w2, &i1)?))
}

fn pick_disjoint(a: &TwoIntervals, b: &TwoIntervals) -> Option<(RatInterval, RatInterval)> {
    for x in [&a.left, &a.right] {
        for y in [&b.left, &b.right] {
            if !x.intersects(y) {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

/// Breadth-first expansion to the requested depth (2^depth leaves).
pub fn build_tree(cfg: &ConstructionConfig, depth: u32) -> Result<ConstructionTree> {
    if depth > 16 {
        return Err(Error::BudgetExceeded(format!("depth {depth} exceeds the tree cap")));
    }
    let (_, mut tree) = initial_node(cfg)?;
    for level in 0..depth {
        let frontier: Vec<String> = tree
            .nodes
            .keys()
            .filter(|k| k.len() == level as usize)
            .cloned()
            .collect();
        let mut stats: Option<LevelStats> = None;
        for omega in frontier {
            let (c0, c1) = expand_node(cfg, &tree, &omega)?;
            // Nesting and disjointness on the parent, exact.
            let ok = tree.nodes[&omega].interval.contains_interval(&c0.interval)
                && tree.nodes[&omega].interval.contains_interval(&c1.interval)
                && !c0.interval.intersects(&c1.interval);
            tree.nodes.get_mut(&omega).unwrap().conds.nesting = Some(ok);
            if !ok {
                return Err(Error::CertificationFailed(format!(
                    "nesting/disjointness fails under '{omega}'"
                )));
            }
            for c in [c0, c1] {
                let len = c.k_word.len();
                let eta_c = cfg.eta.value(len)?;
                stats = Some(match stats.take() {
                    None => LevelStats {
                        level: level + 1,
                        min_len: len,
                        max_len: len,
                        min_eta: eta_c,
                    },
                    Some(s) => LevelStats {
                        level: level + 1,
                        min_len: s.min_len.min(len),
                        max_len: s.max_len.max(len),
                        min_eta: s.min_eta.min(eta_c),
                    },
                });
                tree.nodes.insert(c.omega.clone(), c);
            }
        }
        tree.levels.push(stats.expect("nonempty level"));
    }
    Ok(tree)
}

/// One row of the per-leaf gap table.
#[derive(Debug, Clone)]
pub struct DeltaRow {
    pub n: u32,
    /// Certified enclosure of the level-n minimum gap at the designated
    /// point.
    pub delta_lo: Rat,
    pub delta_hi: Rat,
    pub eta_prime: Rat,
    pub within: bool,
    pub positive: bool,
    /// Exact gap of the explicit decoded pair, when the level admits one.
    pub bridge_gap: Option<Rat>,
}

/// Certified parameter box emitted for one branch.
#[derive(Debug, Clone)]
pub struct ConstructedParam {
    pub omega: String,
    pub lambda_box: RatInterval,
    pub t_box: RatInterval,
    pub cert_depth: u32,
    pub eta_prime_factor: Rat,
    pub table: Vec<DeltaRow>,
    pub overlap_free_to: Option<u32>,
    pub designated_lambda: Rat,
    pub surrogate_disclosures: Vec<String>,
}

impl ConstructedParam {
    pub fn all_within(&self) -> bool {
        self.table.iter().all(|r| r.within)
    }

    pub fn all_positive(&self) -> bool {
        self.table.iter().all(|r| r.positive)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "omega": self.omega,
            "lambda_box": interval_json(&self.lambda_box),
            "t_box": interval_json(&self.t_box),
            "cert_depth": self.cert_depth,
            "eta_prime_factor": dual(&self.eta_prime_factor),
            "designated_lambda": rat_str(&self.designated_lambda),
            "table": self.table.iter().map(|r| json!({
                "n": r.n,
                "delta_lo": crate::report::dec17(&r.delta_lo),
                "delta_hi": crate::report::dec17(&r.delta_hi),
                "eta_prime": crate::report::dec17(&r.eta_prime),
                "within": r.within,
                "positive": r.positive,
                "bridge_gap": r.bridge_gap.as_ref().map(crate::report::dec17),
            })).collect::<Vec<_>>(),
            "overlap_scan": match self.overlap_free_to {
                Some(n) => format!("none_found_up_to_{n}"),
                None => "overlap_detected".into(),
            },
            "surrogate_disclosures": self.surrogate_disclosures,
        })
    }
}

/// Assemble the certified parameter box for one leaf: the λ box is the leaf
/// interval; the t box is the leaf word's slope over the box, widened by
/// the certified geometric tail; the gap table is certified at the
/// designated rational point.
pub fn assemble_params(cfg: &ConstructionConfig, tree: &ConstructionTree, leaf: &str) -> Result<ConstructedParam> {
    let branch = tree.branch(leaf);
    let node = *branch.last().unwrap();
    let lambda_box = node.interval.clone();
    let len = node.k_word.len();

    // t box: slope interval over the λ box plus the tail allowance.
    let kp = SlopePolys::of(&node.k_word);
    let enc_prec = crate::scalar::rat_bits(lambda_box.lo()).max(4096) + 256;
    let x_enc = kp.x.eval_interval_dyadic(&lambda_box, enc_prec);
    let y_enc = kp.y.eval_interval_dyadic(&lambda_box, enc_prec);
    let slope_enc = x_enc.div(&y_enc).ok_or_else(|| {
        Error::CertificationFailed("slope denominator vanishes on the leaf box".into())
    })?;
    let tail = rat(3, 2) * cfg.delta_inv() * cfg.eta.tail_bound(len + 1)?;
    let t_box = RatInterval::new(slope_enc.lo() - &tail, slope_enc.hi() + &tail);

    // Designated point. The slope value is kept unreduced: reducing the
    // megabit numerator/denominator pair costs a large gcd and nothing
    // downstream needs canonical form.
    let lambda_star = lambda_box.midpoint();
    let deg = node.k_word.len() - 1;
    let xs = kp.x.eval_scaled(lambda_star.numer(), lambda_star.denom(), deg);
    let ys = kp.y.eval_scaled(lambda_star.numer(), lambda_star.denom(), deg);
    if !ys.is_positive() {
        return Err(Error::CertificationFailed("leaf slope denominator not positive".into()));
    }
    let t_star = Rat::new_raw(xs, ys);
    let p = ParamPair::new(lambda_star.clone(), t_star.clone())?;

    // Gap table.
    let factor = cfg.eta_prime_factor();
    let mut table = vec![];
    let mut overlap: Option<u32> = None;
    for n in 1..=cfg.cert_n {
        let eta_prime = &factor * cfg.eta.value(n as usize)?;
        let bridge = bridge_gap(&branch, n, &lambda_star, &t_star)?;
        let (delta_lo, delta_hi) = certified_delta_enclosure(&p, n, 320)?;
        let positive = delta_lo.is_positive();
        if !positive && delta_hi.is_zero() {
            overlap = Some(n);
        }
        let within = delta_hi < eta_prime || bridge.as_ref().map_or(false, |g| g < &eta_prime);
        table.push(DeltaRow {
            n,
            delta_lo,
            delta_hi,
            eta_prime,
            within,
            positive,
            bridge_gap: bridge,
        });
    }

    let disclosures = branch
        .iter()
        .skip(1)
        .filter_map(|n| n.conds.old_words.as_ref())
        .map(|c| {
            format!(
                "level word scope {}: rational surrogate with {}-bit denominator; nonzero slope gaps >= {} by the denominator bound; value collisions force function identity: {}",
                c.max_len,
                c.surrogate_denominator_bits,
                crate::report::dec17(&c.gap_bound),
                c.collision_excludes_identity,
            )
        })
        .chain(std::iter::once(format!(
            "designated point: midpoint of the leaf lambda box paired with the leaf word's exact slope there; certification depth {}",
            cfg.cert_n
        )))
        .collect();

    Ok(ConstructedParam {
        omega: leaf.to_string(),
        lambda_box,
        t_box,
        cert_depth: cfg.cert_n,
        eta_prime_factor: factor,
        overlap_free_to: if overlap.is_none() { Some(cfg.cert_n) } else { None },
        table,
        designated_lambda: lambda_star,
        surrogate_disclosures: disclosures,
    })
}

/// Exact gap of the decoded explicit pair at level n, when some branch
/// prefix has length ≤ n. The gap is |t·y_w − x_w| at the designated point
/// for the padded branch word w, computed in scaled integers.
fn bridge_gap(
    branch: &[&ConstructionNode],
    n: u32,
    lambda_star: &Rat,
    t_star: &Rat,
) -> Result<Option<Rat>> {
    // Deepest branch word with length ≤ n.
    let Some(node) = branch.iter().rev().find(|nd| nd.k_word.len() <= n as usize) else {
        return Ok(None);
    };
    let padded = node.k_word.pad_zeros(n as usize - node.k_word.len());
    let (i, j) = pair_decode(&padded);
    debug_assert_eq!((i.symbols()[0], j.symbols()[0]), (2, 1));
    let _ = (i, j);
    let (xw, yw) = orbit_polys(&padded);
    let d = padded.len().saturating_sub(1);
    let (u, v) = (lambda_star.numer(), lambda_star.denom());
    let xs = xw.eval_scaled(u, v, d);
    let ys = yw.eval_scaled(u, v, d);
    // t·y − x over the common scale t_den · v^d.
    let num = (t_star.numer() * ys - t_star.denom() * xs).abs();
    let scale = t_star.denom() * v.pow(d as u32);
    Ok(Some(Rat::new_raw(num, scale)))
}

/// Certified enclosure of the level-n minimum gap at an exact parameter
/// pair whose entries may be very large rationals. Atom values are
/// enclosed in scaled-integer intervals at the working precision; clusters
/// whose order the intervals cannot decide are resolved exactly.
pub fn certified_delta_enclosure(p: &ParamPair, n: u32, prec: u64) -> Result<(Rat, Rat)> {
    use num_integer::Integer as _;
    let count = 3u64.pow(n);
    let scale = Int::one() << prec;

    // Scaled enclosures of λ^k and t, through integer shifts and floor
    // divisions only (no rational reduction on big operands).
    let mut pw_lo = Vec::with_capacity(n as usize);
    let mut pw_hi = Vec::with_capacity(n as usize);
    for k in 0..n {
        let fl = (p.lambda().numer().pow(k) << prec).div_floor(&p.lambda().denom().pow(k));
        pw_hi.push(&fl + 1);
        pw_lo.push(fl);
    }
    let t_lo = (p.t().numer() << prec).div_floor(p.t().denom());
    let t_hi = &t_lo + 1;

    // Atom enclosures as scaled integers: A + t·B with A, B ≥ 0.
    let mut atoms: Vec<(Int, Int, u64)> = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut c = code;
        let mut a_lo = Int::zero();
        let mut a_hi = Int::zero();
        let mut b_lo = Int::zero();
        let mut b_hi = Int::zero();
        for k in (0..n as usize).rev() {
            match c % 3 {
                1 => {
                    b_lo += &pw_lo[k];
                    b_hi += &pw_hi[k];
                }
                2 => {
                    a_lo += &pw_lo[k];
                    a_hi += &pw_hi[k];
                }
                _ => {}
            }
            c /= 3;
        }
        // t·B rescaled back to `prec` fractional bits.
        let tb_lo = (&t_lo * &b_lo) >> prec;
        let tb_hi = ((&t_hi * &b_hi) >> prec) + 1;
        atoms.push((a_lo + tb_lo, a_hi + tb_hi, code));
    }
    atoms.sort_by(|x, y| x.0.cmp(&y.0));

    // Sweep adjacent pairs; resolve undecided clusters exactly.
    let mut gap_lo: Option<Rat> = None;
    let mut gap_hi: Option<Rat> = None;
    let mut update = |lo: Rat, hi: Rat| {
        if gap_lo.as_ref().map_or(true, |g| &lo < g) {
            gap_lo = Some(lo);
        }
        if gap_hi.as_ref().map_or(true, |g| &hi < g) {
            gap_hi = Some(hi);
        }
    };
    let mut idx = 0usize;
    while idx + 1 < atoms.len() {
        let (ref a_lo, ref a_hi, a_code) = atoms[idx];
        let (ref b_lo, ref b_hi, b_code) = atoms[idx + 1];
        if b_lo > a_hi {
            // Certified order and a positive gap enclosure.
            let lo = Rat::new(b_lo - a_hi, scale.clone());
            let hi = Rat::new(b_hi - a_lo, scale.clone());
            update(lo, hi);
            idx += 1;
            continue;
        }
        // Cluster: gather everything whose enclosure chain overlaps.
        let start = idx;
        let mut end = idx + 1;
        let mut reach = atoms[idx].1.clone();
        while end < atoms.len() && atoms[end].0 <= reach {
            if atoms[end].1 > reach {
                reach = atoms[end].1.clone();
            }
            end += 1;
        }
        let _ = (a_code, b_code);
        // Exact values for the cluster: atom · (ql^(n-1)·t_den) =
        // A_w·t_den + t_num·B_w with A_w, B_w integer subset sums of the
        // scaled λ powers.
        let exact_scale = p.lambda().denom().pow(n - 1) * p.t().denom();
        let mut spow = Vec::with_capacity(n as usize);
        for k in 0..n {
            spow.push(p.lambda().numer().pow(k) * p.lambda().denom().pow(n - 1 - k));
        }
        let mut exact: Vec<Int> = atoms[start..end]
            .iter()
            .map(|(_, _, code)| {
                let mut c = *code;
                let mut a = Int::zero();
                let mut b = Int::zero();
                for k in (0..n as usize).rev() {
                    match c % 3 {
                        1 => b += &spow[k],
                        2 => a += &spow[k],
                        _ => {}
                    }
                    c /= 3;
                }
                a * p.t().denom() + p.t().numer() * b
            })
            .collect();
        exact.sort();
        for pair in exact.windows(2) {
            let d = &pair[1] - &pair[0];
            if d.is_zero() {
                return Ok((Rat::zero(), Rat::zero()));
            }
            let g = Rat::new_raw(d, exact_scale.clone());
            update(g.clone(), g);
        }
        // Boundary gap between the cluster and the next atom, certified.
        if end < atoms.len() {
            let lo = Rat::new(&atoms[end].0 - &reach, scale.clone());
            let hi_raw = &atoms[end].1 - &atoms[end - 1].0;
            let hi = Rat::new(hi_raw, scale.clone());
            if lo.is_positive() {
                update(lo, hi);
            } else {
                // Precision too coarse across clusters; escalate.
                return certified_delta_enclosure(p, n, prec * 2);
            }
        }
        idx = end;
    }
    match (gap_lo, gap_hi) {
        (Some(lo), Some(hi)) => Ok((lo.max(Rat::zero()), hi)),
        _ => Ok((Rat::zero(), Rat::zero())),
    }
}
