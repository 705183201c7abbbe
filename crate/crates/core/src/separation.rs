//! Exhaustive level-n statistics: orbit-point enumeration, minimum gaps,
//! neighbor counts, and exact-overlap detection.
//!
//! Orbit points at level n share the common denominator den(λ)^(n-1)·den(t),
//! so enumeration, sorting, and gap arithmetic run on integer numerators.
//! Sorting uses an f64 prefilter with exact comparison when the float
//! windows overlap; every reported number is exact.

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::ifs::ParamPair;
use crate::scalar::{rat_pow, rat_to_f64, Budget};
use crate::words::Word3;
use crate::{Error, Int, Rat, Result};

/// Sorted orbit points of one level with multiplicities.
#[derive(Debug, Clone)]
pub struct AtomSet {
    level: u32,
    /// Strictly increasing values with multiplicities summing to 3^level.
    points: Vec<(Rat, u64)>,
}

impl AtomSet {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn points(&self) -> &[(Rat, u64)] {
        &self.points
    }

    pub fn distinct(&self) -> usize {
        self.points.len()
    }

    pub fn total(&self) -> u64 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.points.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    /// Mass of one word at this level, 3^-level.
    pub fn atom_mass(&self) -> Rat {
        Rat::new(Int::from(1), Int::from(3).pow(self.level))
    }

    /// Count of points (with multiplicity) in [x - r, x + r].
    pub fn count_within(&self, x: &Rat, r: &Rat) -> u64 {
        let lo = x - r;
        let hi = x + r;
        let start = self.points.partition_point(|(v, _)| v < &lo);
        let mut count = 0;
        for (v, m) in &self.points[start..] {
            if v > &hi {
                break;
            }
            count += m;
        }
        count
    }
}

/// Integer-keyed enumeration state: value numerators over the fixed
/// denominator den(λ)^(n-1) · den(t).
struct Scaled {
    /// λ numerator and denominator.
    lp: Int,
    lq: Int,
    /// t·den(t) = numerator of t over its own denominator.
    tp: Int,
    tq: Int,
}

/// Enumerate all 3^n orbit points exactly, sorted with multiplicities.
pub fn enumerate_atoms(p: &ParamPair, n: u32, budget: &Budget) -> Result<AtomSet> {
    if n < 1 {
        return Err(Error::InvalidParam("level must be >= 1".into()));
    }
    budget.check_level(n)?;
    // Common denominator lq^(n-1) * tq, positive.
    let s = scaled(p);
    let denom = s.lq.pow(n - 1) * &s.tq;
    budget.check_bits(&Rat::new(Int::from(1), denom.clone()), "atom denominator")?;

    let mut sorted = enumerate_numerators(p, n);
    par_sort_ints(&mut sorted);

    let mut points: Vec<(Rat, u64)> = Vec::with_capacity(sorted.len());
    let mut last_num: Option<Int> = None;
    for v in sorted {
        if last_num.as_ref() == Some(&v) {
            points.last_mut().unwrap().1 += 1;
        } else {
            last_num = Some(v.clone());
            points.push((Rat::new(v, denom.clone()), 1));
        }
    }
    Ok(AtomSet { level: n, points })
}

fn scaled(p: &ParamPair) -> Scaled {
    Scaled {
        lp: p.lambda().numer().clone(),
        lq: p.lambda().denom().clone(),
        tp: p.t().numer().clone(),
        tq: p.t().denom().clone(),
    }
}

/// All numerators over den(λ)^(n-1)·den(t), in word-DFS order.
fn enumerate_numerators(p: &ParamPair, n: u32) -> Vec<Int> {
    let s = scaled(p);
    // Value Σ c_k λ^(k-1) with c ∈ {0, t, 1} scales to
    // Σ c_k' lp^(k-1) lq^(n-k) tq with t contributing tp·lp^(k-1)·lq^(n-k).
    // Precompute the three contributions per position.
    let mut table: Vec<[Int; 3]> = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let base = s.lp.pow(k - 1) * s.lq.pow(n - k);
        table.push([Int::zero(), &base * &s.tp, &base * &s.tq]);
    }
    // DFS over the first two symbols in parallel, then sequential fill.
    let prefixes: Vec<(usize, usize)> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .collect();
    if n >= 4 {
        prefixes
            .par_iter()
            .flat_map(|&(a, b)| {
                let mut out = Vec::with_capacity(3usize.pow(n - 2));
                let acc = &table[0][a] + &table[1][b];
                fill(&table, 2, n as usize, &acc, &mut out);
                out
            })
            .collect()
    } else {
        let mut out = Vec::with_capacity(3usize.pow(n));
        fill(&table, 0, n as usize, &Int::zero(), &mut out);
        out
    }
}

fn fill(table: &[[Int; 3]], k: usize, n: usize, acc: &Int, out: &mut Vec<Int>) {
    if k == n {
        out.push(acc.clone());
        return;
    }
    for c in 0..3 {
        let next = acc + &table[k][c];
        fill(table, k + 1, n, &next, out);
    }
}

/// Sort big integers using an f64 prefilter; exact comparison breaks ties
/// whenever the float windows are not clearly separated.
fn par_sort_ints(v: &mut Vec<Int>) {
    let keys: Vec<f64> = v.par_iter().map(int_to_f64_approx).collect();
    let mut idx: Vec<u32> = (0..v.len() as u32).collect();
    {
        let vs: &[Int] = v;
        idx.par_sort_unstable_by(|&a, &b| {
            let (fa, fb) = (keys[a as usize], keys[b as usize]);
            let tol = fa.abs().max(fb.abs()) * 1e-12 + f64::MIN_POSITIVE;
            if fa < fb - tol {
                std::cmp::Ordering::Less
            } else if fb < fa - tol {
                std::cmp::Ordering::Greater
            } else {
                vs[a as usize].cmp(&vs[b as usize])
            }
        });
    }
    let sorted: Vec<Int> = idx.iter().map(|&i| v[i as usize].clone()).collect();
    *v = sorted;
}

fn int_to_f64_approx(x: &Int) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return x.to_i64().map(|v| v as f64).unwrap_or(0.0);
    }
    let shift = bits - 52;
    let top = (x >> shift).to_i64().unwrap_or(0) as f64;
    top * 2f64.powi(shift as i32)
}

/// Minimum distance between orbit points of distinct level-n words; zero
/// exactly when some point has multiplicity ≥ 2.
pub fn delta_n(p: &ParamPair, n: u32, budget: &Budget) -> Result<Rat> {
    let atoms = enumerate_atoms(p, n, budget)?;
    Ok(delta_of(&atoms))
}

pub fn delta_of(atoms: &AtomSet) -> Rat {
    if atoms.max_multiplicity() >= 2 {
        return Rat::zero();
    }
    let pts = atoms.points();
    let mut best: Option<Rat> = None;
    for w in pts.windows(2) {
        let gap = &w[1].0 - &w[0].0;
        if best.as_ref().map_or(true, |b| &gap < b) {
            best = Some(gap);
        }
    }
    best.unwrap_or_else(Rat::zero)
}

/// Finite-level average condensation `Λ_n(γ)`: the averaged natural log of
/// the number of level-n words within γ^n of each word, divided by n.
/// Counts are inclusive (≤ γ^n) and each word counts itself, so the value
/// is always ≥ 0.
pub fn lambda_gamma(p: &ParamPair, n: u32, gamma: &Rat, budget: &Budget) -> Result<f64> {
    if !(gamma.is_positive() && gamma <= p.lambda()) {
        return Err(Error::InvalidParam("gamma must lie in (0, lambda]".into()));
    }
    let atoms = enumerate_atoms(p, n, budget)?;
    let radius = rat_pow(gamma, n as i64);
    Ok(average_log_count(&atoms, &radius) / n as f64)
}

/// Same average with an explicit radius and explicit normalization level.
pub fn lambda_with_radius(atoms: &AtomSet, radius: &Rat) -> f64 {
    average_log_count(atoms, radius) / atoms.level() as f64
}

/// (1/3^n) Σ_words log #hits within `radius` of the word's point.
pub fn average_log_count(atoms: &AtomSet, radius: &Rat) -> f64 {
    let pts = atoms.points();
    let total: f64 = pts
        .par_iter()
        .map(|(v, m)| {
            let c = atoms.count_within(v, radius);
            (*m as f64) * (c as f64).ln()
        })
        .sum();
    total / atoms.total() as f64
}

#[derive(Debug, Clone)]
pub enum OverlapReport {
    Collision {
        level: u32,
        i: Word3,
        j: Word3,
    },
    NoneFound {
        max_level: u32,
        /// Exact min over n ≤ max_level of the level-n minimum gap
        /// (attained at the deepest level).
        min_gap: Rat,
    },
}

/// Search for an exact overlap up to `max_n`: two distinct equal-length
/// words whose maps agree, equivalently whose orbit points at zero agree.
pub fn detect_exact_overlap(p: &ParamPair, max_n: u32, budget: &Budget) -> Result<OverlapReport> {
    let mut min_gap: Option<Rat> = None;
    for n in 1..=max_n {
        let atoms = enumerate_atoms(p, n, budget)?;
        if atoms.max_multiplicity() >= 2 {
            let (i, j) = find_colliding_pair(p, n);
            return Ok(OverlapReport::Collision { level: n, i, j });
        }
        let d = delta_of(&atoms);
        if min_gap.as_ref().map_or(true, |g| &d < g) {
            min_gap = Some(d);
        }
    }
    Ok(OverlapReport::NoneFound {
        max_level: max_n,
        min_gap: min_gap.unwrap_or_else(Rat::zero),
    })
}

/// Recover one colliding pair at a level known to contain a collision.
fn find_colliding_pair(p: &ParamPair, n: u32) -> (Word3, Word3) {
    let mut entries: Vec<(Rat, u64)> = vec![];
    let count = 3u64.pow(n);
    for code in 0..count {
        let w = word_from_code(code, n);
        let v = crate::ifs::phi_at_zero(&w, p);
        entries.push((v, code));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    for w in entries.windows(2) {
        if w[0].0 == w[1].0 {
            let a = word_from_code(w[0].1, n);
            let b = word_from_code(w[1].1, n);
            // Deterministic order: lexicographically larger first symbol
            // first matches the overlap convention (first symbols (2,1)).
            return if a.symbols() > b.symbols() { (a, b) } else { (b, a) };
        }
    }
    unreachable!("collision level without a collision")
}

pub fn word_from_code(mut code: u64, n: u32) -> Word3 {
    let mut v = vec![1u8; n as usize];
    for k in (0..n as usize).rev() {
        v[k] = (code % 3) as u8 + 1;
        code /= 3;
    }
    Word3::new(v)
}

/// CSV rows of an atom set: value fraction, value decimal, multiplicity.
pub fn atoms_csv(atoms: &AtomSet) -> String {
    let mut out = String::from("value_frac,value_dec,multiplicity\n");
    for (v, m) in atoms.points() {
        out.push_str(&format!(
            "{},{},{m}\n",
            crate::report::rat_str(v),
            crate::report::dec17(v)
        ));
    }
    out
}

/// Detect near-equal f64 keys needing exact confirmation; exposed for the
/// summary JSON.
pub fn delta_summary_json(p: &ParamPair, n: u32, delta: &Rat, lambda_n: Option<f64>, overlap: bool) -> serde_json::Value {
    serde_json::json!({
        "lambda": crate::report::dual(p.lambda()),
        "t": crate::report::dual(p.t()),
        "n": n,
        "delta_n": crate::report::dual(delta),
        "log_delta_over_n": if delta.is_zero() { serde_json::Value::Null } else {
            serde_json::json!(rat_to_f64(delta).ln() / n as f64)
        },
        "lambda_n_gamma": lambda_n,
        "overlap": overlap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pp(l: (i64, i64), t: (i64, i64)) -> ParamPair {
        ParamPair::new(rat(l.0, l.1), rat(t.0, t.1)).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn level_one_atoms() {
        let atoms = enumerate_atoms(&pp((3, 10), (1, 5)), 1, &b()).unwrap();
        let vals: Vec<Rat> = atoms.points().iter().map(|(v, _)| v.clone()).collect();
        assert_eq!(vals, vec![rat(0, 1), rat(1, 5), rat(1, 1)]);
        assert!(atoms.points().iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn overlap_multiplicity_at_level_two() {
        // t = λ: the "21"/"13" collision gives 8 distinct values, one with
        // multiplicity 2.
        let atoms = enumerate_atoms(&pp((3, 10), (3, 10)), 2, &b()).unwrap();
        assert_eq!(atoms.distinct(), 8);
        assert_eq!(atoms.total(), 9);
        assert_eq!(atoms.max_multiplicity(), 2);
        // And 9 distinct without the overlap.
        let atoms = enumerate_atoms(&pp((3, 10), (1, 5)), 2, &b()).unwrap();
        assert_eq!(atoms.distinct(), 9);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_n(&pp((3, 10), (1, 5)), 1, &b()).unwrap(), rat(1, 5));
        assert!(delta_n(&pp((3, 10), (3, 10)), 2, &b()).unwrap().is_zero());
        // Contraction property Δ₂ ≤ λΔ₁.
        let p = pp((3, 10), (1, 5));
        let d1 = delta_n(&p, 1, &b()).unwrap();
        let d2 = delta_n(&p, 2, &b()).unwrap();
        assert!(d2 <= p.lambda() * &d1);
    }

    #[test]
    fn contraction_invariant_over_levels() {
        let p = pp((3, 10), (1, 5));
        let mut prev: Option<Rat> = None;
        for n in 1..=7 {
            let d = delta_n(&p, n, &b()).unwrap();
            if let Some(ref q) = prev {
                assert!(d <= p.lambda() * q, "level {n}");
            }
            prev = Some(d);
        }
    }

    #[test]
    fn lambda_gamma_strong_separation_is_zero() {
        // All level-2 gaps exceed γ² for small γ: every count is 1.
        let p = pp((1, 10), (1, 20));
        let v = lambda_gamma(&p, 2, &rat(1, 100), &b()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn lambda_gamma_overlap_counts() {
        // Counts at (3/10, 3/10), n=2, γ=3/10 computed by brute force:
        // {2,2,3,3,3,1,2,2,1}, giving Λ₂ = (1/18)(4 log2 + 3 log3).
        let p = pp((3, 10), (3, 10));
        let atoms = enumerate_atoms(&p, 2, &b()).unwrap();
        let radius = rat(9, 100);
        // Brute-force oracle over all 9 words.
        let mut vals = vec![];
        for code in 0..9 {
            let w = word_from_code(code, 2);
            vals.push(crate::ifs::phi_at_zero(&w, &p));
        }
        let mut logsum = 0.0;
        for a in &vals {
            let c = vals
                .iter()
                .filter(|v| (a.clone() - (*v).clone()).abs() <= radius)
                .count();
            logsum += (c as f64).ln();
        }
        let expected = logsum / 9.0 / 2.0;
        let got = lambda_gamma(&p, 2, &rat(3, 10), &b()).unwrap();
        assert!((got - expected).abs() < 1e-12);
        let closed_form = (4.0 * 2f64.ln() + 3.0 * 3f64.ln()) / 18.0;
        assert!((got - closed_form).abs() < 1e-12);
        // Multiplicity m forces counts ≥ m at the overlap atoms.
        assert!(atoms.max_multiplicity() >= 2);
    }

    #[test]
    fn lambda_gamma_monotone_in_gamma() {
        let p = pp((3, 10), (1, 5));
        let big = lambda_gamma(&p, 4, &rat(3, 10), &b()).unwrap();
        let small = lambda_gamma(&p, 4, &rat(1, 10), &b()).unwrap();
        assert!(small <= big);
    }

    #[test]
    fn overlap_detection() {
        match detect_exact_overlap(&pp((3, 10), (3, 10)), 4, &b()).unwrap() {
            OverlapReport::Collision { level, i, j } => {
                assert_eq!(level, 2);
                assert_eq!((i.to_string(), j.to_string()), ("21".into(), "13".into()));
            }
            _ => panic!("expected collision"),
        }
        match detect_exact_overlap(&pp((3, 10), (1, 5)), 8, &b()).unwrap() {
            OverlapReport::NoneFound { min_gap, max_level } => {
                assert_eq!(max_level, 8);
                assert!(min_gap.is_positive());
            }
            _ => panic!("expected none"),
        }
    }

    #[test]
    fn overlap_detection_at_t_lambda_squared() {
        // The enumeration itself is the contract here; check consistency
        // with delta_n at each level.
        let p = pp((3, 10), (9, 100));
        let report = detect_exact_overlap(&p, 5, &b()).unwrap();
        match report {
            OverlapReport::Collision { level, i, j } => {
                let a = crate::ifs::phi_at_zero(&i, &p);
                let bb = crate::ifs::phi_at_zero(&j, &p);
                assert_eq!(a, bb);
                assert!(delta_n(&p, level, &b()).unwrap().is_zero());
            }
            OverlapReport::NoneFound { .. } => {
                for n in 1..=5 {
                    assert!(delta_n(&p, n, &b()).unwrap().is_positive());
                }
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let tight = Budget {
            max_level: 3,
            ..Budget::default()
        };
        assert!(matches!(
            delta_n(&pp((3, 10), (1, 5)), 4, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn bridge_consistency_on_minimizing_pair() {
        // When Δ_n < ε with ε < λ^p/2 for the minimizing pair, the slope
        // form of the distance matches: |t − slope| < 2 λ^-p ε.
        let p = pp((3, 10), (3, 10));
        // At t = λ the pair ("21","13") collides; perturb t slightly.
        let p2 = pp((3, 10), (301, 1000));
        let i = Word3::parse("21").unwrap();
        let j = Word3::parse("13").unwrap();
        let d = (crate::ifs::phi_at_zero(&i, &p2) - crate::ifs::phi_at_zero(&j, &p2)).abs();
        let eps = &d + rat(1, 10_000_000);
        assert!(eps < rat(1, 2));
        let w = crate::words::pair_code(&i, &j).unwrap();
        let slope = crate::ifs::slope_value(&w, p2.lambda()).unwrap();
        let lhs = (p2.t() - &slope).abs();
        assert!(lhs < rat(2, 1) * &eps);
        let _ = p;
    }
}
