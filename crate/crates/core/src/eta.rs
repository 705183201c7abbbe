//! Certified super-exponentially decaying gap schedules.
//!
//! A schedule supplies positive rationals η₁ ≥ η₂ ≥ … together with a
//! certified non-increasing bound on consecutive ratios. The ratio witness
//! gives the geometric tail constant C = 1/(1-ρ) with
//! Σ_{k≥n} η_k ≤ C·η_n, and feeds the index searches that need the decay
//! to eventually beat a fixed exponential.

use num_traits::{One, Signed};
#[cfg(test)]
use num_traits::Zero;

use crate::scalar::{pow2_neg, rat, rat_i, rat_pow};
use crate::{Error, Int, Rat, Result};

#[derive(Debug, Clone)]
pub enum EtaKind {
    /// η_n = 2^(-n²)
    NSquared,
    /// η_n = n^(-n)
    NPowN,
    /// η_n = 2^(-n·⌈log₂ n⌉)
    NLogN,
    /// Explicit prefix with a declared global ratio bound.
    Table { values: Vec<Rat>, rho: Rat },
}

#[derive(Debug, Clone)]
pub struct EtaSchedule {
    kind: EtaKind,
    /// Global ratio bound: η_{k+1}/η_k ≤ ρ < 1 for all k.
    rho: Rat,
    /// Tail constant C = 1/(1-ρ).
    tail_constant: Rat,
}

impl EtaSchedule {
    pub fn n_squared() -> Self {
        // Ratios 2^-(2k+1) peak at k = 1.
        let rho = rat(1, 8);
        EtaSchedule {
            kind: EtaKind::NSquared,
            tail_constant: tail_from_rho(&rho),
            rho,
        }
    }

    pub fn n_pow_n() -> Self {
        // Ratio k^k/(k+1)^(k+1) ≤ min(1/4, 1/(k+1)).
        let rho = rat(1, 4);
        EtaSchedule {
            kind: EtaKind::NPowN,
            tail_constant: tail_from_rho(&rho),
            rho,
        }
    }

    pub fn n_log_n() -> Self {
        // Ratio bound 2^-⌈log₂(k+1)⌉ peaks at 1/2.
        let rho = rat(1, 2);
        EtaSchedule {
            kind: EtaKind::NLogN,
            tail_constant: tail_from_rho(&rho),
            rho,
        }
    }

    /// User table with a declared ratio bound, validated on the table.
    pub fn from_table(values: Vec<Rat>, rho: Rat) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParam("empty schedule table".into()));
        }
        if !(rho.is_positive() && rho < Rat::one()) {
            return Err(Error::InvalidParam("ratio bound must lie in (0,1)".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_positive() {
                return Err(Error::InvalidParam(format!("table value {} not positive", i + 1)));
            }
            if i > 0 {
                let r = v / &values[i - 1];
                if r > rho {
                    return Err(Error::InvalidParam(format!(
                        "ratio at index {} exceeds the declared bound",
                        i + 1
                    )));
                }
            }
        }
        Ok(EtaSchedule {
            kind: EtaKind::Table { values, rho: rho.clone() },
            tail_constant: tail_from_rho(&rho),
            rho,
        })
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "nsq" => Ok(Self::n_squared()),
            "npown" => Ok(Self::n_pow_n()),
            "nlogn" => Ok(Self::n_log_n()),
            _ => Err(Error::InvalidParam(format!("unknown schedule {name:?}"))),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            EtaKind::NSquared => "nsq".into(),
            EtaKind::NPowN => "npown".into(),
            EtaKind::NLogN => "nlogn".into(),
            EtaKind::Table { values, .. } => format!("table[{}]", values.len()),
        }
    }

    /// η_n for n ≥ 1, exact.
    pub fn value(&self, n: usize) -> Result<Rat> {
        assert!(n >= 1, "schedule index starts at 1");
        match &self.kind {
            EtaKind::NSquared => Ok(pow2_neg((n as u64) * (n as u64))),
            EtaKind::NPowN => Ok(rat_pow(&rat_i(n as i64), -(n as i64))),
            EtaKind::NLogN => Ok(pow2_neg((n as u64) * ceil_log2(n as u64))),
            EtaKind::Table { values, .. } => values
                .get(n - 1)
                .cloned()
                .ok_or(Error::EtaTableExhausted(n)),
        }
    }

    /// Certified non-increasing upper bound on η_{k+1}/η_k.
    pub fn ratio_bound_at(&self, k: usize) -> Result<Rat> {
        assert!(k >= 1);
        match &self.kind {
            EtaKind::NSquared => Ok(pow2_neg(2 * k as u64 + 1)),
            EtaKind::NPowN => Ok(self.rho.clone().min(rat(1, k as i64 + 1))),
            EtaKind::NLogN => Ok(pow2_neg(ceil_log2(k as u64 + 1))),
            EtaKind::Table { values, rho } => {
                if k >= values.len() {
                    return Err(Error::EtaTableExhausted(k + 1));
                }
                Ok(rho.clone())
            }
        }
    }

    pub fn rho(&self) -> &Rat {
        &self.rho
    }

    pub fn tail_constant(&self) -> &Rat {
        &self.tail_constant
    }

    /// Approximate −log₂ η_n, for feasibility estimates only.
    pub fn neg_log2_estimate(&self, n: f64) -> f64 {
        match &self.kind {
            EtaKind::NSquared => n * n,
            EtaKind::NPowN => n * n.log2(),
            EtaKind::NLogN => n * n.log2().ceil().max(0.0),
            EtaKind::Table { values, .. } => {
                let idx = (n as usize).min(values.len());
                if idx == 0 {
                    0.0
                } else {
                    -crate::scalar::rat_to_f64(&values[idx - 1]).log2()
                }
            }
        }
    }

    /// Monotonicity, positivity, ratio certification, and the
    /// super-exponential decay spot-check (η_n^m > η_m^n for m < n, i.e.
    /// (1/n) log η_n strictly decreasing) over indices 1..=upto.
    pub fn validate(&self, upto: usize) -> Result<()> {
        let mut prev: Option<Rat> = None;
        for n in 1..=upto {
            let v = self.value(n)?;
            if !v.is_positive() {
                return Err(Error::InvalidParam(format!("eta({n}) not positive")));
            }
            if let Some(p) = prev {
                if v > p {
                    return Err(Error::InvalidParam(format!("eta({n}) increases")));
                }
                let bound = self.ratio_bound_at(n - 1)?;
                if &v / &p > bound {
                    return Err(Error::InvalidParam(format!("ratio bound violated at {n}")));
                }
                if bound > self.rho {
                    return Err(Error::InvalidParam(format!("ratio bound above rho at {n}")));
                }
            }
            prev = Some(v);
        }
        // Decay spot-check on a geometric index ladder.
        let mut m = 2usize;
        while 2 * m <= upto {
            let n = 2 * m;
            let em = self.value(m)?;
            let en = self.value(n)?;
            // (1/n)log η_n < (1/m)log η_m  ⟺  η_n^m < η_m^n.
            if rat_pow(&en, m as i64) >= rat_pow(&em, n as i64) {
                return Err(Error::InvalidParam(format!(
                    "decay rate does not strictly fall from {m} to {n}"
                )));
            }
            m = n;
        }
        Ok(())
    }

    /// Σ_{k≥n} η_k ≤ C·η_n via the ratio witness.
    pub fn tail_bound(&self, n: usize) -> Result<Rat> {
        Ok(&self.tail_constant * self.value(n)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name(),
            "rho": crate::report::dual(&self.rho),
            "tail_constant": crate::report::dual(&self.tail_constant),
        })
    }
}

fn tail_from_rho(rho: &Rat) -> Rat {
    (Rat::one() - rho).recip()
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    Int::from(n - 1).bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let e = EtaSchedule::n_squared();
        assert_eq!(e.value(1).unwrap(), rat(1, 2));
        assert_eq!(e.value(3).unwrap(), pow2_neg(9));
        assert_eq!(*e.rho(), rat(1, 8));
        assert_eq!(*e.tail_constant(), rat(8, 7));

        let e = EtaSchedule::n_pow_n();
        assert_eq!(e.value(1).unwrap(), rat_i(1));
        assert_eq!(e.value(4).unwrap(), rat(1, 256));
        assert_eq!(*e.tail_constant(), rat(4, 3));

        let e = EtaSchedule::n_log_n();
        assert_eq!(e.value(1).unwrap(), rat_i(1));
        assert_eq!(e.value(2).unwrap(), rat(1, 4));
        assert_eq!(e.value(5).unwrap(), pow2_neg(15));
    }

    #[test]
    fn validation_passes_builtins() {
        EtaSchedule::n_squared().validate(40).unwrap();
        EtaSchedule::n_pow_n().validate(40).unwrap();
        EtaSchedule::n_log_n().validate(40).unwrap();
    }

    #[test]
    fn ratio_bounds_nonincreasing_and_sound() {
        for e in [EtaSchedule::n_squared(), EtaSchedule::n_pow_n(), EtaSchedule::n_log_n()] {
            let mut prev: Option<Rat> = None;
            for k in 1..30 {
                let b = e.ratio_bound_at(k).unwrap();
                let actual = e.value(k + 1).unwrap() / e.value(k).unwrap();
                assert!(actual <= b, "{} at {k}", e.name());
                if let Some(p) = prev {
                    assert!(b <= p, "{} bound increases at {k}", e.name());
                }
                prev = Some(b);
            }
        }
    }

    #[test]
    fn tail_constant_bounds_partial_sums() {
        let e = EtaSchedule::n_squared();
        for n in 1..10usize {
            let mut sum = Rat::zero();
            for k in n..n + 60 {
                sum += e.value(k).unwrap();
            }
            assert!(sum <= e.tail_bound(n).unwrap());
        }
    }

    #[test]
    fn table_schedules() {
        let vals = vec![rat(1, 2), rat(1, 8), rat(1, 64), rat(1, 1024)];
        let e = EtaSchedule::from_table(vals, rat(1, 4)).unwrap();
        assert_eq!(e.value(2).unwrap(), rat(1, 8));
        assert!(matches!(e.value(9), Err(Error::EtaTableExhausted(9))));
        assert_eq!(*e.tail_constant(), rat(4, 3));
        // Declared bound must hold on the table.
        assert!(EtaSchedule::from_table(vec![rat(1, 2), rat(1, 3)], rat(1, 4)).is_err());
        assert!(EtaSchedule::from_table(vec![rat(1, 2), rat(-1, 8)], rat(1, 4)).is_err());
    }
}
