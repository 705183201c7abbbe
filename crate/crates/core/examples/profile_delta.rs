use condensation_core::ifs::ParamPair;
use condensation_core::scalar::{rat, rat_bits, rat_pow};
use condensation_core::{Int, Rat};
use num_traits::Signed;
use std::time::Instant;

fn main() {
    // Synthetic designated point with the same magnitude profile:
    // lambda dyadic with ~10k-bit denominator, t with ~900k-bit parts.
    let t0 = Instant::now();
    let den_bits = 10_298u64;
    let u = (Int::from(1) << den_bits) * Int::from(3) / Int::from(10) + Int::from(12345);
    let lam = Rat::new(u, Int::from(1) << den_bits);
    let mut tn = Int::from(1);
    let mut td = Int::from(1);
    for k in 0..86u32 {
        tn = &tn * lam.numer() + (Int::from(1) << (k as u64 * den_bits / 8));
        td = &td * lam.denom() - (Int::from(1) << (k as u64 * den_bits / 9));
    }
    let t_raw_bits = tn.bits() + td.bits();
    let t = Rat::new(tn.abs() % (&td.clone().abs() / Int::from(3)), td.abs());
    eprintln!("[{:>8.2?}] t built: raw {} bits, reduced {}", t0.elapsed(), t_raw_bits, rat_bits(&t));
    let p = ParamPair::new(lam.clone(), t.clone()).unwrap();
    eprintln!("[{:>8.2?}] pair", t0.elapsed());

    let prec = 320u64;
    let scale = Int::from(1) << prec;
    let scale_r = Rat::from_integer(scale.clone());
    let t1 = Instant::now();
    let tv = p.t() * &scale_r;
    eprintln!("[{:>8.2?}] t*2^320 mul: {:?}", t0.elapsed(), t1.elapsed());
    let t1 = Instant::now();
    let fl = tv.floor().to_integer();
    eprintln!("[{:>8.2?}] floor: {:?} ({} bits)", t0.elapsed(), t1.elapsed(), fl.bits());
    let t1 = Instant::now();
    let n = 8i64;
    for k in 0..n {
        let v = rat_pow(p.lambda(), k) * &scale_r;
        let _ = v.floor().to_integer();
    }
    eprintln!("[{:>8.2?}] lambda powers+floors: {:?}", t0.elapsed(), t1.elapsed());
}
