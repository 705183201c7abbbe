use condensation_core::construction::*;
use condensation_core::eta::EtaSchedule;
use condensation_core::ifs::ParamPair;
use condensation_core::scalar::{rat, rat_bits, Budget};
use condensation_core::transversality::certify_transversality;
use condensation_core::RatInterval;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let dom = RatInterval::new(
        rat(1, 4) + rat(1, 1_000_000_000),
        rat(1, 3) - rat(1, 1_000_000_000),
    );
    let cert = certify_transversality(&dom).unwrap();
    let cfg = ConstructionConfig::standard(EtaSchedule::n_squared(), cert, Budget::default(), 12).unwrap();
    let tree = build_tree(&cfg, 1).unwrap();
    eprintln!("[{:>8.2?}] depth-1 tree", t0.elapsed());
    let leaf = &tree.leaves()[0];
    let node = tree.branch(leaf).last().unwrap().clone();
    eprintln!("leaf len {} interval bits {}", node.k_word.len(), rat_bits(node.interval.lo()));
    let lambda_star = node.interval.midpoint();
    eprintln!("[{:>8.2?}] midpoint bits {}", t0.elapsed(), rat_bits(&lambda_star));
    let (x, y) = condensation_core::ifs::orbit_polys(&node.k_word);
    let d = node.k_word.len() - 1;
    let xs = x.eval_scaled(lambda_star.numer(), lambda_star.denom(), d);
    let ys = y.eval_scaled(lambda_star.numer(), lambda_star.denom(), d);
    eprintln!("[{:>8.2?}] scaled evals: {} / {} bits", t0.elapsed(), xs.bits(), ys.bits());
    let t_star = condensation_core::Rat::new(xs, ys);
    eprintln!("[{:>8.2?}] t_star reduced: {} bits", t0.elapsed(), rat_bits(&t_star));
    let p = ParamPair::new(lambda_star, t_star).unwrap();
    eprintln!("[{:>8.2?}] param pair", t0.elapsed());
    for n in [1u32, 4, 8, 10, 12] {
        let (lo, hi) = certified_delta_enclosure(&p, n, 320).unwrap();
        eprintln!(
            "[{:>8.2?}] delta_{n}: lo pos {} hi bits {}",
            t0.elapsed(),
            num_traits::Signed::is_positive(&lo),
            rat_bits(&hi)
        );
    }
}
