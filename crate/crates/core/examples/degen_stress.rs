//! Scratch: degeneration stress at many seeds.
use thetasum_core::limits::{list_pairs, verify_pair};
use thetasum_core::numerics::{PrecisionContext, SamplerConfig};

fn main() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    for seed in [1u64, 2, 3, 7, 99] {
        let mut worst = true;
        for pair in list_pairs() {
            let rep = verify_pair(&pair, 200, seed, 8, &ctx, &cfg).unwrap();
            if !rep.all_ok {
                let bad = rep.draws.iter().filter(|d| !d.order_ok).count();
                println!("seed {seed}: {} bad_draws={bad}", rep.elliptic);
                for d in rep.draws.iter().filter(|d| !d.order_ok).take(3) {
                    println!("   errors={:?} params={:?}", d.errors, d.params);
                }
                worst = false;
            }
        }
        if worst {
            println!("seed {seed}: all 9 pairs x 200 draws OK");
        }
    }
}
