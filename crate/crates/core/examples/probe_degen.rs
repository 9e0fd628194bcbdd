//! Scratch: per-draw degeneration error decay along an extended nome
//! sequence, with draw parameters printed.

use thetasum_core::limits::{check_degeneration, list_pairs, DegenerationPair};
use thetasum_core::identities::{lookup, sample_schema};
use thetasum_core::numerics::{sub_seed, PrecisionContext, SamplerConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let long: &[f64] = &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

    for base_pair in list_pairs() {
        if base_pair.elliptic != "biba" && base_pair.elliptic != "new1_12V11" {
            continue;
        }
        let pair = DegenerationPair { p_sequence: long, ..base_pair };
        let bdef = lookup(pair.basic).unwrap();
        for idx in 0..25u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(3, idx));
            let mut free = sample_schema(bdef.schema, &mut rng, &cfg, 8);
            let aux = sample_schema(pair.aux, &mut rng, &cfg, 8);
            free.c.extend(aux.c);
            free.i.extend(aux.i);
            match check_degeneration(&pair, &free, cfg.singularity_floor, &ctx) {
                Ok(rep) => {
                    if !rep.order_ok || idx < 3 {
                        let q = free.c["q"];
                        println!(
                            "{} draw {idx} ok={} n={} |q|={:.3} errors={:?}",
                            pair.elliptic,
                            rep.order_ok,
                            free.i["n"],
                            (q.re * q.re + q.im * q.im).sqrt(),
                            rep.errors
                                .iter()
                                .map(|e| format!("{e:.2e}"))
                                .collect::<Vec<_>>()
                        );
                    }
                }
                Err(e) => println!("{} draw {idx} error: {e}", pair.elliptic),
            }
        }
    }
}
