use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetasum_core::identities::{lift, lookup, sample_schema, Params};
use thetasum_core::numerics::{rel_residual, Dd, PrecisionContext, SamplerConfig};

const U_DD: f64 = 2.4651903288156619e-32; // 2^-105

fn main() {
    let ctx = PrecisionContext::double_double();
    let args: Vec<String> = std::env::args().collect();
    let name = args.get(1).map(String::as_str).unwrap_or("bw_4phi3");
    let qlo: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.2);
    let trials: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let mut cfg = SamplerConfig::default();
    cfg.q_magnitude = (qlo, 0.8);
    let def = lookup(name).unwrap();

    let mut worst_e = 0.0_f64;
    let mut worst = (0.0_f64, 0.0_f64);
    let mut kmax = 0.0_f64;
    let mut shown = 0;
    let mut n_eval = 0usize;
    let mut over = [0usize; 4]; // kappa > 1e10, 1e11, 3.2e11, 1.3e12
    for idx in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64 + 12345);
        let free = sample_schema(def.schema, &mut rng, &cfg, 8);
        if def.zero_rhs.is_some_and(|f| f(&free.i)) {
            continue;
        }
        let mut prm: Params<Dd> = lift(&free);
        (def.dd.resolve)(&mut prm);
        let lhs = match (def.dd.lhs)(&prm, cfg.singularity_floor, &ctx) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let rhs = match (def.dd.rhs)(&prm, cfg.singularity_floor, &ctx) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let scale = lhs.value.norm().to_f64().max(rhs.value.norm().to_f64());
        if scale == 0.0 || !scale.is_finite() {
            continue;
        }
        let kappa = (lhs.max_term.max(rhs.max_term) / scale).max(1.0);
        let res = rel_residual(lhs.value, rhs.value);
        kmax = kmax.max(kappa);
        n_eval += 1;
        for (i, th) in [1e9, 1e10, 4e10, 3.2e11].iter().enumerate() {
            if kappa > *th {
                over[i] += 1;
            }
        }
        if kappa > 1e4 {
            let e = res / (U_DD * kappa);
            if e > worst_e {
                worst_e = e;
                worst = (kappa, res);
            }
            if res > 1e-18 && shown < 8 {
                println!("  over-tol draw: kappa={kappa:.3e} residual={res:.3e} e={e:.1}");
                shown += 1;
            }
        }
    }
    println!(
        "{name} qlo={qlo}: eval={n_eval} kappa_max={kmax:.3e} worst_E={worst_e:.1} (at k={:.2e} r={:.2e}) over[1e9,1e10,4e10,3.2e11]={over:?}",
        worst.0, worst.1
    );
}
