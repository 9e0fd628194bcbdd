use thetasum_core::identities::verify_many;
use thetasum_core::numerics::{PrecisionContext, SamplerConfig};

fn main() {
    let ctx = PrecisionContext::double_double();
    let names = ["bw_4phi3", "andrews_q_watson", "andrews_q_whipple", "watson_8phi7"];
    for lo in [0.50, 0.55, 0.60, 0.62, 0.65, 0.70] {
        println!("q range [{lo:.2}, 0.80]:");
        for name in names {
            let mut cfg = SamplerConfig::default();
            cfg.q_magnitude = (lo, 0.8);
            let rep = verify_many(name, 300, 1, 8, &ctx, &cfg).unwrap();
            println!(
                "  {:20} max_residual={:9.3e} failures={}",
                name,
                rep.max_residual,
                rep.failures.len()
            );
        }
    }
}
