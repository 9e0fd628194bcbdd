use thetasum_core::identities::{list_identities, verify_many};
use thetasum_core::numerics::{PrecisionContext, SamplerConfig};

fn main() {
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let trials: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    for def in list_identities() {
        let rep = verify_many(def.name, trials, 1, 8, &ctx, &cfg).unwrap();
        println!(
            "{:22} {:28} max_residual={:10.3e} failures={:3} pass={}",
            def.kind.name(),
            def.name,
            rep.max_residual,
            rep.failures.len(),
            rep.pass
        );
        for f in &rep.failures {
            println!(
                "    {:?} residual={:.3e} max_term={:.3e}",
                f.status, f.residual, f.max_term
            );
            for (k, (re, im)) in &f.params {
                println!("      {:6} = {:+.6e} {:+.6e}i", k, re, im);
            }
        }
    }
}
