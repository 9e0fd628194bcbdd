//! Scratch: high-trial runs on selected identities, reporting rejection
//! exhaustion and worst residuals.

use thetasum_core::identities::verify_many;
use thetasum_core::numerics::{PrecisionContext, SamplerConfig};

fn main() {
    let trials: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let names = [
        "new2_12V11",
        "bw_4phi3",
        "watson_8phi7",
        "andrews_q_watson",
        "andrews_q_whipple",
        "w02_thm41",
        "ft_jackson_V109",
        "biba",
        "new1_12V11",
        "linp",
    ];
    for name in names {
        let rep = verify_many(name, trials, 1, 8, &ctx, &cfg).unwrap();
        println!(
            "{:<20} trials={} max_residual={:9.3e} failures={:3} pass={} elapsed={}ms",
            name,
            trials,
            rep.max_residual,
            rep.failures.len(),
            rep.pass,
            rep.elapsed_ms
        );
    }
}
