use thetasum_core::identities::{lift, lookup, verify_many, Params};
use thetasum_core::numerics::{Cx, Dd, PrecisionContext, SamplerConfig};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "new2_12V11".into());
    let ctx = PrecisionContext::double_double();
    let cfg = SamplerConfig::default();
    let rep = verify_many(&name, 100, 1, 8, &ctx, &cfg).unwrap();
    for bad in &rep.failures {
        println!("failing params (exact bits):");
        for (k, (re, im)) in &bad.params {
            println!("  {} = {:?} {:?}", k, re, im);
        }
        let mut free: Params<f64> = Params::new();
        for (k, (re, im)) in &bad.params {
            if *k == "n" {
                free.set_int("n", *re as i64);
            } else {
                free.set(k, Cx::from_f64(*re, *im));
            }
        }
        let def = lookup(&name).unwrap();
        let mut pd: Params<Dd> = lift(&free);
        (def.dd.resolve)(&mut pd);
        let lhs = (def.dd.lhs)(&pd, cfg.singularity_floor, &ctx).unwrap();
        let rhs = (def.dd.rhs)(&pd, cfg.singularity_floor, &ctx).unwrap();
        println!("dd LHS re: hi={:.17e} lo={:.17e}", lhs.value.re.hi, lhs.value.re.lo);
        println!("dd LHS im: hi={:.17e} lo={:.17e}", lhs.value.im.hi, lhs.value.im.lo);
        println!("dd RHS re: hi={:.17e} lo={:.17e}", rhs.value.re.hi, rhs.value.re.lo);
        println!("dd RHS im: hi={:.17e} lo={:.17e}", rhs.value.im.hi, rhs.value.im.lo);
        let lm = (lhs.value.re.hi * lhs.value.re.hi + lhs.value.im.hi * lhs.value.im.hi).sqrt();
        let rm = (rhs.value.re.hi * rhs.value.re.hi + rhs.value.im.hi * rhs.value.im.hi).sqrt();
        println!("|lhs|={:.3e} |rhs|={:.3e}", lm, rm);
        println!(
            "lhs max_term={:.3e} rhs max_term={:.3e} kappa={:.3e}",
            lhs.max_term,
            rhs.max_term,
            lhs.max_term.max(rhs.max_term) / lm.max(rm)
        );
        println!();
    }
}
