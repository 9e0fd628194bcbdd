use thetasum_core::identities::{lookup, Params};
use thetasum_core::numerics::{Cx, Dd, PrecisionContext};
use thetasum_core::theta::{poch, theta, EllipticBase};

fn c(re: f64, im: f64) -> Cx<Dd> {
    Cx::from_f64(re, im)
}

fn hex(x: f64) -> String {
    format!("{:016x}", x.to_bits())
}

fn dump(name: &str, v: Cx<Dd>) {
    println!(
        "{} {} {} {} {}",
        name,
        hex(v.re.hi),
        hex(v.re.lo),
        hex(v.im.hi),
        hex(v.im.lo)
    );
}

fn main() {
    let ctx = PrecisionContext::double_double();
    let av = (0.9375317015495405, 0.6995816888900102);
    let bv = (-0.979913269178039, -0.31088420915813375);
    let pv = (0.12771566573771317, 0.3293059689599027);
    let qv = (-0.1034849418965945, -0.17482888907674268);
    println!("a {} {}", hex(av.0), hex(av.1));
    println!("b {} {}", hex(bv.0), hex(bv.1));
    println!("p {} {}", hex(pv.0), hex(pv.1));
    println!("q {} {}", hex(qv.0), hex(qv.1));
    let a = c(av.0, av.1);
    let b = c(bv.0, bv.1);
    let p = c(pv.0, pv.1);
    let q = c(qv.0, qv.1);

    dump("arg_qm8", q.powi(-8));
    dump("theta_qm8_p", theta(q.powi(-8), p, &ctx).unwrap());
    dump("theta_aa_p2", theta(a * a, p * p, &ctx).unwrap());
    dump("theta_mab_p", theta(-(a / b), p, &ctx).unwrap());
    dump("theta_aq_p", theta(a * q, p, &ctx).unwrap());
    dump("theta_bq_p2", theta(b / q, p * p, &ctx).unwrap());
    let b1 = EllipticBase::new(q, p);
    dump("poch_qm8_8", poch(q.powi(-8), &b1, 8, &ctx).unwrap());

    let def = lookup("biba").unwrap();
    let mut ps: Params<Dd> = Params::new();
    ps.set("a", a);
    ps.set("b", b);
    ps.set("q", q);
    ps.set("p", p);
    ps.set_int("n", 8);
    (def.dd.resolve)(&mut ps);
    let lhs = (def.dd.lhs)(&ps, 1e-5, &ctx).unwrap();
    let rhs = (def.dd.rhs)(&ps, 1e-5, &ctx).unwrap();
    dump("biba_lhs", lhs.value);
    dump("biba_rhs", rhs.value);
    println!("biba_maxterm_lhs {:e}", lhs.max_term);
    println!("biba_maxterm_rhs {:e}", rhs.max_term);
}
