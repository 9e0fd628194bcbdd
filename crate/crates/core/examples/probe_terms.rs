use thetasum_core::numerics::{Cx, Dd, PrecisionContext};
use thetasum_core::theta::{poch_multi, theta, EllipticBase};

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
    let a = c(0.9375317015495405, 0.6995816888900102);
    let b = c(-0.979913269178039, -0.31088420915813375);
    let p = c(0.12771566573771317, 0.3293059689599027);
    let q = c(-0.1034849418965945, -0.17482888907674268);
    let n: i64 = 8;

    let b2 = EllipticBase::new(q * q, p * p);
    let b1 = EllipticBase::new(q, p);
    let a2 = a * a;

    // Direct per-term evaluation: full pochhammers at each k.
    let tden = theta(a2, b2.p, &ctx).unwrap();
    let mut direct_sum = Cx::<Dd>::zero();
    for k in 0..=n {
        let vwp = theta(a2 * (q * q).powi(2 * k), b2.p, &ctx).unwrap() / tden;
        let num2 = poch_multi(&[a2, b / q], &b2, k, &ctx).unwrap();
        let den2 = poch_multi(&[q * q, a2 * q.powi(3) / b], &b2, k, &ctx).unwrap();
        let num1 = poch_multi(&[a * q.powi(n) / b, q.powi(-n)], &b1, k, &ctx).unwrap();
        let den1 = poch_multi(&[b * q.powi(1 - n), a * q.powi(n + 1)], &b1, k, &ctx).unwrap();
        let term = vwp * (num2 / den2) * (num1 / den1) * (q * q).powi(k);
        dump(&format!("direct_{k}"), term);
        direct_sum = direct_sum + term;
    }
    dump("direct_sum", direct_sum);

    // Incremental evaluation mirroring eval_mixed's update order.
    let inv = tden.inv();
    let qq = b2.q * b2.q;
    let mut vwp_arg = a2;
    let groups: Vec<(Vec<Cx<Dd>>, EllipticBase<Dd>, bool)> = vec![
        (vec![a2, b / q], b2, true),
        (vec![q * q, a2 * q.powi(3) / b], b2, false),
        (vec![a * q.powi(n) / b, q.powi(-n)], b1, true),
        (vec![b * q.powi(1 - n), a * q.powi(n + 1)], b1, false),
    ];
    let mut args: Vec<Vec<Cx<Dd>>> = groups.iter().map(|g| g.0.clone()).collect();
    let z = q * q;
    let mut core = Cx::<Dd>::one();
    let mut inc_sum = Cx::<Dd>::zero();
    for k in 0..=n {
        let full = if k == 0 {
            core
        } else {
            vwp_arg = vwp_arg * qq;
            core * theta(vwp_arg, b2.p, &ctx).unwrap() * inv
        };
        dump(&format!("inc_{k}"), full);
        inc_sum = inc_sum + full;
        if k == n {
            break;
        }
        let mut num_buf: Vec<Cx<Dd>> = Vec::new();
        let mut den_buf: Vec<Cx<Dd>> = Vec::new();
        for (g, arg_row) in groups.iter().zip(args.iter_mut()) {
            for arg in arg_row.iter_mut() {
                let t = theta(*arg, g.1.p, &ctx).unwrap();
                if g.2 {
                    num_buf.push(t);
                } else {
                    den_buf.push(t);
                }
                *arg = *arg * g.1.q;
            }
        }
        core = core * z;
        for i in 0..num_buf.len().max(den_buf.len()) {
            if let Some(&t) = num_buf.get(i) {
                core = core * t;
            }
            if let Some(&t) = den_buf.get(i) {
                core = core / t;
            }
        }
    }
    dump("inc_sum", inc_sum);
}
