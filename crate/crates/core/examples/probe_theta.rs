use thetasum_core::numerics::{Cx, Dd, PrecisionContext};
use thetasum_core::theta::{poch, theta, EllipticBase};

fn c(re: f64, im: f64) -> Cx<Dd> {
    Cx::from_f64(re, im)
}

fn main() {
    let ctx = PrecisionContext::double_double();
    let a = c(0.9375317015495405, 0.6995816888900102);
    let b = c(-0.979913269178039, -0.31088420915813375);
    let p = c(0.12771566573771317, 0.3293059689599027);
    let q = c(-0.1034849418965945, -0.17482888907674268);

    let cases: Vec<(&str, Cx<Dd>, Cx<Dd>)> = vec![
        ("theta(q^-8; p)", q.powi(-8), p),
        ("theta(a*a; p2)", a * a, p * p),
        ("theta(-a/b; p)", -(a / b), p),
        ("theta(a*q; p)", a * q, p),
        ("theta(b/q; p2)", b / q, p * p),
        ("theta(q^-8*q^7; p)", q.powi(-1), p),
    ];
    for (name, x, nome) in cases {
        let v = theta(x, nome, &ctx).unwrap();
        println!(
            "{:22} re {:+.17e} {:+.9e} | im {:+.17e} {:+.9e}",
            name, v.re.hi, v.re.lo, v.im.hi, v.im.lo
        );
    }
    let b1 = EllipticBase::new(q, p);
    let v = poch(q.powi(-8), &b1, 8, &ctx).unwrap();
    println!(
        "poch(q^-8;q,p)_8       re {:+.17e} {:+.9e} | im {:+.17e} {:+.9e}",
        v.re.hi, v.re.lo, v.im.hi, v.im.lo
    );
}
