use crate::scalar::Real;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler gamma function (Lanczos, g = 7, nine terms) with reflection for x < ½.
pub fn gamma<R: Real>(x: R) -> R {
    let half = R::lit(0.5);
    if x < half {
        let pi = R::PI();
        return pi / ((pi * x).sin() * gamma(R::one() - x));
    }
    let x = x - R::one();
    let mut a = R::lit(COEF[0]);
    let t = x + R::lit(G) + half;
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a += R::lit(c) / (x + R::from_usize(i).unwrap());
    }
    (R::TAU()).sqrt() * t.powf(x + half) * (-t).exp() * a
}
