//! Closed-form logical rate of the [23,12,7] Golay code, approximated as half
//! the probability of a decoding failure. The protocol never aborts.

use super::LogicalRates;
use crate::math::powi;

pub fn golay_table_rates(f_u: f64, f_n: f64) -> LogicalRates {
    LogicalRates {
        flip: golay_flip(f_u, f_n),
        success: 1.0,
    }
}

fn golay_flip(u: f64, n: f64) -> f64 {
    let a = n + u - 1.0;
    let b = n - 1.0;
    let c2 = -n + 2.0 * u + 1.0;
    let c6 = -n + 6.0 * u + 1.0;
    let c14 = -n + 14.0 * u + 1.0;
    let p = |e: u32| powi(n, e);
    let q = |e: u32| powi(a, e);

    let terms = [
        -p(23) / 4096.0,
        23.0 * q(1) * p(22) / 2048.0,
        -253.0 * q(2) * p(21) / 1024.0,
        1771.0 / 512.0 * q(3) * p(20),
        -8855.0 / 256.0 * q(4) * p(19),
        33649.0 / 128.0 * q(5) * p(18),
        -100947.0 / 64.0 * q(6) * p(17),
        245157.0 / 32.0 * q(7) * p(16),
        -30613.0 * q(8) * p(15),
        -253.0 / 16.0 * b * q(7) * p(15),
        101200.0 * q(9) * p(14),
        3795.0 / 8.0 * b * q(8) * p(14),
        -272734.0 * q(10) * p(13),
        -26565.0 / 4.0 * b * q(9) * p(13),
        560924.0 * q(11) * p(12),
        115115.0 / 2.0 * b * q(10) * p(12),
        -695520.0 * q(12) * p(11),
        -319424.0 * b * q(11) * p(11),
        8855.0 / 2.0 * q(11) * c2 * p(11),
        949256.0 * b * q(12) * p(10),
        -97405.0 * q(12) * c2 * p(10),
        779240.0 * q(13) * c2 * p(9),
        18975.0 * q(13) * c6 * p(9),
        -485760.0 * q(14) * c6 * p(8),
        -2277.0 * q(14) * c14 * p(8),
        32384.0 * q(15) * c14 * p(7),
        253.0 / 2.0 * b * q(14) * c14 * p(7),
        212520.0 * q(14) * (-b * b + 10.0 * u * b + 8.0 * u * u) * p(7),
        -100947.0 * b * q(15) * c14 * p(6),
        -28336.0 * q(16) * c2 * c14 * p(5),
        -5313.0 * q(16) * (b * b - 15.0 * u * b + 30.0 * u * u) * p(5),
        8855.0 * q(17) * (b * b - 17.0 * u * b + 90.0 * u * u) * p(4),
        -1771.0 * q(17) * (powi(b, 3) - 17.0 * u * b * b + 138.0 * u * u * b + 96.0 * powi(u, 3)) * p(3),
        -253.0 * q(18) * (-powi(b, 3) + 18.0 * u * b * b - 171.0 * u * u * b + 90.0 * powi(u, 3)) * p(2),
        23.0 * q(19) * (-powi(b, 3) + 19.0 * u * b * b - 190.0 * u * u * b + 560.0 * powi(u, 3)) * n,
        q(23),
        -23.0 * u * q(22),
        253.0 * u * u * q(21),
        -1771.0 * powi(u, 3) * q(20),
        1.0,
    ];
    0.5 * terms.iter().sum::<f64>()
}
