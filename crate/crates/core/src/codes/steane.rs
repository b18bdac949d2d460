//! Closed-form logical rates of the 7-qubit Steane code for each abort
//! threshold `n_max` (abort when more than `n_max` positions are lost).

use super::LogicalRates;
use crate::error::{Error, Result};
use crate::math::powi;

/// Evaluates the tabulated Steane polynomials.
pub fn steane_table_rates(f_u: f64, f_n: f64, n_max: u32) -> Result<LogicalRates> {
    let (flip, success) = match n_max {
        0 => (flip_0(f_u, f_n), powi(1.0 - f_n, 7)),
        1 => (flip_1(f_u, f_n), powi(f_n - 1.0, 6) * (6.0 * f_n + 1.0)),
        2 => (
            flip_2(f_u, f_n),
            -powi(f_n - 1.0, 5) * (15.0 * f_n * f_n + 5.0 * f_n + 1.0),
        ),
        3 => (
            flip_3(f_u, f_n),
            powi(f_n - 1.0, 4) * (20.0 * powi(f_n, 3) + 10.0 * f_n * f_n + 4.0 * f_n + 1.0),
        ),
        4 => (
            flip_4(f_u, f_n),
            -15.0 * powi(f_n, 7) + 35.0 * powi(f_n, 6) - 21.0 * powi(f_n, 5) + 1.0,
        ),
        5 => (flip_5(f_u, f_n), 6.0 * powi(f_n, 7) - 7.0 * powi(f_n, 6) + 1.0),
        6 => (flip_6(f_u, f_n), 1.0 - powi(f_n, 7)),
        7 => (flip_7(f_u, f_n), 1.0),
        _ => return Err(Error::AbortThresholdOutOfRange { n_max, n: 7 }),
    };
    Ok(LogicalRates { flip, success })
}

fn flip_0(u: f64, n: f64) -> f64 {
    powi(n - 1.0, 7)
        * u
        * u
        * (48.0 * powi(u, 5) - 168.0 * powi(u, 4) + 252.0 * powi(u, 3) - 210.0 * u * u + 98.0 * u - 21.0)
}

fn flip_1(u: f64, n: f64) -> f64 {
    let m = n - 1.0;
    powi(m, 6)
        * u
        * (48.0 * m * powi(u, 6) - 168.0 * m * powi(u, 5) + 252.0 * m * powi(u, 4) - 210.0 * m * powi(u, 3)
            + 14.0 * (9.0 * n - 7.0) * u * u
            + 21.0 * (1.0 - 3.0 * n) * u
            + 21.0 * n)
}

fn flip_2(u: f64, n: f64) -> f64 {
    let m = n - 1.0;
    let m2 = m * m;
    powi(m, 5)
        * u
        * (48.0 * m2 * powi(u, 6) - 168.0 * m2 * powi(u, 5) + 252.0 * m2 * powi(u, 4) - 210.0 * m2 * powi(u, 3)
            + 14.0 * (n * (3.0 * n - 16.0) + 7.0) * u * u
            + 21.0 * (n * (3.0 * n + 4.0) - 1.0) * u
            - 21.0 * n * (2.0 * n + 1.0))
}

fn flip_3(u: f64, n: f64) -> f64 {
    let m = n - 1.0;
    0.5 * powi(m, 4)
        * (powi(n, 3)
            * (96.0 * powi(u, 7) - 336.0 * powi(u, 6) + 504.0 * powi(u, 5) - 420.0 * powi(u, 4) + 308.0 * powi(u, 3)
                - 210.0 * u * u
                + 84.0 * u
                + 7.0)
            - 2.0
                * n
                * n
                * u
                * (144.0 * powi(u, 6) - 504.0 * powi(u, 5) + 756.0 * powi(u, 4) - 630.0 * powi(u, 3) + 266.0 * u * u
                    - 21.0 * u
                    - 21.0)
            + 2.0
                * n
                * u
                * (144.0 * powi(u, 6) - 504.0 * powi(u, 5) + 756.0 * powi(u, 4) - 630.0 * powi(u, 3) + 322.0 * u * u
                    - 105.0 * u
                    + 21.0)
            + 2.0
                * u
                * u
                * (-48.0 * powi(u, 5) + 168.0 * powi(u, 4) - 252.0 * powi(u, 3) + 210.0 * u * u - 98.0 * u + 21.0))
}

fn flip_4(u: f64, n: f64) -> f64 {
    let m = n - 1.0;
    0.5 * powi(m, 3)
        * (3.0
            * powi(n, 4)
            * (32.0 * powi(u, 7) - 112.0 * powi(u, 6) + 168.0 * powi(u, 5) - 140.0 * powi(u, 4) + 84.0 * powi(u, 3)
                - 42.0 * u * u
                + 14.0 * u
                - 7.0)
            - powi(n, 3)
                * (384.0 * powi(u, 7) - 1344.0 * powi(u, 6) + 2016.0 * powi(u, 5) - 1680.0 * powi(u, 4)
                    + 840.0 * powi(u, 3)
                    - 252.0 * u * u
                    + 42.0 * u
                    + 7.0)
            + 12.0
                * n
                * n
                * u
                * u
                * (48.0 * powi(u, 5) - 168.0 * powi(u, 4) + 252.0 * powi(u, 3) - 210.0 * u * u + 98.0 * u - 21.0)
            - 6.0
                * n
                * u
                * (64.0 * powi(u, 6) - 224.0 * powi(u, 5) + 336.0 * powi(u, 4) - 280.0 * powi(u, 3) + 140.0 * u * u
                    - 42.0 * u
                    + 7.0)
            + 2.0
                * u
                * u
                * (48.0 * powi(u, 5) - 168.0 * powi(u, 4) + 252.0 * powi(u, 3) - 210.0 * u * u + 98.0 * u - 21.0))
}

fn flip_5(u: f64, n: f64) -> f64 {
    let m = n - 1.0;
    0.5 * m
        * m
        * (6.0
            * powi(n, 5)
            * u
            * (16.0 * powi(u, 6) - 56.0 * powi(u, 5) + 84.0 * powi(u, 4) - 70.0 * powi(u, 3) + 42.0 * u * u - 21.0 * u
                + 7.0)
            - 2.0
                * powi(n, 4)
                * (240.0 * powi(u, 7) - 840.0 * powi(u, 6) + 1260.0 * powi(u, 5) - 1050.0 * powi(u, 4)
                    + 546.0 * powi(u, 3)
                    - 189.0 * u * u
                    + 42.0 * u
                    - 7.0)
            + powi(n, 3)
                * (960.0 * powi(u, 7) - 3360.0 * powi(u, 6) + 5040.0 * powi(u, 5) - 4200.0 * powi(u, 4)
                    + 2016.0 * powi(u, 3)
                    - 504.0 * u * u
                    + 42.0 * u
                    + 7.0)
            - 6.0
                * n
                * n
                * u
                * (160.0 * powi(u, 6) - 560.0 * powi(u, 5) + 840.0 * powi(u, 4) - 700.0 * powi(u, 3) + 336.0 * u * u
                    - 84.0 * u
                    + 7.0)
            + 2.0
                * n
                * u
                * (240.0 * powi(u, 6) - 840.0 * powi(u, 5) + 1260.0 * powi(u, 4) - 1050.0 * powi(u, 3)
                    + 518.0 * u * u
                    - 147.0 * u
                    + 21.0)
            + 2.0
                * u
                * u
                * (-48.0 * powi(u, 5) + 168.0 * powi(u, 4) - 252.0 * powi(u, 3) + 210.0 * u * u - 98.0 * u + 21.0))
}

/// Terms shared by the `n_max = 6` and `n_max = 7` rows, which differ only
/// in the `f_n^7` coefficient.
fn flip_high_common(u: f64, n: f64) -> f64 {
    let a = powi(2.0 * u - 1.0, 3);
    let q = 2.0 * powi(u, 3) - 4.0 * u * u + 3.0 * u - 1.0;
    -10.5 * powi(n, 6) * a * (4.0 * powi(u, 4) - 8.0 * powi(u, 3) + 6.0 * u * u - 2.0 * u + 1.0)
        + 10.5 * powi(n, 5) * a * (12.0 * powi(u, 4) - 24.0 * powi(u, 3) + 18.0 * u * u - 6.0 * u + 1.0)
        - 105.0 * powi(n, 4) * u * a * q
        + 3.5 * powi(n, 3) * a * (60.0 * powi(u, 4) - 120.0 * powi(u, 3) + 90.0 * u * u - 30.0 * u - 1.0)
        - 63.0 * n * n * u * a * q
        + 21.0 * n * u * a * q
        + u * u * (-48.0 * powi(u, 5) + 168.0 * powi(u, 4) - 252.0 * powi(u, 3) + 210.0 * u * u - 98.0 * u + 21.0)
}

fn flip_6(u: f64, n: f64) -> f64 {
    powi(n, 7)
        * (48.0 * powi(u, 7) - 168.0 * powi(u, 6) + 252.0 * powi(u, 5) - 210.0 * powi(u, 4) + 126.0 * powi(u, 3)
            - 63.0 * u * u
            + 21.0 * u
            - 3.5)
        + flip_high_common(u, n)
}

fn flip_7(u: f64, n: f64) -> f64 {
    3.0 * powi(n, 7) * powi(2.0 * u - 1.0, 3) * (2.0 * powi(u, 4) - 4.0 * powi(u, 3) + 3.0 * u * u - u + 1.0)
        + flip_high_common(u, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_inputs() {
        for n_max in 0..=7 {
            let r = steane_table_rates(0.0, 0.0, n_max).unwrap();
            assert!(r.flip.abs() < 1e-15 && (r.success - 1.0).abs() < 1e-15, "n_max={n_max}: {r:?}");
        }
    }

    #[test]
    fn success_examples() {
        let r = steane_table_rates(0.0, 0.1, 0).unwrap();
        assert!((r.success - 0.478_296_9).abs() < 1e-12);
        assert_eq!(steane_table_rates(0.3, 0.4, 7).unwrap().success, 1.0);
        assert!(matches!(
            steane_table_rates(0.0, 0.0, 8),
            Err(Error::AbortThresholdOutOfRange { n_max: 8, .. })
        ));
    }

    #[test]
    fn single_flip_example() {
        let r = steane_table_rates(0.01, 0.0, 0).unwrap();
        assert!((r.flip - 2.0041e-3).abs() < 1e-7, "{}", r.flip);
    }
}
