//! Physical failure probabilities of repeater stations and network nodes.

use crate::error::{Error, Result};
use crate::math::{is_probability, powi};
use crate::network::Degrees;

/// Unnoticed (silent Pauli) and noticed (heralded) failure probabilities of
/// one hardware component.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FaultRates {
    pub unnoticed: f64,
    pub noticed: f64,
}

impl FaultRates {
    pub const fn unnoticed(f: f64) -> Self {
        FaultRates {
            unnoticed: f,
            noticed: 0.0,
        }
    }
}

/// Hardware failure model.
///
/// `transmission.noticed` is an extra heralded failure on top of fiber loss;
/// the loss itself follows from `coupling_failure` and the attenuation length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardwareParams {
    pub coupling_failure: f64,
    pub attenuation_length_km: f64,
    pub preparation: FaultRates,
    pub gate: FaultRates,
    pub transmission: FaultRates,
    pub measurement: FaultRates,
}

pub const DEFAULT_ATTENUATION_LENGTH_KM: f64 = 20.0;

impl Default for HardwareParams {
    fn default() -> Self {
        HardwareParams {
            coupling_failure: 0.0,
            attenuation_length_km: DEFAULT_ATTENUATION_LENGTH_KM,
            preparation: FaultRates::default(),
            gate: FaultRates::default(),
            transmission: FaultRates::default(),
            measurement: FaultRates::default(),
        }
    }
}

impl HardwareParams {
    /// Preparation, gate and measurement all fail silently with probability `f`.
    pub fn uniform_unnoticed(f: f64) -> Self {
        HardwareParams {
            preparation: FaultRates::unnoticed(f),
            gate: FaultRates::unnoticed(f),
            measurement: FaultRates::unnoticed(f),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name: &'static str, value: f64| {
            if is_probability(value) {
                Ok(())
            } else {
                Err(Error::InvalidParameter { name, value })
            }
        };
        check("f_C", self.coupling_failure)?;
        if !(self.attenuation_length_km.is_finite() && self.attenuation_length_km > 0.0) {
            return Err(Error::InvalidParameter {
                name: "L_att_km",
                value: self.attenuation_length_km,
            });
        }
        let components = [
            ("f_P_u", "f_P_n", "f_P_u + f_P_n", self.preparation),
            ("f_G_u", "f_G_n", "f_G_u + f_G_n", self.gate),
            ("f_T_u", "f_T_n_extra", "f_T_u + f_T_n_extra", self.transmission),
            ("f_M_u", "f_M_n", "f_M_u + f_M_n", self.measurement),
        ];
        for (u, n, sum, rates) in components {
            check(u, rates.unnoticed)?;
            check(n, rates.noticed)?;
            // A fault is either noticed or unnoticed, never both.
            check(sum, rates.unnoticed + rates.noticed)?;
        }
        Ok(())
    }

    /// Heralded transmission failure over one hop of `spacing_km`: fiber loss
    /// combined with the configured extra noticed rate.
    pub fn transmission_noticed(&self, spacing_km: f64) -> Result<f64> {
        let loss = transmission_failure(spacing_km, self)?;
        Ok(1.0 - (1.0 - loss) * (1.0 - self.transmission.noticed))
    }
}

/// Per-station (or per-node) outcome-flip and erasure probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StationRates {
    pub unnoticed: f64,
    pub noticed: f64,
}

/// Probability that a photon sent over `spacing_km` of fiber is lost.
pub fn transmission_failure(spacing_km: f64, params: &HardwareParams) -> Result<f64> {
    if !(spacing_km >= 0.0) || spacing_km.is_infinite() {
        return Err(Error::InvalidParameter {
            name: "L0_km",
            value: spacing_km,
        });
    }
    let survive = libm::exp(-spacing_km / params.attenuation_length_km);
    Ok(1.0 - (1.0 - params.coupling_failure) * survive)
}

/// Probability of an odd number of events among `n` independent events of
/// probability `f` each.
pub fn p_odd(f: f64, n: u32) -> f64 {
    match n {
        0 => 0.0,
        1 => f,
        _ => 0.5 * (1.0 - powi(1.0 - 2.0 * f, n)),
    }
}

/// Probability of an odd number of events among independent events with the
/// given probabilities. Empty input gives 0.
pub fn p_odd_tilde(ps: &[f64]) -> f64 {
    let prod: f64 = ps.iter().map(|p| 1.0 - 2.0 * p).product();
    0.5 * (1.0 - prod)
}

/// Independent sources that flip the X outcome of a repeater station:
/// preparation, the neighbour's heralded-or-silent preparation, gates,
/// transmission and measurement.
pub fn station_error_vector(params: &HardwareParams) -> [f64; 5] {
    let prep = params.preparation;
    [
        p_odd(prep.unnoticed / 2.0, 2),
        p_odd((prep.noticed + prep.unnoticed) / 2.0, 1),
        p_odd(params.gate.unnoticed / 2.0, 3),
        p_odd(params.transmission.unnoticed / 2.0, 2),
        params.measurement.unnoticed / 2.0,
    ]
}

/// Flip and erasure probabilities of a repeater station whose incoming hop
/// has length `spacing_km`.
pub fn station_rates(params: &HardwareParams, spacing_km: f64) -> Result<StationRates> {
    params.validate()?;
    let transmission_noticed = params.transmission_noticed(spacing_km)?;
    let unnoticed = p_odd_tilde(&station_error_vector(params));
    let kept = powi(1.0 - params.preparation.noticed, 2)
        * powi(1.0 - params.gate.noticed, 3)
        * powi(1.0 - transmission_noticed, 2)
        * powi(1.0 - params.measurement.noticed, 2);
    Ok(StationRates {
        unnoticed,
        noticed: 1.0 - kept,
    })
}

/// Source vector of a network node with the given degrees.
pub fn node_error_vector(params: &HardwareParams, degrees: Degrees) -> [f64; 5] {
    let prep = params.preparation;
    [
        p_odd(prep.unnoticed / 2.0, 1 + degrees.incoming),
        p_odd((prep.noticed + prep.unnoticed) / 2.0, degrees.outgoing),
        p_odd(params.gate.unnoticed / 2.0, 1 + degrees.total),
        p_odd(params.transmission.unnoticed / 2.0, 1 + degrees.incoming),
        params.measurement.unnoticed / 2.0,
    ]
}

/// Flip and erasure probabilities of a network node, generalising
/// [`station_rates`] by vertex degree. A station has degrees (2, 1, 1).
pub fn node_rates(params: &HardwareParams, degrees: Degrees, spacing_km: f64) -> Result<StationRates> {
    let degrees = Degrees::new(degrees.total, degrees.incoming, degrees.outgoing)?;
    params.validate()?;
    let transmission_noticed = params.transmission_noticed(spacing_km)?;
    let unnoticed = p_odd_tilde(&node_error_vector(params, degrees));
    let kept = powi(1.0 - params.preparation.noticed, 1 + degrees.incoming)
        * powi(1.0 - params.gate.noticed, 1 + degrees.total)
        * powi(1.0 - transmission_noticed, 1 + degrees.incoming)
        * powi(1.0 - params.measurement.noticed, 1 + degrees.incoming);
    Ok(StationRates {
        unnoticed,
        noticed: 1.0 - kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn transmission_closed_forms() {
        let mut p = HardwareParams::default();
        assert_eq!(transmission_failure(0.0, &p).unwrap(), 0.0);
        assert!(close(transmission_failure(20.0, &p).unwrap(), 1.0 - libm::exp(-1.0)));
        assert!(close(transmission_failure(20.0, &p).unwrap(), 0.632_120_558_828_557_7));
        p.coupling_failure = 1.0;
        assert_eq!(transmission_failure(3.7, &p).unwrap(), 1.0);
        assert!(transmission_failure(-1.0, &p).is_err());
        assert!(transmission_failure(f64::NAN, &p).is_err());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(p_odd(0.3, 1), 0.3);
        assert_eq!(p_odd(0.3, 0), 0.0);
        for n in 1..10 {
            assert!(close(p_odd(0.5, n), 0.5));
        }
        assert!(close(p_odd(0.1, 2), 0.18));
        assert_eq!(p_odd_tilde(&[]), 0.0);
        assert!(close(p_odd_tilde(&[0.1, 0.2]), 0.26));
        assert!(close(p_odd_tilde(&[0.37]), 0.37));
        assert!(close(p_odd_tilde(&[0.01, 0.5, 0.3]), 0.5));
    }

    #[test]
    fn station_vector_examples() {
        assert_eq!(station_error_vector(&HardwareParams::default()), [0.0; 5]);
        let mut p = HardwareParams::default();
        p.preparation.unnoticed = 0.01;
        let v = station_error_vector(&p);
        assert!(close(v[0], 0.00995) && close(v[1], 0.005));
        assert_eq!(&v[2..], &[0.0; 3]);
        let mut p = HardwareParams::default();
        p.measurement.unnoticed = 0.02;
        assert_eq!(station_error_vector(&p), [0.0, 0.0, 0.0, 0.0, 0.01]);
    }

    #[test]
    fn station_rate_examples() {
        let zero = station_rates(&HardwareParams::default(), 0.0).unwrap();
        assert_eq!(zero, StationRates::default());
        let mut p = HardwareParams::default();
        p.measurement.noticed = 0.1;
        assert!(close(station_rates(&p, 0.0).unwrap().noticed, 0.19));
    }

    #[test]
    fn node_rate_examples() {
        let d = Degrees::new(3, 2, 1).unwrap();
        assert_eq!(node_rates(&HardwareParams::default(), d, 0.0).unwrap(), StationRates::default());
        let mut p = HardwareParams::default();
        p.preparation.noticed = 0.1;
        assert!(close(node_rates(&p, d, 0.0).unwrap().noticed, 0.271));
        let bad = Degrees {
            total: 3,
            incoming: 1,
            outgoing: 1,
        };
        assert!(matches!(node_rates(&p, bad, 0.0), Err(Error::InconsistentDegrees { .. })));
    }

    #[test]
    fn station_equals_node_of_degree_two() {
        let mut p = HardwareParams::uniform_unnoticed(0.013);
        p.gate.noticed = 0.02;
        p.transmission = FaultRates {
            unnoticed: 0.004,
            noticed: 0.01,
        };
        p.coupling_failure = 0.1;
        let a = station_rates(&p, 7.5).unwrap();
        let b = node_rates(&p, Degrees::STATION, 7.5).unwrap();
        assert_eq!(a.unnoticed.to_bits(), b.unnoticed.to_bits());
        assert_eq!(a.noticed.to_bits(), b.noticed.to_bits());
    }

    #[test]
    fn validation() {
        let mut p = HardwareParams::default();
        p.gate.unnoticed = 1.5;
        assert!(matches!(p.validate(), Err(Error::InvalidParameter { name: "f_G_u", .. })));
        let mut p = HardwareParams::default();
        p.attenuation_length_km = 0.0;
        assert!(p.validate().is_err());
        let mut p = HardwareParams::default();
        p.preparation = FaultRates {
            unnoticed: 0.6,
            noticed: 0.6,
        };
        assert!(p.validate().is_err());
    }
}
