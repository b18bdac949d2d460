//! Hardware parameter files: `key=value` lines with `#` comments.

use std::path::Path;

use repnet_core::error_model::HardwareParams;

use crate::error::{CliError, CliResult};

pub const KEYS: [&str; 10] = [
    "f_C", "L_att_km", "f_P_u", "f_P_n", "f_G_u", "f_G_n", "f_T_u", "f_T_n_extra", "f_M_u", "f_M_n",
];

fn slot<'a>(p: &'a mut HardwareParams, key: &str) -> Option<&'a mut f64> {
    Some(match key {
        "f_C" => &mut p.coupling_failure,
        "L_att_km" => &mut p.attenuation_length_km,
        "f_P_u" => &mut p.preparation.unnoticed,
        "f_P_n" => &mut p.preparation.noticed,
        "f_G_u" => &mut p.gate.unnoticed,
        "f_G_n" => &mut p.gate.noticed,
        "f_T_u" => &mut p.transmission.unnoticed,
        "f_T_n_extra" => &mut p.transmission.noticed,
        "f_M_u" => &mut p.measurement.unnoticed,
        "f_M_n" => &mut p.measurement.noticed,
        _ => return None,
    })
}

/// Parses a parameter file. Missing keys keep their defaults.
pub fn parse_params(text: &str, path: &Path) -> CliResult<HardwareParams> {
    let mut params = HardwareParams::default();
    let mut seen = Vec::new();
    let fail = |line: usize, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| fail(i + 1, format!("expected key=value, got `{line}`")))?;
        let key = key.trim();
        if seen.contains(&key) {
            return Err(fail(i + 1, format!("duplicate key `{key}`")));
        }
        let target = slot(&mut params, key)
            .ok_or_else(|| fail(i + 1, format!("unknown key `{key}` (known: {})", KEYS.join(", "))))?;
        *target = value
            .trim()
            .parse()
            .map_err(|e| fail(i + 1, format!("bad number for `{key}`: {e}")))?;
        seen.push(key);
    }
    params
        .validate()
        .map_err(|e| fail(0, e.to_string()))?;
    Ok(params)
}

pub fn load_params(path: &Path) -> CliResult<HardwareParams> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_params(&text, path)
}

/// The parameters as `key=value` pairs, in file order.
pub fn echo(params: &HardwareParams) -> Vec<(&'static str, f64)> {
    let mut p = *params;
    KEYS.iter().map(|&k| (k, *slot(&mut p, k).expect("known key"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> CliResult<HardwareParams> {
        parse_params(text, Path::new("p.txt"))
    }

    #[test]
    fn defaults_and_overrides() {
        let p = parse("# gate only\nf_G_u = 1e-4\n\nL_att_km=22 # fiber\n").unwrap();
        assert_eq!(p.gate.unnoticed, 1e-4);
        assert_eq!(p.attenuation_length_km, 22.0);
        assert_eq!(p.preparation.unnoticed, 0.0);
        assert_eq!(parse("").unwrap(), HardwareParams::default());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("f_G_u=1e-4\nf_X=3").unwrap_err().to_string();
        assert!(e.contains("p.txt:2") && e.contains("f_X"), "{e}");
        assert!(parse("f_G_u 0.1").is_err());
        assert!(parse("f_G_u=abc").is_err());
        assert!(parse("f_G_u=0.1\nf_G_u=0.2").is_err());
        assert!(parse("f_G_u=1.5").is_err());
        assert!(parse("L_att_km=0").is_err());
    }

    #[test]
    fn echo_round_trips() {
        let p = parse("f_C=0.1\nf_M_n=0.02").unwrap();
        let text: String = echo(&p).iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        assert_eq!(parse(&text).unwrap(), p);
    }
}
