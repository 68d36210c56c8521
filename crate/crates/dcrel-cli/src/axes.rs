//! Sweep-axis argument parsing: `NAME=log:START:STOP:COUNT`,
//! `NAME=lin:START:STOP:COUNT`, or `NAME=v1,v2,...`.

use crate::CliError;
use dcrel::sweeps::{SweepAxis, SweepParameter};

pub fn parse_parameter(name: &str) -> Result<SweepParameter, CliError> {
    match name.replace('_', "-").as_str() {
        "rho" => Ok(SweepParameter::Rho),
        "rho-h" => Ok(SweepParameter::RhoH),
        "eps-ran" => Ok(SweepParameter::EpsRan),
        "n-nodes" | "n-intermediate-nodes" => Ok(SweepParameter::NIntermediateNodes),
        "eps-link" => Ok(SweepParameter::EpsLink),
        "eps-node" => Ok(SweepParameter::EpsNode),
        "eps-sx" => Ok(SweepParameter::EpsSx),
        other => Err(CliError::Input(format!(
            "unknown sweep parameter `{other}` (expected rho, rho-h, eps-ran, n-nodes, \
             eps-link, eps-node, or eps-sx)"
        ))),
    }
}

pub fn parse_values(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |what: &str| CliError::Input(format!("bad axis values `{spec}`: {what}"));
    let parse_f64 = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad(&format!("`{s}` is not a number")))
    };

    if let Some(rest) = spec.strip_prefix("log:").or_else(|| spec.strip_prefix("lin:")) {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected START:STOP:COUNT"));
        }
        let start = parse_f64(parts[0])?;
        let stop = parse_f64(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| bad("COUNT must be a positive integer"))?;
        if count < 2 {
            return Err(bad("COUNT must be at least 2"));
        }
        if spec.starts_with("log:") {
            if start <= 0.0 || stop <= 0.0 {
                return Err(bad("log spacing needs positive endpoints"));
            }
            let (la, lb) = (start.ln(), stop.ln());
            Ok((0..count)
                .map(|i| (la + (lb - la) * i as f64 / (count - 1) as f64).exp())
                .collect())
        } else {
            Ok((0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect())
        }
    } else {
        spec.split(',').map(parse_f64).collect()
    }
}

/// Parse a full `NAME=SPEC` axis argument.
pub fn parse_axis(arg: &str) -> Result<SweepAxis, CliError> {
    let (name, spec) = arg
        .split_once('=')
        .ok_or_else(|| CliError::Input(format!("axis `{arg}` must look like NAME=VALUES")))?;
    let parameter = parse_parameter(name)?;
    let values = parse_values(spec)?;
    SweepAxis::new(parameter, values).map_err(|e| CliError::Input(format!("axis {name}: {e}")))
}
