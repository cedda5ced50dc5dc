//! Flat `key = value` grid configuration files.
//!
//! Lists are comma-separated; `#` starts a comment. Unknown keys are
//! rejected. Missing keys keep the desk-scale defaults.

use rmnk_core::{Error, GridConfig};

fn parse_list<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<Vec<T>, Error> {
    value
        .split(',')
        .map(|item| {
            item.trim().parse().map_err(|_| Error::Format {
                line,
                message: format!("invalid {key} entry {:?}", item.trim()),
            })
        })
        .collect()
}

fn parse_scalar<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<T, Error> {
    value.trim().parse().map_err(|_| Error::Format {
        line,
        message: format!("invalid {key} value {value:?}"),
    })
}

/// Parses a grid configuration from flat text.
pub fn parse_grid_config(text: &str) -> Result<GridConfig<f64>, Error> {
    let mut config = GridConfig::default();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Format {
            line,
            message: "expected `key = value`".to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "n" => config.n_values = parse_list(value, line, key)?,
            "k" => config.k_values = parse_list(value, line, key)?,
            "m" => config.m_values = parse_list(value, line, key)?,
            "rho" => config.rho_values = parse_list(value, line, key)?,
            "instances_per_cell" => config.instances_per_cell = parse_scalar(value, line, key)?,
            "walks_per_instance" => config.walks_per_instance = parse_scalar(value, line, key)?,
            "enumerate" => config.enumerate = parse_scalar(value, line, key)?,
            "enumeration_limit" => config.enumeration_limit = parse_scalar(value, line, key)?,
            "correlation_samples" => config.correlation_samples = parse_scalar(value, line, key)?,
            "master_seed" => config.master_seed = parse_scalar(value, line, key)?,
            other => {
                return Err(Error::Format {
                    line,
                    message: format!("unknown key {other:?}"),
                })
            }
        }
    }
    Ok(config)
}
