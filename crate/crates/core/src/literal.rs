//! Numeric literals used in spec files and on the command line: plain reals,
//! `pi` multiples (`2pi`, `-pi/4`, `3*pi/2`) and fractions (`3/4`).

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub fn parse_real(text: &str) -> Result<f64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s.as_str(), None),
    };
    let mut value = parse_factor(num, text)?;
    if let Some(d) = den {
        let d = parse_factor(d, text)?;
        if d == 0.0 {
            return Err(Error::Parse(format!("division by zero in '{text}'")));
        }
        value /= d;
    }
    if !value.is_finite() {
        return Err(Error::Parse(format!("'{text}' is not finite")));
    }
    Ok(value)
}

fn parse_factor(s: &str, whole: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("cannot read '{whole}' as a number"));
    let lower = s.to_ascii_lowercase();
    if let Some(head) = lower.strip_suffix("pi") {
        let head = head.strip_suffix('*').unwrap_or(head);
        let k = match head {
            "" | "+" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| bad())?,
        };
        return Ok(k * PI);
    }
    lower.parse::<f64>().map_err(|_| bad())
}

/// Comma-separated reals.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_real)
        .collect()
}
