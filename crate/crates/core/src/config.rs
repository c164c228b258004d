//! `key = value` configuration files with `#` comments.

use crate::{Error, Result};
use std::collections::BTreeMap;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// a repeated key keeps its last value.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub fn get_f64(map: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>> {
    map.get(key)
        .map(|v| v.parse::<f64>().map_err(|_| Error::Config(format!("{key}: not a number: {v}"))))
        .transpose()
}

pub fn get_usize(map: &BTreeMap<String, String>, key: &str) -> Result<Option<usize>> {
    map.get(key)
        .map(|v| v.parse::<usize>().map_err(|_| Error::Config(format!("{key}: not an integer: {v}"))))
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks() {
        let m = parse_key_values("# header\nmass = 2.0 # kg-ish\n\ntheta=0.1\n").unwrap();
        assert_eq!(m["mass"], "2.0");
        assert_eq!(m["theta"], "0.1");
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn missing_equals_is_error() {
        assert!(parse_key_values("mass 2").is_err());
    }

    #[test]
    fn typed_getters() {
        let m = parse_key_values("a = 1.5\nb = 7\nc = x").unwrap();
        assert_eq!(get_f64(&m, "a").unwrap(), Some(1.5));
        assert_eq!(get_usize(&m, "b").unwrap(), Some(7));
        assert!(get_f64(&m, "c").is_err());
        assert_eq!(get_f64(&m, "zz").unwrap(), None);
    }
}
