//! Parsing of run parameters: α-profile specs, ℓ lists, and flat
//! `key = value` config files.

use std::path::Path;

use crate::coupling::{AlphaProfile, AlphaTable};
use crate::error::{Error, Result};

/// Largest ℓ accepted from the command line.
pub const MAX_ELL: u32 = 100_000;

/// Parses `const:<v>`, `poly:<c0,c1,...>` or `table:<path>`.
pub fn parse_alpha(spec: &str) -> Result<AlphaProfile> {
    let (kind, body) = spec.split_once(':').ok_or_else(|| {
        Error::Config(format!(
            "α spec `{spec}` must look like const:<v>, poly:<c0,c1,...> or table:<path>"
        ))
    })?;
    let profile = match kind.trim() {
        "const" => AlphaProfile::Constant(parse_f64(body)?),
        "poly" => AlphaProfile::Polynomial(parse_f64_list(body)?),
        "table" => AlphaProfile::Tabulated(AlphaTable::read(Path::new(body.trim()))?),
        other => return Err(Error::Config(format!("unknown α profile kind `{other}`"))),
    };
    profile.validate()?;
    Ok(profile)
}

/// Parses `7`, `1..100` (inclusive) or `10,20,40`; the result is sorted
/// and deduplicated.
pub fn parse_ells(spec: &str) -> Result<Vec<u32>> {
    let mut ells = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (parse_ell(a)?, parse_ell(b)?);
            if a > b {
                return Err(Error::Config(format!("empty ℓ range `{part}`")));
            }
            ells.extend(a..=b);
        } else {
            ells.push(parse_ell(part)?);
        }
    }
    if ells.is_empty() {
        return Err(Error::Config(format!("no ℓ values in `{spec}`")));
    }
    ells.sort_unstable();
    ells.dedup();
    Ok(ells)
}

fn parse_ell(s: &str) -> Result<u32> {
    let ell: u32 = s
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{s}` is not a non-negative integer")))?;
    if ell > MAX_ELL {
        return Err(Error::Config(format!("ℓ = {ell} exceeds {MAX_ELL}")));
    }
    Ok(ell)
}

pub fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Config(format!("`{s}` is not finite")));
    }
    Ok(v)
}

/// Comma-separated numbers; an empty string gives an empty list.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(parse_f64).collect()
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse()
                .map_err(|_| Error::Config(format!("`{p}` is not a non-negative integer")))
        })
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Config(format!("empty list `{s}`")));
    }
    Ok(v)
}

/// `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value, got `{line}`", lineno + 1)))?;
        let key = k.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(Error::Config(format!("line {}: bad key `{key}`", lineno + 1)));
        }
        pairs.push((key.replace('_', "-"), v.trim().to_string()));
    }
    Ok(pairs)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alpha_specs() {
        assert_eq!(parse_alpha("const:1.5").unwrap(), AlphaProfile::Constant(1.5));
        assert_eq!(
            parse_alpha("poly:1, 0,-2").unwrap(),
            AlphaProfile::Polynomial(vec![1.0, 0.0, -2.0])
        );
        assert!(matches!(parse_alpha("const:x"), Err(Error::Config(_))));
        assert!(matches!(parse_alpha("spline:1"), Err(Error::Config(_))));
        assert!(parse_alpha("1.0").is_err());
        assert!(parse_alpha("table:/nonexistent/alpha.txt").is_err());
    }

    #[test]
    fn table_spec_reads_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alpha.txt");
        std::fs::write(&path, "# r alpha\n0 1\n0.5 2\n1 3\n").unwrap();
        let p = parse_alpha(&format!("table:{}", path.display())).unwrap();
        assert!((p.eval(0.25) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn ell_specs() {
        assert_eq!(parse_ells("5").unwrap(), vec![5]);
        assert_eq!(parse_ells("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_ells("40, 10,20,10").unwrap(), vec![10, 20, 40]);
        assert_eq!(parse_ells("1..2,7").unwrap(), vec![1, 2, 7]);
        assert!(parse_ells("6..3").is_err());
        assert!(parse_ells("-1").is_err());
        assert!(parse_ells("").is_err());
        assert!(parse_ells("200000").is_err());
    }

    #[test]
    fn config_text() {
        let pairs = parse_config("# study\nell = 5\n\nalpha=const:1.0  # inline\nmesh_list = 1,2\n").unwrap();
        assert_eq!(
            pairs,
            vec![
                ("ell".into(), "5".into()),
                ("alpha".into(), "const:1.0".into()),
                ("mesh-list".into(), "1,2".into())
            ]
        );
        assert!(parse_config("ell 5").is_err());
        assert!(parse_config("e ll = 5").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_usize_list("4, 8").unwrap(), vec![4, 8]);
        assert!(parse_usize_list("").is_err());
        assert!(parse_usize_list("4,x").is_err());
        assert_eq!(parse_f64_list("").unwrap(), Vec::<f64>::new());
        assert!(parse_f64("inf").is_err());
    }

    proptest! {
        #[test]
        fn range_roundtrip(a in 0u32..500, len in 0u32..50) {
            let v = parse_ells(&format!("{}..{}", a, a + len)).unwrap();
            prop_assert_eq!(v.len() as u32, len + 1);
            prop_assert_eq!(v[0], a);
        }
    }
}
