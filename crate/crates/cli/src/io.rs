//! State files: `{"n": <int>, "amplitudes": [[re, im], ...]}` with exactly
//! `2^n` entries.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use sepcheck_core::PureState;

pub fn read_state(path: &Path) -> Result<PureState> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_state(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_state(text: &str) -> Result<PureState> {
    Ok(serde_json::from_str(text)?)
}

pub fn render_state(state: &PureState) -> String {
    let mut text = serde_json::to_string(state).expect("state serializes");
    text.push('\n');
    text
}

/// Writes to `path`, or stdout when `None`.
pub fn write_state(state: &PureState, path: Option<&Path>) -> Result<()> {
    let text = render_state(state);
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn parses_documented_shape() {
        let s = parse_state(r#"{"n": 1, "amplitudes": [[0.6, 0.0], [0.0, 0.8]]}"#).unwrap();
        assert_eq!(s.amplitudes()[1], Complex64::new(0.0, 0.8));
    }

    #[test]
    fn rejects_wrong_count_and_norm() {
        let err = parse_state(r#"{"n": 2, "amplitudes": [[1,0],[0,0],[0,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("expected 4 amplitudes"), "{err}");
        assert!(parse_state(r#"{"n": 1, "amplitudes": [[1,0],[1,0]]}"#).is_err());
        assert!(parse_state(r#"{"n": 1, "amplitudes": [[1,0,0],[0,0]]}"#).is_err());
        assert!(parse_state(r#"{"amplitudes": [[1,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn round_trips_exactly() {
        let s = sepcheck_core::random_structured_state(&[2, 1], 9, None).unwrap();
        assert_eq!(parse_state(&render_state(&s)).unwrap(), s);
    }
}
