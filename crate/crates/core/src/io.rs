//! Window file format: `{"offset": int, "coeffs": [[re, im], ...]}`.
//! Writers trim zeros (construction already does); readers validate that
//! every entry is finite.

use num_complex::Complex;
use serde::Deserialize;

use crate::error::{GaborError, Result};
use crate::sequences::FiniteSequence;

#[derive(Deserialize)]
struct WindowFile {
    offset: i64,
    coeffs: Vec<[f64; 2]>,
}

/// Parses the window file format from a JSON string.
pub fn parse_window(text: &str) -> Result<FiniteSequence<f64>> {
    let raw: WindowFile =
        serde_json::from_str(text).map_err(|e| GaborError::InvalidWindow(e.to_string()))?;
    for (i, [re, im]) in raw.coeffs.iter().enumerate() {
        if !re.is_finite() || !im.is_finite() {
            return Err(GaborError::InvalidWindow(format!(
                "non-finite coefficient at position {i}: [{re}, {im}]"
            )));
        }
    }
    Ok(FiniteSequence::new(
        raw.offset,
        raw.coeffs.iter().map(|&[re, im]| Complex::new(re, im)).collect(),
    ))
}

/// Serializes a window to the file format.
pub fn window_to_string(g: &FiniteSequence<f64>) -> String {
    serde_json::to_string(g).expect("window serialization cannot fail")
}

pub fn read_window(path: &std::path::Path) -> Result<FiniteSequence<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GaborError::InvalidWindow(format!("{}: {e}", path.display())))?;
    parse_window(&text)
}

pub fn write_window(path: &std::path::Path, g: &FiniteSequence<f64>) -> Result<()> {
    std::fs::write(path, window_to_string(g))
        .map_err(|e| GaborError::InvalidWindow(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = FiniteSequence::new(-2, vec![Complex::new(1.0, -0.5), Complex::new(0.0, 2.0)]);
        let s = window_to_string(&g);
        assert_eq!(parse_window(&s).unwrap(), g);
    }

    #[test]
    fn reader_trims_zeros() {
        let g = parse_window(r#"{"offset": 3, "coeffs": [[0,0],[1,0],[0,0]]}"#).unwrap();
        assert_eq!(g.offset(), 4);
        assert_eq!(g.support_len(), 1);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(parse_window(r#"{"offset": 0, "coeffs": [[1e999,0]]}"#).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_window("not json").is_err());
        assert!(parse_window(r#"{"coeffs": []}"#).is_err());
    }
}
