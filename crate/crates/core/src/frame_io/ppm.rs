//! Binary PPM (P6) codec, plus a PGM (P5) writer for diagnostic masks.

use super::{CodecError, Frame};

/// Parse a binary PPM. Header comments (`#` to end of line) are allowed
/// between tokens; only maxval 255 is accepted.
pub fn read_ppm(bytes: &[u8]) -> Result<Frame, CodecError> {
    let mut pos = 0usize;
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err(CodecError::MalformedHeader(
            "expected magic \"P6\"".to_string(),
        ));
    }
    pos += 2;

    let width = read_header_number(bytes, &mut pos)?;
    let height = read_header_number(bytes, &mut pos)?;
    let maxval = read_header_number(bytes, &mut pos)?;
    if maxval != 255 {
        return Err(CodecError::UnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(CodecError::MalformedHeader(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }

    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => {
            return Err(CodecError::MalformedHeader(
                "missing whitespace after maxval".to_string(),
            ))
        }
    }

    let expected = width as usize * height as usize * 3;
    let available = bytes.len() - pos;
    if available < expected {
        return Err(CodecError::TruncatedData {
            expected,
            actual: available,
        });
    }
    Frame::new(width, height, bytes[pos..pos + expected].to_vec())
}

/// Canonical binary PPM: `P6\n<w> <h>\n255\n` followed by the raw raster.
pub fn write_ppm(frame: &Frame) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", frame.width(), frame.height()).into_bytes();
    out.extend_from_slice(frame.data());
    out
}

/// Binary PGM with one byte per pixel, used for region-map mask export.
pub fn write_pgm(width: u32, height: u32, gray: &[u8]) -> Vec<u8> {
    debug_assert_eq!(gray.len(), width as usize * height as usize);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(gray);
    out
}

/// Skip whitespace and `#` comments, then parse one decimal token.
fn read_header_number(bytes: &[u8], pos: &mut usize) -> Result<u32, CodecError> {
    loop {
        match bytes.get(*pos) {
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(b'#') => {
                while let Some(&b) = bytes.get(*pos) {
                    *pos += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            _ => break,
        }
    }
    let start = *pos;
    while matches!(bytes.get(*pos), Some(b) if b.is_ascii_digit()) {
        *pos += 1;
    }
    if *pos == start {
        return Err(CodecError::MalformedHeader(
            "expected a decimal header token".to_string(),
        ));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse::<u32>().ok())
        .ok_or_else(|| CodecError::MalformedHeader("header token out of range".to_string()))
}
