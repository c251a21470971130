//! Region-map serialization: run-length encoding with LEB128 run lengths.
//!
//! Runs alternate labels starting with static; a leading zero-length run is
//! emitted when the mask starts dynamic. Zero-length runs anywhere else are
//! rejected on decode, as is any run total that disagrees with the clip
//! dimensions.

use crate::motion_analysis::{Region, RegionMap};

/// Append an unsigned LEB128 varint.
fn push_varint(out: &mut Vec<u8>, mut value: u64) {
    loop {
        let byte = (value & 0x7f) as u8;
        value >>= 7;
        if value == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Decode one unsigned LEB128 varint, advancing `pos`.
fn read_varint(bytes: &[u8], pos: &mut usize) -> Result<u64, MapDecodeError> {
    let mut value = 0u64;
    let mut shift = 0u32;
    loop {
        let byte = *bytes.get(*pos).ok_or(MapDecodeError::Truncated)?;
        *pos += 1;
        if shift >= 63 && byte > 1 {
            return Err(MapDecodeError::Overflow);
        }
        value |= ((byte & 0x7f) as u64) << shift;
        if byte & 0x80 == 0 {
            return Ok(value);
        }
        shift += 7;
        if shift > 63 {
            return Err(MapDecodeError::Overflow);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDecodeError {
    Truncated,
    Overflow,
    ZeroRun,
    WrongTotal { expected: u64, actual: u64 },
    TrailingBytes,
}

impl std::fmt::Display for MapDecodeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapDecodeError::Truncated => write!(f, "serialized map ends mid-varint"),
            MapDecodeError::Overflow => write!(f, "run length overflows 64 bits"),
            MapDecodeError::ZeroRun => write!(f, "zero-length run after the first"),
            MapDecodeError::WrongTotal { expected, actual } => write!(
                f,
                "runs cover {actual} pixels, clip has {expected}"
            ),
            MapDecodeError::TrailingBytes => write!(f, "trailing bytes after final run"),
        }
    }
}

/// Serialize a region map as alternating-label RLE.
pub fn encode_region_map(map: &RegionMap) -> Vec<u8> {
    let mut out = Vec::new();
    let mask = map.mask();
    if mask.is_empty() {
        return out;
    }
    if mask[0] == Region::Dynamic {
        push_varint(&mut out, 0);
    }
    let mut run_label = mask[0];
    let mut run_len = 0u64;
    for &r in mask {
        if r == run_label {
            run_len += 1;
        } else {
            push_varint(&mut out, run_len);
            run_label = r;
            run_len = 1;
        }
    }
    push_varint(&mut out, run_len);
    out
}

/// Decode an RLE region map for a clip of the given dimensions.
pub fn decode_region_map(
    bytes: &[u8],
    width: u32,
    height: u32,
    frame_count: u32,
) -> Result<RegionMap, MapDecodeError> {
    let expected = width as u64 * height as u64 * frame_count as u64;
    let mut mask = Vec::with_capacity(expected as usize);
    let mut pos = 0usize;
    let mut label = Region::Static;
    let mut first = true;
    while (mask.len() as u64) < expected {
        let run = read_varint(bytes, &mut pos)?;
        if run == 0 && !first {
            return Err(MapDecodeError::ZeroRun);
        }
        first = false;
        let total = mask.len() as u64 + run;
        if total > expected {
            return Err(MapDecodeError::WrongTotal {
                expected,
                actual: total,
            });
        }
        mask.extend(std::iter::repeat_n(label, run as usize));
        label = match label {
            Region::Static => Region::Dynamic,
            Region::Dynamic => Region::Static,
        };
    }
    if pos != bytes.len() {
        return Err(MapDecodeError::TrailingBytes);
    }
    Ok(RegionMap::from_mask(width, height, frame_count, mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map_of(mask: Vec<Region>, width: u32) -> RegionMap {
        let height = mask.len() as u32 / width;
        RegionMap::from_mask(width, height, 1, mask)
    }

    #[test]
    fn all_static_is_one_run() {
        let map = map_of(vec![Region::Static; 10], 5);
        assert_eq!(encode_region_map(&map), vec![10]);
    }

    #[test]
    fn leading_dynamic_gets_zero_run() {
        use Region::{Dynamic as D, Static as S};
        let map = map_of(vec![D, D, S, S, S, D], 6);
        assert_eq!(encode_region_map(&map), vec![0, 2, 3, 1]);
    }

    #[test]
    fn roundtrip_alternating() {
        use Region::{Dynamic as D, Static as S};
        let mask = vec![S, D, S, D, S, D, S, D];
        let map = map_of(mask, 4);
        let bytes = encode_region_map(&map);
        let back = decode_region_map(&bytes, 4, 2, 1).unwrap();
        assert_eq!(back, map);
    }

    #[test]
    fn long_runs_use_multibyte_varints() {
        let map = RegionMap::from_mask(100, 10, 1, vec![Region::Static; 1000]);
        let bytes = encode_region_map(&map);
        assert_eq!(bytes, vec![0xe8, 0x07]); // 1000 = 0b111_1101000
        assert_eq!(decode_region_map(&bytes, 100, 10, 1).unwrap(), map);
    }

    #[test]
    fn wrong_total_rejected() {
        let err = decode_region_map(&[9], 2, 2, 1).unwrap_err();
        assert!(matches!(err, MapDecodeError::WrongTotal { .. }));
    }

    #[test]
    fn short_total_rejected() {
        // Runs sum to 3 but the clip has 4 pixels and bytes run out.
        let err = decode_region_map(&[2, 1], 2, 2, 1).unwrap_err();
        assert_eq!(err, MapDecodeError::Truncated);
    }

    #[test]
    fn mid_stream_zero_run_rejected() {
        let err = decode_region_map(&[2, 0, 2], 2, 2, 1).unwrap_err();
        assert_eq!(err, MapDecodeError::ZeroRun);
    }

    #[test]
    fn trailing_bytes_rejected() {
        let err = decode_region_map(&[4, 7], 2, 2, 1).unwrap_err();
        assert_eq!(err, MapDecodeError::TrailingBytes);
    }
}
