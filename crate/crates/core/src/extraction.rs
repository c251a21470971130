//! Payload recovery: the reverse of embedding.
//!
//! The header and region map are read from the reserved LSB prefix and
//! validated (magic, version, CRC), the slot plan is rebuilt from the decoded
//! map with the same arithmetic the embedder used, and the payloads are read
//! back from their slots and unmasked. A wrong key scrambles the header
//! keystream and is caught at the magic or CRC check.

use thiserror::Error;

use crate::embedding::{
    build_plan, decode_region_map, pack_bits_msb_first, ap_positions, EmbedError, EmbedPlan,
    RawHeader, StegoHeader, HEADER_FIXED_LEN, HEADER_MAGIC, HEADER_VERSION,
};
use crate::frame_io::Clip;
use crate::keying::{derive_key_material, KeyMaterial};
use crate::motion_analysis::{DetectionMethod, RegionMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("bad magic: wrong key or not a stego clip")]
    BadMagic,
    #[error("unsupported stego format version {0}")]
    UnsupportedVersion(u8),
    #[error("header CRC mismatch: corruption or wrong key")]
    CrcMismatch,
    #[error("clip too small for the declared header and map ({needed_bits} LSB slots, clip has {available_bits})")]
    ClipTooSmall {
        needed_bits: u64,
        available_bits: u64,
    },
    #[error("unknown detection method code {0}")]
    InvalidMethod(u8),
    #[error("malformed region map: {0}")]
    MalformedMap(String),
    #[error("requested {requested} bytes but the plan admits {available}")]
    OutOfRange { requested: u64, available: u64 },
}

impl From<EmbedError> for ExtractError {
    fn from(err: EmbedError) -> Self {
        match err {
            EmbedError::ClipTooSmall {
                needed_bits,
                available_bits,
            } => ExtractError::ClipTooSmall {
                needed_bits,
                available_bits,
            },
            EmbedError::OutOfRange { position, limit } => ExtractError::OutOfRange {
                requested: position,
                available: limit,
            },
            EmbedError::StaticCapacityExceeded { needed, available } => ExtractError::OutOfRange {
                requested: needed,
                available,
            },
            EmbedError::DynamicCapacityExceeded {
                needed_bits,
                available_bits,
            } => ExtractError::OutOfRange {
                requested: needed_bits,
                available: available_bits,
            },
            EmbedError::NothingToEmbed => ExtractError::OutOfRange {
                requested: 0,
                available: 0,
            },
        }
    }
}

/// Everything recovered from a stego clip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractResult {
    pub static_payload: Vec<u8>,
    pub dynamic_payload: Vec<u8>,
    pub method: DetectionMethod,
    pub map: RegionMap,
}

/// Read `count` bytes' worth of LSBs starting at byte slot `start`.
fn read_lsb_bytes(clip: &Clip, start: u64, count: usize) -> Vec<u8> {
    let bits: Vec<u8> = (0..count as u64 * 8)
        .map(|i| clip.byte_at(start + i) & 1)
        .collect();
    pack_bits_msb_first(&bits)
}

/// Recover and validate the header and region map from the reserved prefix.
pub fn read_header(stego: &Clip, km: &KeyMaterial) -> Result<(StegoHeader, RegionMap), ExtractError> {
    let total_bytes = stego.total_bytes();
    let fixed_bits = HEADER_FIXED_LEN as u64 * 8;
    if fixed_bits > total_bytes {
        return Err(ExtractError::ClipTooSmall {
            needed_bits: fixed_bits,
            available_bits: total_bytes,
        });
    }

    let mut stream = km.header_stream();
    let mut fixed = read_lsb_bytes(stego, 0, HEADER_FIXED_LEN);
    stream.mask(&mut fixed);
    let raw = RawHeader::parse(&fixed.try_into().expect("fixed header length"));

    if raw.magic != HEADER_MAGIC {
        return Err(ExtractError::BadMagic);
    }
    if raw.version != HEADER_VERSION {
        return Err(ExtractError::UnsupportedVersion(raw.version));
    }

    let needed_bits = (HEADER_FIXED_LEN as u64 + raw.map_len as u64) * 8;
    if needed_bits > total_bytes {
        return Err(ExtractError::ClipTooSmall {
            needed_bits,
            available_bits: total_bytes,
        });
    }
    let mut map_bytes = read_lsb_bytes(stego, fixed_bits, raw.map_len as usize);
    stream.mask(&mut map_bytes);

    let method = DetectionMethod::from_code(raw.method_code)
        .ok_or(ExtractError::InvalidMethod(raw.method_code))?;
    let header = StegoHeader {
        method,
        flags: raw.flags,
        static_len: raw.static_len,
        dynamic_len: raw.dynamic_len,
        map_len: raw.map_len,
    };
    if header.expected_crc(&map_bytes) != raw.crc {
        return Err(ExtractError::CrcMismatch);
    }

    let map = decode_region_map(
        &map_bytes,
        stego.width(),
        stego.height(),
        stego.frame_count(),
    )
    .map_err(|e| ExtractError::MalformedMap(e.to_string()))?;
    Ok((header, map))
}

/// Read `length` static payload bytes from the AP-selected pixels.
pub fn extract_static(
    stego: &Clip,
    plan: &EmbedPlan,
    km: &KeyMaterial,
    length: u64,
) -> Result<Vec<u8>, ExtractError> {
    if length > plan.capacity_static_bytes {
        return Err(ExtractError::OutOfRange {
            requested: length,
            available: plan.capacity_static_bytes,
        });
    }
    if length == 0 {
        return Ok(Vec::new());
    }
    let pixel_count = length.div_ceil(3);
    let positions = ap_positions(
        km.start_i,
        km.step_d,
        pixel_count,
        plan.static_slots.len() as u64,
    )?;
    let mut payload = Vec::with_capacity(length as usize);
    for &pos in &positions {
        let pixel = plan.static_slots[(pos - 1) as usize];
        payload.extend_from_slice(&stego.pixel_channels(pixel));
    }
    payload.truncate(length as usize);
    km.static_stream().mask(&mut payload);
    Ok(payload)
}

/// Read `length` dynamic payload bytes from the dynamic slot parities.
pub fn extract_dynamic(
    stego: &Clip,
    plan: &EmbedPlan,
    km: &KeyMaterial,
    length: u64,
) -> Result<Vec<u8>, ExtractError> {
    let needed_bits = length * 8;
    if needed_bits > plan.capacity_dynamic_bits {
        return Err(ExtractError::OutOfRange {
            requested: needed_bits,
            available: plan.capacity_dynamic_bits,
        });
    }
    let bits: Vec<u8> = plan.dynamic_slots[..needed_bits as usize]
        .iter()
        .map(|&slot| stego.byte_at(slot) & 1)
        .collect();
    let mut payload = pack_bits_msb_first(&bits);
    km.dynamic_stream().mask(&mut payload);
    Ok(payload)
}

/// Full reverse pipeline: header, map, plan, then both payloads.
pub fn extract(
    stego: &Clip,
    static_key: Option<&[u8]>,
    dynamic_key: Option<&[u8]>,
) -> Result<ExtractResult, ExtractError> {
    let km_static = derive_key_material(static_key);
    let (header, map) = read_header(stego, &km_static)?;
    let plan = build_plan(&map, &km_static, header.map_len as usize)?;

    let static_payload = if header.static_present() {
        extract_static(stego, &plan, &km_static, header.static_len as u64)?
    } else {
        Vec::new()
    };
    let dynamic_payload = if header.dynamic_present() {
        let km_dynamic = derive_key_material(dynamic_key.or(static_key));
        extract_dynamic(stego, &plan, &km_dynamic, header.dynamic_len as u64)?
    } else {
        Vec::new()
    };
    Ok(ExtractResult {
        static_payload,
        dynamic_payload,
        method: header.method,
        map,
    })
}
