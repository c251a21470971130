//! Payload embedding.
//!
//! A reserved pixel prefix carries the masked header and region map in byte
//! LSBs. The remaining pixels are split by the region map into a static
//! stream (whole-byte substitution: one masked payload byte per channel,
//! three per pixel, at pixels selected by the arithmetic progression
//! `i + (j-1)*d`) and a dynamic stream (one masked payload bit per channel
//! byte via the +/-1 LSB parity rule). The three regions are disjoint, so
//! embedding never clobbers its own metadata.

mod header;
mod map_codec;

pub use header::{
    crc32, Crc32, RawHeader, StegoHeader, FLAG_DYNAMIC, FLAG_STATIC, HEADER_FIXED_LEN,
    HEADER_MAGIC, HEADER_VERSION,
};
pub use map_codec::{decode_region_map, encode_region_map, MapDecodeError};

use thiserror::Error;

use crate::frame_io::Clip;
use crate::keying::{derive_key_material, KeyMaterial};
use crate::motion_analysis::{analyze, AnalysisParams, Region, RegionMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("position {position} exceeds limit {limit} in the arithmetic progression")]
    OutOfRange { position: u64, limit: u64 },
    #[error("clip too small: header and region map need {needed_bits} LSB slots, clip has {available_bits}")]
    ClipTooSmall {
        needed_bits: u64,
        available_bits: u64,
    },
    #[error("Secret Data size is more than the static capacity: {needed} bytes > {available}")]
    StaticCapacityExceeded { needed: u64, available: u64 },
    #[error("dynamic payload needs {needed_bits} slots, capacity is {available_bits}")]
    DynamicCapacityExceeded {
        needed_bits: u64,
        available_bits: u64,
    },
    #[error("nothing to embed: no payload supplied")]
    NothingToEmbed,
}

/// Positions `i + (j-1)*d` for `j = 1..=count`, all within `limit` (1-based).
pub fn ap_positions(
    start_i: u64,
    step_d: u64,
    count: u64,
    limit: u64,
) -> Result<Vec<u64>, EmbedError> {
    debug_assert!(start_i >= 1 && step_d >= 1);
    if count == 0 {
        return Ok(Vec::new());
    }
    let last = start_i as u128 + (count as u128 - 1) * step_d as u128;
    if last > limit as u128 {
        return Err(EmbedError::OutOfRange {
            position: last.min(u64::MAX as u128) as u64,
            limit,
        });
    }
    Ok((0..count).map(|j| start_i + j * step_d).collect())
}

/// Static payload bytes a stream of `static_slot_count` pixels can hold
/// under progression `(start_i, step_d)`: three per selected pixel.
pub fn static_capacity_bytes(static_slot_count: u64, start_i: u64, step_d: u64) -> u64 {
    if static_slot_count < start_i {
        return 0;
    }
    3 * ((static_slot_count - start_i) / step_d + 1)
}

/// Slot layout for one (clip, region map, key) combination.
///
/// Pixel indices are global (frame-major, row-major); dynamic slots are
/// global byte indices (pixel * 3 + channel). Reserved pixels (the prefix
/// that holds the header and map) appear in neither list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedPlan {
    /// LSB slots consumed by header plus map: `(23 + map_len) * 8`.
    pub reserved_slot_count: u64,
    /// Whole pixels withheld from both payload streams.
    pub reserved_pixels: u64,
    pub static_slots: Vec<u64>,
    pub dynamic_slots: Vec<u64>,
    pub capacity_static_bytes: u64,
    pub capacity_dynamic_bits: u64,
}

/// Partition a clip's pixels into reserved/static/dynamic slots.
pub fn build_plan(
    map: &RegionMap,
    km: &KeyMaterial,
    map_bytes_len: usize,
) -> Result<EmbedPlan, EmbedError> {
    let total_pixels = map.total_pixels();
    let total_bytes = total_pixels * 3;
    let reserved_slot_count = (HEADER_FIXED_LEN as u64 + map_bytes_len as u64) * 8;
    if reserved_slot_count > total_bytes {
        return Err(EmbedError::ClipTooSmall {
            needed_bits: reserved_slot_count,
            available_bits: total_bytes,
        });
    }
    let reserved_pixels = reserved_slot_count.div_ceil(3);

    let mut static_slots = Vec::new();
    let mut dynamic_slots = Vec::new();
    for pixel in reserved_pixels..total_pixels {
        match map.region_at(pixel) {
            Region::Static => static_slots.push(pixel),
            Region::Dynamic => {
                let base = pixel * 3;
                dynamic_slots.extend([base, base + 1, base + 2]);
            }
        }
    }

    let capacity_static_bytes =
        static_capacity_bytes(static_slots.len() as u64, km.start_i, km.step_d);
    let capacity_dynamic_bits = dynamic_slots.len() as u64;
    Ok(EmbedPlan {
        reserved_slot_count,
        reserved_pixels,
        static_slots,
        dynamic_slots,
        capacity_static_bytes,
        capacity_dynamic_bits,
    })
}

/// Force a byte's LSB to `bit` by the +/-1 parity rule: even bytes move up,
/// odd bytes move down, so no value can wrap.
pub(crate) fn force_parity(value: u8, bit: u8) -> u8 {
    if value & 1 == bit {
        value
    } else if bit == 0 {
        value - 1
    } else {
        value + 1
    }
}

/// Iterate the bits of `bytes`, most significant first.
pub(crate) fn bits_msb_first(bytes: &[u8]) -> impl Iterator<Item = u8> + '_ {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |shift| (b >> shift) & 1))
}

/// Pack bits (MSB first) into bytes.
pub(crate) fn pack_bits_msb_first(bits: &[u8]) -> Vec<u8> {
    debug_assert_eq!(bits.len() % 8, 0);
    bits.chunks_exact(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &bit| (acc << 1) | bit))
        .collect()
}

/// Substitute masked payload bytes into AP-selected static pixels.
///
/// Consecutive masked triplets become the (R,G,B) of the selected pixels; a
/// final partial triplet writes only the channels it has. Everything else is
/// untouched.
pub fn embed_static(
    clip: &mut Clip,
    plan: &EmbedPlan,
    km: &KeyMaterial,
    payload: &[u8],
) -> Result<(), EmbedError> {
    if payload.len() as u64 > plan.capacity_static_bytes {
        return Err(EmbedError::StaticCapacityExceeded {
            needed: payload.len() as u64,
            available: plan.capacity_static_bytes,
        });
    }
    if payload.is_empty() {
        return Ok(());
    }
    let mut masked = payload.to_vec();
    km.static_stream().mask(&mut masked);

    let pixel_count = (masked.len() as u64).div_ceil(3);
    let positions = ap_positions(
        km.start_i,
        km.step_d,
        pixel_count,
        plan.static_slots.len() as u64,
    )?;
    for (chunk, &pos) in masked.chunks(3).zip(&positions) {
        let pixel = plan.static_slots[(pos - 1) as usize];
        clip.write_pixel_channels(pixel, chunk);
    }
    Ok(())
}

/// Write masked payload bits (MSB first) into dynamic slots via LSB parity.
pub fn embed_dynamic(
    clip: &mut Clip,
    plan: &EmbedPlan,
    km: &KeyMaterial,
    payload: &[u8],
) -> Result<(), EmbedError> {
    let needed_bits = payload.len() as u64 * 8;
    if needed_bits > plan.capacity_dynamic_bits {
        return Err(EmbedError::DynamicCapacityExceeded {
            needed_bits,
            available_bits: plan.capacity_dynamic_bits,
        });
    }
    let mut masked = payload.to_vec();
    km.dynamic_stream().mask(&mut masked);
    for (i, bit) in bits_msb_first(&masked).enumerate() {
        let slot = plan.dynamic_slots[i];
        clip.set_byte(slot, force_parity(clip.byte_at(slot), bit));
    }
    Ok(())
}

/// Write the masked header+map bits into the LSBs of the reserved byte
/// prefix, same parity rule as the dynamic scheme.
pub fn embed_header(
    clip: &mut Clip,
    header_plus_map: &[u8],
    km: &KeyMaterial,
) -> Result<(), EmbedError> {
    let needed_bits = header_plus_map.len() as u64 * 8;
    if needed_bits > clip.total_bytes() {
        return Err(EmbedError::ClipTooSmall {
            needed_bits,
            available_bits: clip.total_bytes(),
        });
    }
    let mut masked = header_plus_map.to_vec();
    km.header_stream().mask(&mut masked);
    for (i, bit) in bits_msb_first(&masked).enumerate() {
        let idx = i as u64;
        clip.set_byte(idx, force_parity(clip.byte_at(idx), bit));
    }
    Ok(())
}

/// What an embed run did: capacities, usage, and per-frame change counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedReport {
    pub method: crate::motion_analysis::DetectionMethod,
    pub capacity_static_bytes: u64,
    pub capacity_dynamic_bits: u64,
    pub static_bytes_used: u64,
    pub dynamic_bytes_used: u64,
    /// Header plus serialized map, in bytes.
    pub header_map_bytes: u64,
    pub reserved_pixels: u64,
    /// Pixels changed in each frame, cover vs stego.
    pub frame_pixel_changes: Vec<u64>,
}

impl EmbedReport {
    /// Stable machine-readable form, one `key=value` per line.
    pub fn to_kv_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method={}\n", method_name(self.method)));
        out.push_str(&format!(
            "capacity_static_bytes={}\n",
            self.capacity_static_bytes
        ));
        out.push_str(&format!(
            "capacity_dynamic_bits={}\n",
            self.capacity_dynamic_bits
        ));
        out.push_str(&format!("static_bytes_used={}\n", self.static_bytes_used));
        out.push_str(&format!("dynamic_bytes_used={}\n", self.dynamic_bytes_used));
        out.push_str(&format!("header_map_bytes={}\n", self.header_map_bytes));
        out.push_str(&format!("reserved_pixels={}\n", self.reserved_pixels));
        for (i, changes) in self.frame_pixel_changes.iter().enumerate() {
            out.push_str(&format!("frame_{i:04}_changed_pixels={changes}\n"));
        }
        out
    }
}

pub(crate) fn method_name(method: crate::motion_analysis::DetectionMethod) -> &'static str {
    use crate::motion_analysis::DetectionMethod::*;
    match method {
        PixelDiff => "pixel-diff",
        BlockLikelihood => "block",
        ColorHistogram => "histogram",
    }
}

/// Embed up to two payloads into a cover clip.
///
/// The static key drives the header, the region plan, and the static
/// payload; the dynamic payload uses the dynamic key when given, otherwise
/// the static key. The cover is never mutated.
pub fn embed(
    cover: &Clip,
    params: &AnalysisParams,
    static_payload: Option<&[u8]>,
    dynamic_payload: Option<&[u8]>,
    static_key: Option<&[u8]>,
    dynamic_key: Option<&[u8]>,
) -> Result<(Clip, EmbedReport), EmbedError> {
    if static_payload.is_none() && dynamic_payload.is_none() {
        return Err(EmbedError::NothingToEmbed);
    }
    let km_static = derive_key_material(static_key);
    let km_dynamic = derive_key_material(dynamic_key.or(static_key));

    let map = analyze(cover, params);
    let map_bytes = encode_region_map(&map);
    let plan = build_plan(&map, &km_static, map_bytes.len())?;

    let header = StegoHeader {
        method: params.method,
        flags: static_payload.map_or(0, |_| FLAG_STATIC)
            | dynamic_payload.map_or(0, |_| FLAG_DYNAMIC),
        static_len: static_payload.map_or(0, |p| p.len() as u32),
        dynamic_len: dynamic_payload.map_or(0, |p| p.len() as u32),
        map_len: map_bytes.len() as u32,
    };

    let mut stego = cover.clone();
    embed_header(&mut stego, &header.encode_with_map(&map_bytes), &km_static)?;
    if let Some(payload) = static_payload {
        embed_static(&mut stego, &plan, &km_static, payload)?;
    }
    if let Some(payload) = dynamic_payload {
        embed_dynamic(&mut stego, &plan, &km_dynamic, payload)?;
    }

    let frame_pixel_changes = cover
        .frames()
        .iter()
        .zip(stego.frames())
        .map(|(a, b)| {
            a.data()
                .chunks_exact(3)
                .zip(b.data().chunks_exact(3))
                .filter(|(x, y)| x != y)
                .count() as u64
        })
        .collect();

    let report = EmbedReport {
        method: params.method,
        capacity_static_bytes: plan.capacity_static_bytes,
        capacity_dynamic_bits: plan.capacity_dynamic_bits,
        static_bytes_used: header.static_len as u64,
        dynamic_bytes_used: header.dynamic_len as u64,
        header_map_bytes: HEADER_FIXED_LEN as u64 + map_bytes.len() as u64,
        reserved_pixels: plan.reserved_pixels,
        frame_pixel_changes,
    };
    Ok((stego, report))
}

/// Capacity of a cover under the given analysis parameters and key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityReport {
    pub method: crate::motion_analysis::DetectionMethod,
    pub capacity_static_bytes: u64,
    pub capacity_dynamic_bits: u64,
    pub header_map_bytes: u64,
    pub reserved_pixels: u64,
    /// Raw per-frame (static, dynamic) pixel counts from the region map.
    pub frame_region_counts: Vec<(u64, u64)>,
}

impl CapacityReport {
    pub fn to_kv_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method={}\n", method_name(self.method)));
        out.push_str(&format!(
            "capacity_static_bytes={}\n",
            self.capacity_static_bytes
        ));
        out.push_str(&format!(
            "capacity_dynamic_bits={}\n",
            self.capacity_dynamic_bits
        ));
        out.push_str(&format!(
            "capacity_dynamic_bytes={}\n",
            self.capacity_dynamic_bits / 8
        ));
        out.push_str(&format!("header_map_bytes={}\n", self.header_map_bytes));
        out.push_str(&format!("reserved_pixels={}\n", self.reserved_pixels));
        for (i, (s, d)) in self.frame_region_counts.iter().enumerate() {
            out.push_str(&format!("frame_{i:04}_static_pixels={s}\n"));
            out.push_str(&format!("frame_{i:04}_dynamic_pixels={d}\n"));
        }
        out
    }
}

/// Report how much payload a cover admits; payload-independent.
pub fn capacity(
    cover: &Clip,
    params: &AnalysisParams,
    key: Option<&[u8]>,
) -> Result<CapacityReport, EmbedError> {
    let km = derive_key_material(key);
    let map = analyze(cover, params);
    let map_bytes = encode_region_map(&map);
    let plan = build_plan(&map, &km, map_bytes.len())?;
    Ok(CapacityReport {
        method: params.method,
        capacity_static_bytes: plan.capacity_static_bytes,
        capacity_dynamic_bits: plan.capacity_dynamic_bits,
        header_map_bytes: HEADER_FIXED_LEN as u64 + map_bytes.len() as u64,
        reserved_pixels: plan.reserved_pixels,
        frame_region_counts: map.frame_region_counts(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame_io::{Fps, Frame};
    use crate::motion_analysis::DetectionMethod;

    fn solid_clip(w: u32, h: u32, frames: u32) -> Clip {
        let fs = (0..frames).map(|_| Frame::filled(w, h, [50, 60, 70])).collect();
        Clip::new(fs, Fps::default()).unwrap()
    }

    #[test]
    fn ap_matches_worked_example() {
        // i=5, d=3 places the first three pixels at 5, 8, 11.
        assert_eq!(ap_positions(5, 3, 3, u64::MAX).unwrap(), vec![5, 8, 11]);
    }

    #[test]
    fn ap_identity_progression() {
        assert_eq!(ap_positions(1, 1, 4, u64::MAX).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn ap_rejects_positions_beyond_limit() {
        // Positions 5, 8, 11 with limit 10: the third is out of range, and
        // enumeration shows at most two positions fit.
        let err = ap_positions(5, 3, 3, 10).unwrap_err();
        assert_eq!(
            err,
            EmbedError::OutOfRange {
                position: 11,
                limit: 10
            }
        );
        assert!(ap_positions(5, 3, 2, 10).is_ok());
        assert_eq!(static_capacity_bytes(10, 5, 3), 3 * 2);
    }

    #[test]
    fn ap_zero_count_is_empty_even_past_limit() {
        assert_eq!(ap_positions(100, 3, 0, 10).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn ap_differences_are_constant() {
        let positions = ap_positions(13, 5, 20, u64::MAX).unwrap();
        for pair in positions.windows(2) {
            assert_eq!(pair[1] - pair[0], 5);
        }
    }

    #[test]
    fn plan_capacity_on_all_static_frame() {
        // 10x10 all static, no key: map is one varint (100 -> 1 byte), so
        // (23+1)*8 = 192 reserved bits -> 64 reserved pixels, 36 usable.
        // AP(5,3) positions <= 36: 5,8,...,35 -> 11 pixels -> 33 bytes.
        let clip = solid_clip(10, 10, 1);
        let map = analyze(&clip, &AnalysisParams::default());
        let map_bytes = encode_region_map(&map);
        assert_eq!(map_bytes.len(), 1);
        let km = derive_key_material(None);
        let plan = build_plan(&map, &km, map_bytes.len()).unwrap();
        assert_eq!(plan.reserved_slot_count, 192);
        assert_eq!(plan.reserved_pixels, 64);
        assert_eq!(plan.static_slots.len(), 36);
        assert_eq!(plan.dynamic_slots.len(), 0);

        // Independent enumeration of admissible AP positions.
        let expected_pixels = (1..)
            .map(|j| 5 + (j - 1) * 3)
            .take_while(|p| *p <= 36u64)
            .count() as u64;
        assert_eq!(plan.capacity_static_bytes, 3 * expected_pixels);
        assert_eq!(plan.capacity_static_bytes, 33);
    }

    #[test]
    fn all_dynamic_map_has_zero_static_capacity() {
        let mask = vec![Region::Dynamic; 100];
        let map = RegionMap::from_mask(10, 10, 1, mask);
        let km = derive_key_material(None);
        let plan = build_plan(&map, &km, 1).unwrap();
        assert_eq!(plan.capacity_static_bytes, 0);
        assert_eq!(plan.static_slots.len(), 0);
        assert_eq!(
            plan.capacity_dynamic_bits,
            (100 - plan.reserved_pixels) * 3
        );
    }

    #[test]
    fn tiny_clip_cannot_hold_header() {
        let map = RegionMap::from_mask(1, 1, 1, vec![Region::Static]);
        let km = derive_key_material(None);
        assert!(matches!(
            build_plan(&map, &km, 0),
            Err(EmbedError::ClipTooSmall { .. })
        ));
    }

    #[test]
    fn force_parity_examples() {
        assert_eq!(force_parity(100, 1), 101);
        assert_eq!(force_parity(100, 0), 100);
        assert_eq!(force_parity(255, 0), 254);
        assert_eq!(force_parity(0, 1), 1);
        // +1 only ever applies to even values, -1 only to odd: no wraparound.
        for v in 0..=255u8 {
            for bit in 0..=1u8 {
                let out = force_parity(v, bit);
                assert_eq!(out & 1, bit);
                assert!(v.abs_diff(out) <= 1);
            }
        }
    }

    #[test]
    fn bit_packing_roundtrip() {
        let bytes = [0b1010_0011, 0xFF, 0x00, 0x5A];
        let bits: Vec<u8> = bits_msb_first(&bytes).collect();
        assert_eq!(bits.len(), 32);
        assert_eq!(&bits[..8], &[1, 0, 1, 0, 0, 0, 1, 1]);
        assert_eq!(pack_bits_msb_first(&bits), bytes);
    }

    #[test]
    fn embed_static_writes_masked_triplet_at_first_ap_pixel() {
        let clip = solid_clip(16, 16, 1);
        let map = analyze(&clip, &AnalysisParams::default());
        let map_bytes = encode_region_map(&map);
        let km = derive_key_material(None);
        let plan = build_plan(&map, &km, map_bytes.len()).unwrap();

        let payload = b"Hi!";
        let mut stego = clip.clone();
        embed_static(&mut stego, &plan, &km, payload).unwrap();

        // The pixel holds the keystream-masked bytes, with the plaintext
        // recoverable by reapplying the stream.
        let mut expected = payload.to_vec();
        km.static_stream().mask(&mut expected);
        let pixel = plan.static_slots[(km.start_i - 1) as usize];
        assert_eq!(stego.pixel_channels(pixel), expected[..]);

        // Every other pixel is untouched.
        let mut changed = 0;
        for p in 0..clip.total_pixels() {
            if stego.pixel_channels(p) != clip.pixel_channels(p) {
                changed += 1;
                assert_eq!(p, pixel);
            }
        }
        assert_eq!(changed, 1);
    }

    #[test]
    fn embed_static_empty_payload_changes_nothing() {
        let clip = solid_clip(16, 16, 1);
        let map = analyze(&clip, &AnalysisParams::default());
        let km = derive_key_material(None);
        let plan = build_plan(&map, &km, encode_region_map(&map).len()).unwrap();
        let mut stego = clip.clone();
        embed_static(&mut stego, &plan, &km, b"").unwrap();
        assert_eq!(stego, clip);
    }

    #[test]
    fn embed_static_over_capacity_reports_size_message() {
        let clip = solid_clip(10, 10, 1);
        let map = analyze(&clip, &AnalysisParams::default());
        let km = derive_key_material(None);
        let plan = build_plan(&map, &km, encode_region_map(&map).len()).unwrap();
        let payload = vec![0u8; plan.capacity_static_bytes as usize + 1];
        let mut stego = clip.clone();
        let err = embed_static(&mut stego, &plan, &km, &payload).unwrap_err();
        assert!(err.to_string().contains("Secret Data size is more"));
    }

    #[test]
    fn embed_dynamic_deltas_are_at_most_one() {
        let clip = solid_clip(8, 8, 2);
        let mask = vec![Region::Dynamic; 128];
        let map = RegionMap::from_mask(8, 8, 2, mask);
        let km = derive_key_material(Some(b"dyn"));
        let plan = build_plan(&map, &km, 2).unwrap();
        let payload = vec![0xA7u8; (plan.capacity_dynamic_bits / 8) as usize];
        let mut stego = clip.clone();
        embed_dynamic(&mut stego, &plan, &km, &payload).unwrap();
        for idx in 0..clip.total_bytes() {
            assert!(clip.byte_at(idx).abs_diff(stego.byte_at(idx)) <= 1);
        }
    }

    #[test]
    fn embed_requires_some_payload() {
        let clip = solid_clip(16, 16, 1);
        let err = embed(&clip, &AnalysisParams::default(), None, None, None, None).unwrap_err();
        assert_eq!(err, EmbedError::NothingToEmbed);
    }

    /// Two frames whose right half changes: static left, dynamic right.
    fn mixed_clip(w: u32, h: u32) -> Clip {
        let f0 = Frame::filled(w, h, [50, 60, 70]);
        let mut f1 = f0.clone();
        for y in 0..h {
            for x in w / 2..w {
                f1.set_pixel(x, y, [200, 10, 10]);
            }
        }
        Clip::new(vec![f0, f1], Fps::default()).unwrap()
    }

    #[test]
    fn embed_is_deterministic() {
        let clip = mixed_clip(16, 16);
        let params = AnalysisParams::default();
        let run = || {
            embed(
                &clip,
                &params,
                Some(b"static payload"),
                Some(b"dynamic payload"),
                Some(b"key"),
                None,
            )
            .unwrap()
        };
        let (stego1, report1) = run();
        let (stego2, report2) = run();
        assert_eq!(stego1, stego2);
        assert_eq!(report1, report2);
    }

    #[test]
    fn capacity_is_payload_independent_and_stable() {
        let clip = solid_clip(20, 20, 2);
        let params = AnalysisParams::with_method(DetectionMethod::BlockLikelihood);
        let a = capacity(&clip, &params, Some(b"k")).unwrap();
        let b = capacity(&clip, &params, Some(b"k")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn static_capacity_formula_spot_checks() {
        assert_eq!(static_capacity_bytes(100, 1, 1), 300);
        assert_eq!(static_capacity_bytes(4, 5, 3), 0);
        assert_eq!(static_capacity_bytes(5, 5, 3), 3);
        assert_eq!(static_capacity_bytes(36, 5, 3), 33);
    }
}
