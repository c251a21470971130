//! The embedded stego header: 23 fixed bytes followed by the serialized
//! region map, CRC-protected so a wrong key is detected at decode time.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "SMC1"
//!      4     1  version (1)
//!      5     1  detection method code
//!      6     1  flags: bit0 static payload present, bit1 dynamic present
//!      7     4  static payload length  (LE)
//!     11     4  dynamic payload length (LE)
//!     15     4  serialized map length  (LE)
//!     19     4  CRC-32 over bytes 0..19 and the plaintext map (LE)
//! ```

use crate::motion_analysis::DetectionMethod;

pub const HEADER_MAGIC: [u8; 4] = *b"SMC1";
pub const HEADER_VERSION: u8 = 1;
/// Fixed header length in bytes.
pub const HEADER_FIXED_LEN: usize = 23;

pub const FLAG_STATIC: u8 = 0b01;
pub const FLAG_DYNAMIC: u8 = 0b10;

/// Embedded metadata record that makes blind extraction possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoHeader {
    pub method: DetectionMethod,
    pub flags: u8,
    pub static_len: u32,
    pub dynamic_len: u32,
    pub map_len: u32,
}

impl StegoHeader {
    pub fn static_present(&self) -> bool {
        self.flags & FLAG_STATIC != 0
    }

    pub fn dynamic_present(&self) -> bool {
        self.flags & FLAG_DYNAMIC != 0
    }

    /// Fixed fields without the CRC: bytes 0..19.
    fn encode_prefix(&self) -> [u8; 19] {
        let mut out = [0u8; 19];
        out[0..4].copy_from_slice(&HEADER_MAGIC);
        out[4] = HEADER_VERSION;
        out[5] = self.method.code();
        out[6] = self.flags;
        out[7..11].copy_from_slice(&self.static_len.to_le_bytes());
        out[11..15].copy_from_slice(&self.dynamic_len.to_le_bytes());
        out[15..19].copy_from_slice(&self.map_len.to_le_bytes());
        out
    }

    /// Serialize header plus map, CRC filled in.
    pub fn encode_with_map(&self, map_bytes: &[u8]) -> Vec<u8> {
        debug_assert_eq!(map_bytes.len() as u32, self.map_len);
        let prefix = self.encode_prefix();
        let mut crc = Crc32::new();
        crc.update(&prefix);
        crc.update(map_bytes);
        let mut out = Vec::with_capacity(HEADER_FIXED_LEN + map_bytes.len());
        out.extend_from_slice(&prefix);
        out.extend_from_slice(&crc.finish().to_le_bytes());
        out.extend_from_slice(map_bytes);
        out
    }

    /// CRC of this header's prefix plus the given map bytes.
    pub fn expected_crc(&self, map_bytes: &[u8]) -> u32 {
        let mut crc = Crc32::new();
        crc.update(&self.encode_prefix());
        crc.update(map_bytes);
        crc.finish()
    }
}

/// Raw fixed-header fields before validation; produced by the extractor.
#[derive(Debug, Clone, Copy)]
pub struct RawHeader {
    pub magic: [u8; 4],
    pub version: u8,
    pub method_code: u8,
    pub flags: u8,
    pub static_len: u32,
    pub dynamic_len: u32,
    pub map_len: u32,
    pub crc: u32,
}

impl RawHeader {
    pub fn parse(bytes: &[u8; HEADER_FIXED_LEN]) -> Self {
        RawHeader {
            magic: [bytes[0], bytes[1], bytes[2], bytes[3]],
            version: bytes[4],
            method_code: bytes[5],
            flags: bytes[6],
            static_len: u32::from_le_bytes(bytes[7..11].try_into().unwrap()),
            dynamic_len: u32::from_le_bytes(bytes[11..15].try_into().unwrap()),
            map_len: u32::from_le_bytes(bytes[15..19].try_into().unwrap()),
            crc: u32::from_le_bytes(bytes[19..23].try_into().unwrap()),
        }
    }
}

const CRC_POLY: u32 = 0xEDB88320;

const fn build_crc_table() -> [u32; 256] {
    let mut table = [0u32; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = i as u32;
        let mut bit = 0;
        while bit < 8 {
            crc = if crc & 1 != 0 {
                (crc >> 1) ^ CRC_POLY
            } else {
                crc >> 1
            };
            bit += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

static CRC_TABLE: [u32; 256] = build_crc_table();

/// Incremental reflected CRC-32 (polynomial 0xEDB88320).
pub struct Crc32 {
    state: u32,
}

impl Crc32 {
    pub fn new() -> Self {
        Crc32 { state: 0xFFFFFFFF }
    }

    pub fn update(&mut self, data: &[u8]) {
        for &byte in data {
            let idx = ((self.state ^ byte as u32) & 0xFF) as usize;
            self.state = (self.state >> 8) ^ CRC_TABLE[idx];
        }
    }

    pub fn finish(self) -> u32 {
        !self.state
    }
}

impl Default for Crc32 {
    fn default() -> Self {
        Crc32::new()
    }
}

/// One-shot CRC-32.
pub fn crc32(data: &[u8]) -> u32 {
    let mut crc = Crc32::new();
    crc.update(data);
    crc.finish()
}
