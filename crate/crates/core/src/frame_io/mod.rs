//! Carrier clip I/O: the in-memory `Frame`/`Clip` model plus bit-exact
//! codecs for PPM P6 frame sequences and uncompressed RGB24 RIFF/AVI.
//!
//! Both embedding schemes operate on exact pixel bytes, so only lossless
//! containers are supported. Round trips are byte identity on the in-memory
//! model: `read(write(x)) == x`.

mod avi;
mod dir;
mod ppm;

pub use avi::{frame_from_dib, frame_to_dib, read_avi, write_avi};
pub use dir::{read_frame_dir, read_frames, write_frame_dir};
pub use ppm::{read_ppm, write_pgm, write_ppm};

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported maxval {0}, only 255 is supported")]
    UnsupportedMaxval(u32),
    #[error("truncated pixel data: expected {expected} bytes, got {actual}")]
    TruncatedData { expected: usize, actual: usize },
    #[error("not a RIFF/AVI file")]
    NotRiff,
    #[error("unsupported codec: {0}")]
    UnsupportedCodec(String),
    #[error("truncated chunk{}", .0.as_ref().map(|c| format!(" '{c}'")).unwrap_or_default())]
    TruncatedChunk(Option<String>),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("clip contains no frames")]
    EmptyClip,
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// One RGB8 image: the primary embedding unit.
///
/// `data` is row-major top-to-bottom, channel order R,G,B, exactly
/// `width * height * 3` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl Frame {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self, CodecError> {
        if width == 0 || height == 0 {
            return Err(CodecError::DimensionMismatch(format!(
                "frame dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        let expected = (width as usize)
            .checked_mul(height as usize)
            .and_then(|p| p.checked_mul(3))
            .ok_or_else(|| {
                CodecError::DimensionMismatch(format!("frame {width}x{height} overflows"))
            })?;
        if data.len() != expected {
            return Err(CodecError::DimensionMismatch(format!(
                "frame {width}x{height} needs {expected} data bytes, got {}",
                data.len()
            )));
        }
        Ok(Frame {
            width,
            height,
            data,
        })
    }

    /// Frame filled with one solid color.
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        let px = (width as usize) * (height as usize);
        let mut data = Vec::with_capacity(px * 3);
        for _ in 0..px {
            data.extend_from_slice(&rgb);
        }
        Frame::new(width, height, data).expect("solid frame is well-formed")
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = self.pixel_offset(x, y);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let i = self.pixel_offset(x, y);
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    fn pixel_offset(&self, x: u32, y: u32) -> usize {
        debug_assert!(x < self.width && y < self.height);
        ((y as usize) * (self.width as usize) + (x as usize)) * 3
    }
}

/// Exact frame rate as a reduced positive rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fps {
    num: u32,
    den: u32,
}

impl Fps {
    pub fn new(num: u32, den: u32) -> Result<Self, CodecError> {
        if num == 0 || den == 0 {
            return Err(CodecError::DimensionMismatch(format!(
                "frame rate must be positive, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(Fps {
            num: num / g,
            den: den / g,
        })
    }

    pub fn whole(fps: u32) -> Result<Self, CodecError> {
        Fps::new(fps, 1)
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Rounded microseconds per frame, at least 1.
    pub fn micros_per_frame(&self) -> u32 {
        let micros = (1_000_000u64 * self.den as u64 + self.num as u64 / 2) / self.num as u64;
        micros.clamp(1, u32::MAX as u64) as u32
    }
}

impl Default for Fps {
    fn default() -> Self {
        Fps { num: 30, den: 1 }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Ordered frame sequence plus frame rate: the carrier.
///
/// All frames share identical dimensions and the sequence is never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clip {
    frames: Vec<Frame>,
    fps: Fps,
}

impl Clip {
    pub fn new(frames: Vec<Frame>, fps: Fps) -> Result<Self, CodecError> {
        let first = frames.first().ok_or(CodecError::EmptyClip)?;
        let (w, h) = (first.width(), first.height());
        for (i, f) in frames.iter().enumerate() {
            if f.width() != w || f.height() != h {
                return Err(CodecError::DimensionMismatch(format!(
                    "frame {i} is {}x{}, expected {w}x{h}",
                    f.width(),
                    f.height()
                )));
            }
        }
        Ok(Clip { frames, fps })
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn fps(&self) -> Fps {
        self.fps
    }

    pub fn width(&self) -> u32 {
        self.frames[0].width()
    }

    pub fn height(&self) -> u32 {
        self.frames[0].height()
    }

    pub fn frame_count(&self) -> u32 {
        self.frames.len() as u32
    }

    pub fn pixels_per_frame(&self) -> u64 {
        self.width() as u64 * self.height() as u64
    }

    pub fn total_pixels(&self) -> u64 {
        self.pixels_per_frame() * self.frames.len() as u64
    }

    pub fn total_bytes(&self) -> u64 {
        self.total_pixels() * 3
    }

    /// Byte at a global index into the concatenated frame data
    /// (frame-major, row-major, R,G,B channel order).
    pub fn byte_at(&self, index: u64) -> u8 {
        let per_frame = self.pixels_per_frame() * 3;
        let frame = (index / per_frame) as usize;
        let offset = (index % per_frame) as usize;
        self.frames[frame].data()[offset]
    }

    pub fn set_byte(&mut self, index: u64, value: u8) {
        let per_frame = self.pixels_per_frame() * 3;
        let frame = (index / per_frame) as usize;
        let offset = (index % per_frame) as usize;
        self.frames[frame].data_mut()[offset] = value;
    }

    /// Write up to three channel bytes starting at a global pixel index.
    pub fn write_pixel_channels(&mut self, pixel_index: u64, channels: &[u8]) {
        debug_assert!(channels.len() <= 3);
        let base = pixel_index * 3;
        for (i, &b) in channels.iter().enumerate() {
            self.set_byte(base + i as u64, b);
        }
    }

    /// Read the three channel bytes of a global pixel index.
    pub fn pixel_channels(&self, pixel_index: u64) -> [u8; 3] {
        let base = pixel_index * 3;
        [
            self.byte_at(base),
            self.byte_at(base + 1),
            self.byte_at(base + 2),
        ]
    }
}
