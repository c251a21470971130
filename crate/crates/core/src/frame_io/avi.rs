//! Minimal uncompressed RGB24 RIFF/AVI reader and writer.
//!
//! Layout written (all integers little-endian):
//!
//! ```text
//! RIFF 'AVI '
//! ├── LIST 'hdrl'
//! │   ├── avih            main header
//! │   └── LIST 'strl'
//! │       ├── strh        one 'vids' stream, handler 'DIB '
//! │       └── strf        BITMAPINFOHEADER, BI_RGB 24bpp
//! ├── LIST 'movi'
//! │   └── 00db            one chunk per frame, bottom-up padded BGR rows
//! └── idx1
//! ```
//!
//! Frame chunks use the standard DIB layout: rows bottom-up, 4-byte aligned,
//! B,G,R channel order. The in-memory `Frame` is top-down unpadded R,G,B.

use super::{Clip, CodecError, Fps, Frame};

const AVIF_HASINDEX: u32 = 0x10;
const AVIIF_KEYFRAME: u32 = 0x10;

const AVIH_LEN: u32 = 56;
const STRH_LEN: u32 = 56;
const STRF_LEN: u32 = 40;

/// Row stride of a 24bpp DIB: width*3 rounded up to a multiple of 4.
fn dib_stride(width: u32) -> usize {
    ((width as usize * 3) + 3) & !3
}

/// Convert a frame to bottom-up, padded, BGR DIB rows.
pub fn frame_to_dib(frame: &Frame) -> Vec<u8> {
    let w = frame.width() as usize;
    let h = frame.height() as usize;
    let stride = dib_stride(frame.width());
    let mut out = vec![0u8; stride * h];
    let src = frame.data();
    for y in 0..h {
        let src_row = &src[y * w * 3..(y + 1) * w * 3];
        let dst_row = &mut out[(h - 1 - y) * stride..(h - 1 - y) * stride + w * 3];
        for x in 0..w {
            dst_row[x * 3] = src_row[x * 3 + 2];
            dst_row[x * 3 + 1] = src_row[x * 3 + 1];
            dst_row[x * 3 + 2] = src_row[x * 3];
        }
    }
    out
}

/// Convert bottom-up padded BGR DIB rows back to a frame.
pub fn frame_from_dib(width: u32, height: u32, dib: &[u8]) -> Result<Frame, CodecError> {
    let w = width as usize;
    let h = height as usize;
    let stride = dib_stride(width);
    if dib.len() != stride * h {
        return Err(CodecError::DimensionMismatch(format!(
            "frame chunk is {} bytes, expected {} for {width}x{height}",
            dib.len(),
            stride * h
        )));
    }
    let mut data = vec![0u8; w * h * 3];
    for y in 0..h {
        let src_row = &dib[(h - 1 - y) * stride..(h - 1 - y) * stride + w * 3];
        let dst_row = &mut data[y * w * 3..(y + 1) * w * 3];
        for x in 0..w {
            dst_row[x * 3] = src_row[x * 3 + 2];
            dst_row[x * 3 + 1] = src_row[x * 3 + 1];
            dst_row[x * 3 + 2] = src_row[x * 3];
        }
    }
    Frame::new(width, height, data)
}

struct Writer {
    out: Vec<u8>,
}

impl Writer {
    fn u16(&mut self, v: u16) {
        self.out.extend_from_slice(&v.to_le_bytes());
    }

    fn u32(&mut self, v: u32) {
        self.out.extend_from_slice(&v.to_le_bytes());
    }

    fn tag(&mut self, t: &[u8; 4]) {
        self.out.extend_from_slice(t);
    }
}

/// Serialize a clip as uncompressed RGB24 AVI. Output is deterministic:
/// equal clips produce equal bytes.
pub fn write_avi(clip: &Clip) -> Vec<u8> {
    let width = clip.width();
    let height = clip.height();
    let frames = clip.frames().len() as u32;
    let stride = dib_stride(width);
    let dib_len64 = stride as u64 * height as u64;
    let fps = clip.fps();

    let strl_len: u32 = 4 + (8 + STRH_LEN) + (8 + STRF_LEN);
    let hdrl_len: u32 = 4 + (8 + AVIH_LEN) + (8 + strl_len);
    let chunk_pad = (dib_len64 % 2) as u32;
    let movi_len64 = 4 + frames as u64 * (8 + dib_len64 + chunk_pad as u64);
    let idx1_len: u32 = frames * 16;
    let riff_len64 = 4 + (8 + hdrl_len as u64) + (8 + movi_len64) + (8 + idx1_len as u64);
    assert!(
        riff_len64 <= u32::MAX as u64,
        "AVI files larger than 4 GiB are not supported"
    );
    let dib_len = dib_len64 as u32;
    let movi_len = movi_len64 as u32;
    let riff_len = riff_len64 as u32;

    let max_bytes_per_sec = (dib_len as u64 * fps.num() as u64)
        .div_ceil(fps.den() as u64)
        .min(u32::MAX as u64) as u32;

    let mut w = Writer {
        out: Vec::with_capacity(riff_len as usize + 8),
    };
    w.tag(b"RIFF");
    w.u32(riff_len);
    w.tag(b"AVI ");

    w.tag(b"LIST");
    w.u32(hdrl_len);
    w.tag(b"hdrl");

    w.tag(b"avih");
    w.u32(AVIH_LEN);
    w.u32(fps.micros_per_frame());
    w.u32(max_bytes_per_sec);
    w.u32(0); // padding granularity
    w.u32(AVIF_HASINDEX);
    w.u32(frames);
    w.u32(0); // initial frames
    w.u32(1); // stream count
    w.u32(dib_len); // suggested buffer size
    w.u32(width);
    w.u32(height);
    for _ in 0..4 {
        w.u32(0); // reserved
    }

    w.tag(b"LIST");
    w.u32(strl_len);
    w.tag(b"strl");

    w.tag(b"strh");
    w.u32(STRH_LEN);
    w.tag(b"vids");
    w.tag(b"DIB ");
    w.u32(0); // flags
    w.u16(0); // priority
    w.u16(0); // language
    w.u32(0); // initial frames
    w.u32(fps.den()); // scale
    w.u32(fps.num()); // rate
    w.u32(0); // start
    w.u32(frames); // length
    w.u32(dib_len); // suggested buffer size
    w.u32(0); // quality
    w.u32(0); // sample size
    w.u16(0); // rcFrame left
    w.u16(0); // rcFrame top
    w.u16(width as u16); // rcFrame right
    w.u16(height as u16); // rcFrame bottom

    w.tag(b"strf");
    w.u32(STRF_LEN);
    w.u32(STRF_LEN); // biSize
    w.u32(width); // biWidth
    w.u32(height); // biHeight, positive: bottom-up
    w.u16(1); // biPlanes
    w.u16(24); // biBitCount
    w.u32(0); // biCompression = BI_RGB
    w.u32(dib_len); // biSizeImage
    w.u32(0); // biXPelsPerMeter
    w.u32(0); // biYPelsPerMeter
    w.u32(0); // biClrUsed
    w.u32(0); // biClrImportant

    w.tag(b"LIST");
    w.u32(movi_len);
    w.tag(b"movi");
    // idx1 offsets are measured from the 'movi' fourcc, so the first chunk
    // header sits at offset 4.
    let mut offsets = Vec::with_capacity(clip.frames().len());
    let mut cursor = 4u32;
    for frame in clip.frames() {
        offsets.push(cursor);
        w.tag(b"00db");
        w.u32(dib_len);
        w.out.extend_from_slice(&frame_to_dib(frame));
        for _ in 0..chunk_pad {
            w.out.push(0);
        }
        cursor += 8 + dib_len + chunk_pad;
    }

    w.tag(b"idx1");
    w.u32(idx1_len);
    for offset in offsets {
        w.tag(b"00db");
        w.u32(AVIIF_KEYFRAME);
        w.u32(offset);
        w.u32(dib_len);
    }

    debug_assert_eq!(w.out.len(), riff_len as usize + 8);
    w.out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8], CodecError> {
        if self.bytes.len() - self.pos < n {
            return Err(CodecError::TruncatedChunk(Some(what.to_string())));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn tag(&mut self, what: &str) -> Result<[u8; 4], CodecError> {
        let s = self.take(4, what)?;
        Ok([s[0], s[1], s[2], s[3]])
    }

    fn u32(&mut self, what: &str) -> Result<u32, CodecError> {
        let s = self.take(4, what)?;
        Ok(u32::from_le_bytes([s[0], s[1], s[2], s[3]]))
    }

    fn u16(&mut self, what: &str) -> Result<u16, CodecError> {
        let s = self.take(2, what)?;
        Ok(u16::from_le_bytes([s[0], s[1]]))
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }
}

#[derive(Default)]
struct ParsedHeaders {
    micros_per_frame: u32,
    scale: u32,
    rate: u32,
    width: u32,
    height: u32,
    bit_count: u16,
    compression: u32,
    video_streams: u32,
    other_streams: u32,
    have_avih: bool,
    have_strf: bool,
}

/// Parse an uncompressed RGB24 AVI produced by [`write_avi`] or a compatible
/// writer: single 'vids' stream, BI_RGB, 24 bits per pixel, '00db' chunks.
pub fn read_avi(bytes: &[u8]) -> Result<Clip, CodecError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"AVI " {
        return Err(CodecError::NotRiff);
    }
    let declared = u32::from_le_bytes([bytes[4], bytes[5], bytes[6], bytes[7]]) as usize;
    let end = (8 + declared).min(bytes.len());

    let mut cur = Cursor {
        bytes: &bytes[..end],
        pos: 12,
    };
    let mut headers = ParsedHeaders::default();
    let mut movi: Option<&[u8]> = None;

    while cur.remaining() >= 8 {
        let tag = cur.tag("chunk id")?;
        let size = cur.u32("chunk size")? as usize;
        let data = cur.take(size, from_tag(&tag))?;
        if size % 2 == 1 && cur.remaining() > 0 {
            cur.take(1, "chunk padding")?;
        }
        if &tag == b"LIST" {
            if data.len() < 4 {
                return Err(CodecError::TruncatedChunk(Some("LIST".to_string())));
            }
            match &data[0..4] {
                b"hdrl" => parse_hdrl(&data[4..], &mut headers)?,
                b"movi" => movi = Some(&data[4..]),
                _ => {}
            }
        }
        // idx1 and any other top-level chunks are skipped; frames are read
        // sequentially from the movi list.
    }

    if !headers.have_avih {
        return Err(CodecError::UnsupportedCodec(
            "missing main AVI header".to_string(),
        ));
    }
    if headers.video_streams == 0 || !headers.have_strf {
        return Err(CodecError::UnsupportedCodec(
            "no uncompressed video stream found".to_string(),
        ));
    }
    if headers.video_streams > 1 || headers.other_streams > 0 {
        return Err(CodecError::UnsupportedCodec(
            "only a single video stream is supported".to_string(),
        ));
    }
    if headers.compression != 0 {
        return Err(CodecError::UnsupportedCodec(format!(
            "compression 0x{:08x}, only BI_RGB is supported",
            headers.compression
        )));
    }
    if headers.bit_count != 24 {
        return Err(CodecError::UnsupportedCodec(format!(
            "{} bits per pixel, only 24 is supported",
            headers.bit_count
        )));
    }
    if headers.width == 0 || headers.height == 0 {
        return Err(CodecError::DimensionMismatch(format!(
            "stream format declares {}x{}",
            headers.width, headers.height
        )));
    }

    let movi = movi.ok_or_else(|| CodecError::TruncatedChunk(Some("movi".to_string())))?;
    let mut frames = Vec::new();
    let mut mcur = Cursor {
        bytes: movi,
        pos: 0,
    };
    while mcur.remaining() >= 8 {
        let tag = mcur.tag("movi chunk id")?;
        let size = mcur.u32("movi chunk size")? as usize;
        let data = mcur.take(size, from_tag(&tag))?;
        if size % 2 == 1 && mcur.remaining() > 0 {
            mcur.take(1, "movi chunk padding")?;
        }
        if &tag == b"00db" {
            frames.push(frame_from_dib(headers.width, headers.height, data)?);
        }
    }
    if frames.is_empty() {
        return Err(CodecError::EmptyClip);
    }

    let fps = if headers.rate > 0 && headers.scale > 0 {
        Fps::new(headers.rate, headers.scale)?
    } else if headers.micros_per_frame > 0 {
        Fps::new(1_000_000, headers.micros_per_frame)?
    } else {
        Fps::default()
    };
    Clip::new(frames, fps)
}

fn from_tag(tag: &[u8; 4]) -> &str {
    std::str::from_utf8(tag).unwrap_or("chunk")
}

fn parse_hdrl(data: &[u8], headers: &mut ParsedHeaders) -> Result<(), CodecError> {
    let mut cur = Cursor {
        bytes: data,
        pos: 0,
    };
    while cur.remaining() >= 8 {
        let tag = cur.tag("hdrl chunk id")?;
        let size = cur.u32("hdrl chunk size")? as usize;
        let chunk = cur.take(size, from_tag(&tag))?;
        if size % 2 == 1 && cur.remaining() > 0 {
            cur.take(1, "hdrl chunk padding")?;
        }
        match &tag {
            b"avih" => {
                let mut c = Cursor {
                    bytes: chunk,
                    pos: 0,
                };
                headers.micros_per_frame = c.u32("avih")?;
                headers.have_avih = true;
            }
            b"LIST" if chunk.len() >= 4 && &chunk[0..4] == b"strl" => {
                parse_strl(&chunk[4..], headers)?;
            }
            _ => {}
        }
    }
    Ok(())
}

fn parse_strl(data: &[u8], headers: &mut ParsedHeaders) -> Result<(), CodecError> {
    let mut cur = Cursor {
        bytes: data,
        pos: 0,
    };
    let mut is_video = false;
    while cur.remaining() >= 8 {
        let tag = cur.tag("strl chunk id")?;
        let size = cur.u32("strl chunk size")? as usize;
        let chunk = cur.take(size, from_tag(&tag))?;
        if size % 2 == 1 && cur.remaining() > 0 {
            cur.take(1, "strl chunk padding")?;
        }
        match &tag {
            b"strh" => {
                let mut c = Cursor {
                    bytes: chunk,
                    pos: 0,
                };
                let fcc_type = c.tag("strh")?;
                is_video = &fcc_type == b"vids";
                if is_video {
                    headers.video_streams += 1;
                    c.take(4 + 4 + 2 + 2 + 4, "strh")?; // handler..initial frames
                    headers.scale = c.u32("strh scale")?;
                    headers.rate = c.u32("strh rate")?;
                } else {
                    headers.other_streams += 1;
                }
            }
            b"strf" if is_video => {
                let mut c = Cursor {
                    bytes: chunk,
                    pos: 0,
                };
                c.u32("strf biSize")?;
                let bi_width = c.u32("strf biWidth")? as i32;
                let bi_height = c.u32("strf biHeight")? as i32;
                c.u16("strf biPlanes")?;
                headers.bit_count = c.u16("strf biBitCount")?;
                headers.compression = c.u32("strf biCompression")?;
                if bi_height < 0 {
                    return Err(CodecError::UnsupportedCodec(
                        "top-down DIB frames are not supported".to_string(),
                    ));
                }
                if bi_width <= 0 {
                    return Err(CodecError::DimensionMismatch(format!(
                        "stream format declares width {bi_width}"
                    )));
                }
                headers.width = bi_width as u32;
                headers.height = bi_height as u32;
                headers.have_strf = true;
            }
            _ => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_clip() -> Clip {
        let mut f0 = Frame::filled(2, 2, [10, 20, 30]);
        f0.set_pixel(1, 0, [200, 100, 50]);
        let f1 = Frame::filled(2, 2, [1, 2, 3]);
        Clip::new(vec![f0, f1], Fps::default()).unwrap()
    }

    #[test]
    fn single_frame_roundtrip() {
        let mut f = Frame::filled(2, 2, [0, 0, 0]);
        f.set_pixel(0, 0, [255, 0, 0]);
        f.set_pixel(1, 1, [0, 0, 255]);
        let clip = Clip::new(vec![f], Fps::default()).unwrap();
        let parsed = read_avi(&write_avi(&clip)).unwrap();
        assert_eq!(parsed, clip);
    }

    #[test]
    fn multi_frame_roundtrip() {
        let clip = sample_clip();
        assert_eq!(read_avi(&write_avi(&clip)).unwrap(), clip);
    }

    #[test]
    fn wrong_form_type_rejected() {
        let mut bytes = write_avi(&sample_clip());
        bytes[8..12].copy_from_slice(b"WAVE");
        assert!(matches!(read_avi(&bytes), Err(CodecError::NotRiff)));
    }

    #[test]
    fn not_riff_rejected() {
        assert!(matches!(read_avi(b"MKV"), Err(CodecError::NotRiff)));
    }

    #[test]
    fn output_is_deterministic() {
        let clip = sample_clip();
        assert_eq!(write_avi(&clip), write_avi(&clip));
    }

    #[test]
    fn riff_size_field_matches_file_length() {
        let clip = Clip::new(vec![Frame::filled(1, 1, [7, 8, 9])], Fps::default()).unwrap();
        let bytes = write_avi(&clip);
        let declared = u32::from_le_bytes([bytes[4], bytes[5], bytes[6], bytes[7]]);
        assert_eq!(declared as usize, bytes.len() - 8);
    }

    #[test]
    fn truncated_file_reports_truncated_chunk() {
        let bytes = write_avi(&sample_clip());
        let cut = &bytes[..bytes.len() - 10];
        assert!(matches!(
            read_avi(cut),
            Err(CodecError::TruncatedChunk(_)) | Err(CodecError::EmptyClip)
        ));
    }

    #[test]
    fn compressed_stream_rejected() {
        let mut bytes = write_avi(&sample_clip());
        // biCompression lives 16 bytes into strf data; find strf and poke it.
        let pos = bytes.windows(4).position(|w| w == b"strf").unwrap();
        bytes[pos + 8 + 16] = 1; // BI_RLE8
        assert!(matches!(
            read_avi(&bytes),
            Err(CodecError::UnsupportedCodec(_))
        ));
    }

    #[test]
    fn frame_chunk_size_must_match_dims() {
        let mut bytes = write_avi(&Clip::new(
            vec![Frame::filled(2, 2, [1, 1, 1])],
            Fps::default(),
        )
        .unwrap());
        // Grow the declared strf width without touching the chunk data.
        let pos = bytes.windows(4).position(|w| w == b"strf").unwrap();
        bytes[pos + 8 + 4] = 3;
        // avih width too, for consistency.
        assert!(matches!(
            read_avi(&bytes),
            Err(CodecError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn dib_conversion_is_an_involution() {
        let mut f = Frame::filled(3, 2, [0, 0, 0]);
        let mut v = 0u8;
        for y in 0..2 {
            for x in 0..3 {
                f.set_pixel(x, y, [v, v.wrapping_add(1), v.wrapping_add(2)]);
                v = v.wrapping_add(3);
            }
        }
        let dib = frame_to_dib(&f);
        assert_eq!(dib.len(), 12 * 2); // stride 12 for width 3
        let back = frame_from_dib(3, 2, &dib).unwrap();
        assert_eq!(back, f);
        // Second application restores the DIB bytes as well.
        assert_eq!(frame_to_dib(&back), dib);
    }

    #[test]
    fn nonstandard_fps_survives_roundtrip() {
        let clip = Clip::new(
            vec![Frame::filled(2, 1, [5, 5, 5])],
            Fps::new(30000, 1001).unwrap(),
        )
        .unwrap();
        let parsed = read_avi(&write_avi(&clip)).unwrap();
        assert_eq!(parsed.fps(), clip.fps());
    }
}
