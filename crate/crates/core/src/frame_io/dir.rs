//! PPM frame-sequence directories: `frame_000001.ppm`, `frame_000002.ppm`, ...

use std::fs;
use std::path::{Path, PathBuf};

use super::{read_ppm, write_ppm, Clip, CodecError, Fps};

fn io_err(path: &Path, source: std::io::Error) -> CodecError {
    CodecError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Assemble a clip from an ordered list of PPM files.
pub fn read_frames(paths: &[PathBuf], fps: Fps) -> Result<Clip, CodecError> {
    let mut frames = Vec::with_capacity(paths.len());
    for path in paths {
        let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
        frames.push(read_ppm(&bytes)?);
    }
    Clip::new(frames, fps)
}

/// Read every `.ppm` file in a directory, ordered by file name.
///
/// The writer zero-pads frame numbers, so lexicographic order is frame order.
pub fn read_frame_dir(dir: &Path, fps: Fps) -> Result<Clip, CodecError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| io_err(dir, e))?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|p| p.extension().map(|e| e == "ppm").unwrap_or(false))
        .collect();
    paths.sort();
    read_frames(&paths, fps)
}

/// Write a clip as `frame_%06d.ppm` files (1-based), creating the directory
/// if needed. Returns the written paths in frame order.
pub fn write_frame_dir(clip: &Clip, dir: &Path) -> Result<Vec<PathBuf>, CodecError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut paths = Vec::with_capacity(clip.frames().len());
    for (i, frame) in clip.frames().iter().enumerate() {
        let path = dir.join(format!("frame_{:06}.ppm", i + 1));
        fs::write(&path, write_ppm(frame)).map_err(|e| io_err(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame_io::Frame;

    #[test]
    fn identical_frames_assemble_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let frame = Frame::filled(4, 4, [1, 2, 3]);
        for i in 1..=3 {
            let path = dir.path().join(format!("frame_{i:06}.ppm"));
            fs::write(&path, write_ppm(&frame)).unwrap();
        }
        let clip = read_frame_dir(dir.path(), Fps::default()).unwrap();
        assert_eq!(clip.frame_count(), 3);
        assert_eq!(clip.frames()[2], frame);
    }

    #[test]
    fn write_then_read_is_identity() {
        let dir = tempfile::tempdir().unwrap();
        let frames: Vec<Frame> = (0..5u8).map(|i| Frame::filled(3, 2, [i, i, i])).collect();
        let clip = Clip::new(frames, Fps::default()).unwrap();
        let paths = write_frame_dir(&clip, dir.path()).unwrap();
        assert_eq!(paths.len(), 5);
        assert!(paths[0].ends_with("frame_000001.ppm"));
        let back = read_frame_dir(dir.path(), clip.fps()).unwrap();
        assert_eq!(back, clip);
    }

    #[test]
    fn differing_sizes_rejected() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(
            dir.path().join("frame_000001.ppm"),
            write_ppm(&Frame::filled(2, 2, [0, 0, 0])),
        )
        .unwrap();
        fs::write(
            dir.path().join("frame_000002.ppm"),
            write_ppm(&Frame::filled(3, 2, [0, 0, 0])),
        )
        .unwrap();
        assert!(matches!(
            read_frame_dir(dir.path(), Fps::default()),
            Err(CodecError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn empty_directory_is_an_empty_clip() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            read_frame_dir(dir.path(), Fps::default()),
            Err(CodecError::EmptyClip)
        ));
    }
}
