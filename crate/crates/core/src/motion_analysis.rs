//! Static/dynamic region detection.
//!
//! Every pixel of every frame is classified by comparing consecutive frames:
//! pixel-level grayscale differencing, per-block mean/variance comparison, or
//! per-block per-channel color histograms. The last frame is classified
//! against its predecessor and a single-frame clip is entirely static.
//!
//! All statistics are accumulated in exact integer arithmetic and only
//! converted to floats for the final threshold comparison, so results are
//! identical across platforms and implementations of the same definition.

use crate::frame_io::{write_pgm, Clip, Frame};

/// Per-pixel classification of one clip position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Static,
    Dynamic,
}

/// Which frame-comparison technique classifies the clip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionMethod {
    PixelDiff,
    BlockLikelihood,
    ColorHistogram,
}

impl DetectionMethod {
    /// Wire code used in the embedded header.
    pub fn code(self) -> u8 {
        match self {
            DetectionMethod::PixelDiff => 1,
            DetectionMethod::BlockLikelihood => 2,
            DetectionMethod::ColorHistogram => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(DetectionMethod::PixelDiff),
            2 => Some(DetectionMethod::BlockLikelihood),
            3 => Some(DetectionMethod::ColorHistogram),
            _ => None,
        }
    }
}

/// Detection method plus its thresholds.
///
/// Invariants assumed by [`analyze`]: `block_size >= 1`,
/// `hist_bins` in `2..=256`, all tolerances nonnegative and finite.
#[derive(Debug, Clone)]
pub struct AnalysisParams {
    pub method: DetectionMethod,
    /// Maximum absolute grayscale difference still considered static.
    pub diff_threshold: u8,
    /// Side length of comparison blocks for the block-based methods.
    pub block_size: u32,
    /// Maximum grayscale mean shift still considered static.
    pub mean_tol: f64,
    /// Maximum population-variance shift still considered static.
    pub var_tol: f64,
    /// Histogram bins per color channel.
    pub hist_bins: u32,
    /// Maximum normalized L1 histogram distance still considered static.
    pub hist_tol: f64,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            method: DetectionMethod::PixelDiff,
            diff_threshold: 2,
            block_size: 8,
            mean_tol: 2.0,
            var_tol: 4.0,
            hist_bins: 16,
            hist_tol: 0.1,
        }
    }
}

impl AnalysisParams {
    pub fn with_method(method: DetectionMethod) -> Self {
        AnalysisParams {
            method,
            ..AnalysisParams::default()
        }
    }

    fn assert_valid(&self) {
        assert!(self.block_size >= 1, "block_size must be at least 1");
        assert!(
            (2..=256).contains(&self.hist_bins),
            "hist_bins must be in 2..=256"
        );
        assert!(
            self.mean_tol >= 0.0 && self.var_tol >= 0.0 && self.hist_tol >= 0.0,
            "tolerances must be nonnegative"
        );
    }
}

/// Per-frame, per-pixel static/dynamic classification of a clip.
///
/// The mask is indexed frame-major then row-major and depends only on the
/// cover pixels and parameters, never on any payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMap {
    width: u32,
    height: u32,
    frame_count: u32,
    mask: Vec<Region>,
}

impl RegionMap {
    pub fn from_mask(width: u32, height: u32, frame_count: u32, mask: Vec<Region>) -> Self {
        assert_eq!(
            mask.len(),
            width as usize * height as usize * frame_count as usize,
            "mask length must equal frame_count * width * height"
        );
        RegionMap {
            width,
            height,
            frame_count,
            mask,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn frame_count(&self) -> u32 {
        self.frame_count
    }

    pub fn mask(&self) -> &[Region] {
        &self.mask
    }

    pub fn total_pixels(&self) -> u64 {
        self.mask.len() as u64
    }

    pub fn region(&self, frame: u32, x: u32, y: u32) -> Region {
        self.mask[self.index(frame, x, y)]
    }

    /// Classification of a global pixel index (frame-major, row-major).
    pub fn region_at(&self, pixel_index: u64) -> Region {
        self.mask[pixel_index as usize]
    }

    fn index(&self, frame: u32, x: u32, y: u32) -> usize {
        debug_assert!(frame < self.frame_count && x < self.width && y < self.height);
        (frame as usize * self.height as usize + y as usize) * self.width as usize + x as usize
    }

    /// (static, dynamic) pixel counts for each frame.
    pub fn frame_region_counts(&self) -> Vec<(u64, u64)> {
        let per_frame = self.width as usize * self.height as usize;
        self.mask
            .chunks_exact(per_frame)
            .map(|chunk| {
                let stat = chunk.iter().filter(|r| **r == Region::Static).count() as u64;
                (stat, per_frame as u64 - stat)
            })
            .collect()
    }

    /// Diagnostic PGM mask for one frame: 255 = dynamic, 0 = static.
    pub fn to_pgm(&self, frame: u32) -> Vec<u8> {
        let per_frame = self.width as usize * self.height as usize;
        let start = frame as usize * per_frame;
        let gray: Vec<u8> = self.mask[start..start + per_frame]
            .iter()
            .map(|r| match r {
                Region::Static => 0,
                Region::Dynamic => 255,
            })
            .collect();
        write_pgm(self.width, self.height, &gray)
    }
}

/// Per-pixel grayscale: `round(0.299 R + 0.587 G + 0.114 B)`, round half up.
pub fn grayscale(frame: &Frame) -> Vec<u8> {
    frame
        .data()
        .chunks_exact(3)
        .map(|px| gray_of(px[0], px[1], px[2]))
        .collect()
}

fn gray_of(r: u8, g: u8, b: u8) -> u8 {
    ((299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500) / 1000) as u8
}

/// Frame pair each frame is classified against: `(t, t+1)` for all but the
/// last frame, which reuses its predecessor. `None` for a single-frame clip.
fn compare_pair(t: usize, frame_count: usize) -> Option<(usize, usize)> {
    if frame_count < 2 {
        None
    } else if t + 1 < frame_count {
        Some((t, t + 1))
    } else {
        Some((t, t - 1))
    }
}

/// Classify by per-pixel grayscale difference against `diff_threshold`.
pub fn pixel_diff_map(clip: &Clip, params: &AnalysisParams) -> RegionMap {
    let frames = clip.frames();
    let grays: Vec<Vec<u8>> = frames.iter().map(grayscale).collect();
    let per_frame = clip.pixels_per_frame() as usize;
    let mut mask = Vec::with_capacity(per_frame * frames.len());
    for t in 0..frames.len() {
        match compare_pair(t, frames.len()) {
            None => mask.extend(std::iter::repeat_n(Region::Static, per_frame)),
            Some((a, b)) => {
                let (ga, gb) = (&grays[a], &grays[b]);
                mask.extend((0..per_frame).map(|p| {
                    if ga[p].abs_diff(gb[p]) <= params.diff_threshold {
                        Region::Static
                    } else {
                        Region::Dynamic
                    }
                }));
            }
        }
    }
    RegionMap::from_mask(clip.width(), clip.height(), clip.frame_count(), mask)
}

/// Block tiling shared by the block-based methods. Edge blocks are smaller.
struct Tiling {
    block_size: usize,
    width: usize,
    height: usize,
}

struct Block {
    x0: usize,
    y0: usize,
    x1: usize,
    y1: usize,
}

impl Tiling {
    fn new(width: u32, height: u32, block_size: u32) -> Self {
        Tiling {
            block_size: block_size as usize,
            width: width as usize,
            height: height as usize,
        }
    }

    fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        let bs = self.block_size;
        let (w, h) = (self.width, self.height);
        (0..h.div_ceil(bs)).flat_map(move |by| {
            (0..w.div_ceil(bs)).map(move |bx| Block {
                x0: bx * bs,
                y0: by * bs,
                x1: ((bx + 1) * bs).min(w),
                y1: ((by + 1) * bs).min(h),
            })
        })
    }
}

fn fill_block(mask: &mut [Region], width: usize, block: &Block, label: Region) {
    for y in block.y0..block.y1 {
        for x in block.x0..block.x1 {
            mask[y * width + x] = label;
        }
    }
}

/// Classify blocks by grayscale mean and population variance shifts.
pub fn block_likelihood_map(clip: &Clip, params: &AnalysisParams) -> RegionMap {
    let frames = clip.frames();
    let grays: Vec<Vec<u8>> = frames.iter().map(grayscale).collect();
    let w = clip.width() as usize;
    let per_frame = clip.pixels_per_frame() as usize;
    let tiling = Tiling::new(clip.width(), clip.height(), params.block_size);
    let mut mask = vec![Region::Static; per_frame * frames.len()];
    for t in 0..frames.len() {
        let Some((a, b)) = compare_pair(t, frames.len()) else {
            continue;
        };
        let frame_mask = &mut mask[t * per_frame..(t + 1) * per_frame];
        for block in tiling.blocks() {
            let (sum_a, sq_a, n) = block_sums(&grays[a], w, &block);
            let (sum_b, sq_b, _) = block_sums(&grays[b], w, &block);
            // mean = S/n, population variance = (n*Q - S^2)/n^2; compare the
            // integer numerators against tolerance * denominator exactly.
            let mean_shift = sum_a.abs_diff(sum_b) as f64;
            let var_num_a = (n as u128 * sq_a as u128) as i128 - (sum_a as i128 * sum_a as i128);
            let var_num_b = (n as u128 * sq_b as u128) as i128 - (sum_b as i128 * sum_b as i128);
            let var_shift = (var_num_a - var_num_b).unsigned_abs() as f64;
            let is_static = mean_shift <= params.mean_tol * n as f64
                && var_shift <= params.var_tol * (n * n) as f64;
            if !is_static {
                fill_block(frame_mask, w, &block, Region::Dynamic);
            }
        }
    }
    RegionMap::from_mask(clip.width(), clip.height(), clip.frame_count(), mask)
}

fn block_sums(gray: &[u8], width: usize, block: &Block) -> (u64, u64, u64) {
    let mut sum = 0u64;
    let mut sq = 0u64;
    let mut n = 0u64;
    for y in block.y0..block.y1 {
        for x in block.x0..block.x1 {
            let g = gray[y * width + x] as u64;
            sum += g;
            sq += g * g;
            n += 1;
        }
    }
    (sum, sq, n)
}

/// Classify blocks by per-channel color histograms: a block is static iff
/// every channel's normalized L1 distance is within `hist_tol`.
pub fn histogram_map(clip: &Clip, params: &AnalysisParams) -> RegionMap {
    let frames = clip.frames();
    let w = clip.width() as usize;
    let per_frame = clip.pixels_per_frame() as usize;
    let bins = params.hist_bins as usize;
    let tiling = Tiling::new(clip.width(), clip.height(), params.block_size);
    let mut mask = vec![Region::Static; per_frame * frames.len()];
    for t in 0..frames.len() {
        let Some((a, b)) = compare_pair(t, frames.len()) else {
            continue;
        };
        let frame_mask = &mut mask[t * per_frame..(t + 1) * per_frame];
        for block in tiling.blocks() {
            let (hist_a, n) = block_histograms(frames[a].data(), w, &block, bins);
            let (hist_b, _) = block_histograms(frames[b].data(), w, &block, bins);
            let is_static = (0..3).all(|c| {
                let dist: u64 = hist_a[c]
                    .iter()
                    .zip(&hist_b[c])
                    .map(|(x, y)| x.abs_diff(*y) as u64)
                    .sum();
                dist as f64 <= params.hist_tol * (2 * n) as f64
            });
            if !is_static {
                fill_block(frame_mask, w, &block, Region::Dynamic);
            }
        }
    }
    RegionMap::from_mask(clip.width(), clip.height(), clip.frame_count(), mask)
}

fn block_histograms(
    data: &[u8],
    width: usize,
    block: &Block,
    bins: usize,
) -> ([Vec<u32>; 3], u64) {
    let mut hist = [vec![0u32; bins], vec![0u32; bins], vec![0u32; bins]];
    let mut n = 0u64;
    for y in block.y0..block.y1 {
        for x in block.x0..block.x1 {
            let base = (y * width + x) * 3;
            for c in 0..3 {
                let bin = data[base + c] as usize * bins / 256;
                hist[c][bin] += 1;
            }
            n += 1;
        }
    }
    (hist, n)
}

/// Dispatch over the three detection techniques.
pub fn analyze(clip: &Clip, params: &AnalysisParams) -> RegionMap {
    params.assert_valid();
    match params.method {
        DetectionMethod::PixelDiff => pixel_diff_map(clip, params),
        DetectionMethod::BlockLikelihood => block_likelihood_map(clip, params),
        DetectionMethod::ColorHistogram => histogram_map(clip, params),
    }
}
