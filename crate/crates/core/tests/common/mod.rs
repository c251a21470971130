//! Shared fixtures and independently written brute-force oracles.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop, clippy::manual_abs_diff)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use smclip::frame_io::{Clip, Fps, Frame};
use smclip::motion_analysis::Region;

pub fn rng_from(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Clip of uniformly random pixels with random dimensions up to the bounds.
pub fn random_clip(rng: &mut StdRng, max_w: u32, max_h: u32, max_frames: u32) -> Clip {
    let w = rng.gen_range(1..=max_w);
    let h = rng.gen_range(1..=max_h);
    let n = rng.gen_range(1..=max_frames);
    random_clip_exact(rng, w, h, n)
}

pub fn random_clip_exact(rng: &mut StdRng, w: u32, h: u32, frames: u32) -> Clip {
    let frames = (0..frames)
        .map(|_| {
            let data: Vec<u8> = (0..w as usize * h as usize * 3).map(|_| rng.gen()).collect();
            Frame::new(w, h, data).unwrap()
        })
        .collect();
    Clip::new(frames, Fps::default()).unwrap()
}

/// Brute-force re-implementations of the region detectors and metrics.
///
/// These share only the mathematical definitions with the library: loops,
/// tilings, and accumulations are written from scratch, and everything is
/// integer-exact so boundary decisions cannot drift.
pub mod oracle {
    use super::*;

    /// Exact round-half-up grayscale via explicit remainder handling.
    pub fn gray(r: u8, g: u8, b: u8) -> u8 {
        let milli = 299u32 * r as u32 + 587 * g as u32 + 114 * b as u32;
        let mut out = milli / 1000;
        if 2 * (milli % 1000) >= 1000 {
            out += 1;
        }
        out as u8
    }

    fn gray_frame(frame: &Frame) -> Vec<u8> {
        let mut out = Vec::new();
        for y in 0..frame.height() {
            for x in 0..frame.width() {
                let [r, g, b] = frame.pixel(x, y);
                out.push(gray(r, g, b));
            }
        }
        out
    }

    /// Frame index each frame is compared against.
    fn partner(t: usize, frame_count: usize) -> Option<usize> {
        if frame_count < 2 {
            None
        } else if t == frame_count - 1 {
            Some(t - 1)
        } else {
            Some(t + 1)
        }
    }

    pub fn pixel_diff(clip: &Clip, threshold: u8) -> Vec<Region> {
        let grays: Vec<Vec<u8>> = clip.frames().iter().map(gray_frame).collect();
        let n = clip.frames().len();
        let per = (clip.width() * clip.height()) as usize;
        let mut mask = Vec::new();
        for t in 0..n {
            match partner(t, n) {
                None => mask.extend(std::iter::repeat_n(Region::Static, per)),
                Some(u) => {
                    for p in 0..per {
                        let d = if grays[t][p] > grays[u][p] {
                            grays[t][p] - grays[u][p]
                        } else {
                            grays[u][p] - grays[t][p]
                        };
                        mask.push(if d <= threshold {
                            Region::Static
                        } else {
                            Region::Dynamic
                        });
                    }
                }
            }
        }
        mask
    }

    /// Pixels covered by the block at (bx0, by0).
    fn block_coords(
        bx0: u32,
        by0: u32,
        block: u32,
        w: u32,
        h: u32,
    ) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for y in by0..(by0 + block).min(h) {
            for x in bx0..(bx0 + block).min(w) {
                out.push((x, y));
            }
        }
        out
    }

    pub fn block_likelihood(clip: &Clip, block: u32, mean_tol: f64, var_tol: f64) -> Vec<Region> {
        let n_frames = clip.frames().len();
        let (w, h) = (clip.width(), clip.height());
        let per = (w * h) as usize;
        let mut mask = vec![Region::Static; per * n_frames];
        for t in 0..n_frames {
            let Some(u) = partner(t, n_frames) else { continue };
            let mut by0 = 0;
            while by0 < h {
                let mut bx0 = 0;
                while bx0 < w {
                    let coords = block_coords(bx0, by0, block, w, h);
                    let n = coords.len() as u64;
                    let sum = |f: usize| -> u64 {
                        coords
                            .iter()
                            .map(|&(x, y)| {
                                let [r, g, b] = clip.frames()[f].pixel(x, y);
                                gray(r, g, b) as u64
                            })
                            .sum()
                    };
                    // Variance numerator n^2*var via the pairwise identity
                    // sum_{i<j} (g_i - g_j)^2 = n*sum(g^2) - (sum g)^2.
                    let pairwise = |f: usize| -> u64 {
                        let gs: Vec<u64> = coords
                            .iter()
                            .map(|&(x, y)| {
                                let [r, g, b] = clip.frames()[f].pixel(x, y);
                                gray(r, g, b) as u64
                            })
                            .collect();
                        let mut acc = 0u64;
                        for i in 0..gs.len() {
                            for j in i + 1..gs.len() {
                                let d = gs[i].abs_diff(gs[j]);
                                acc += d * d;
                            }
                        }
                        acc
                    };
                    let (sa, sb) = (sum(t), sum(u));
                    let (va, vb) = (pairwise(t), pairwise(u));
                    let mean_ok = sa.abs_diff(sb) as f64 <= mean_tol * n as f64;
                    let var_ok = va.abs_diff(vb) as f64 <= var_tol * (n * n) as f64;
                    if !(mean_ok && var_ok) {
                        for (x, y) in coords {
                            mask[t * per + (y * w + x) as usize] = Region::Dynamic;
                        }
                    }
                    bx0 += block;
                }
                by0 += block;
            }
        }
        mask
    }

    pub fn histogram(clip: &Clip, block: u32, bins: u32, tol: f64) -> Vec<Region> {
        let n_frames = clip.frames().len();
        let (w, h) = (clip.width(), clip.height());
        let per = (w * h) as usize;
        let mut mask = vec![Region::Static; per * n_frames];
        for t in 0..n_frames {
            let Some(u) = partner(t, n_frames) else { continue };
            let mut by0 = 0;
            while by0 < h {
                let mut bx0 = 0;
                while bx0 < w {
                    let coords = block_coords(bx0, by0, block, w, h);
                    let n = coords.len() as u64;
                    let hist = |f: usize, channel: usize| -> Vec<u64> {
                        let mut counts = vec![0u64; bins as usize];
                        for &(x, y) in &coords {
                            let v = clip.frames()[f].pixel(x, y)[channel] as u32;
                            counts[(v * bins / 256) as usize] += 1;
                        }
                        counts
                    };
                    let mut all_ok = true;
                    for channel in 0..3 {
                        let (ha, hb) = (hist(t, channel), hist(u, channel));
                        let dist: u64 = ha
                            .iter()
                            .zip(&hb)
                            .map(|(a, b)| a.abs_diff(*b))
                            .sum();
                        if dist as f64 > tol * (2 * n) as f64 {
                            all_ok = false;
                        }
                    }
                    if !all_ok {
                        for (x, y) in coords {
                            mask[t * per + (y * w + x) as usize] = Region::Dynamic;
                        }
                    }
                    bx0 += block;
                }
                by0 += block;
            }
        }
        mask
    }

    /// MSE via an explicit per-pixel, per-channel double loop.
    pub fn mse_two_loop(a: &Frame, b: &Frame) -> f64 {
        let mut acc = 0.0f64;
        for y in 0..a.height() {
            for x in 0..a.width() {
                let pa = a.pixel(x, y);
                let pb = b.pixel(x, y);
                for c in 0..3 {
                    let d = pa[c] as f64 - pb[c] as f64;
                    acc += d * d;
                }
            }
        }
        acc / (a.width() as f64 * a.height() as f64 * 3.0)
    }

    /// Reference xorshift64*: scramble state, multiply, keep the top byte.
    pub fn xorshift64star_bytes(seed: u64, n: usize) -> Vec<u8> {
        let mut s = seed;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            s ^= s >> 12;
            s ^= s << 25;
            s ^= s >> 27;
            out.push((s.wrapping_mul(0x2545F4914F6CDD1D) >> 56) as u8);
        }
        out
    }
}
