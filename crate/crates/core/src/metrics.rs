//! Cover/stego fidelity: MSE, PSNR, and change statistics.

use thiserror::Error;

use crate::frame_io::{Clip, Frame};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Mean squared error over all channel bytes of two equally-sized frames.
///
/// The numerator is accumulated exactly in integers, so the result is a
/// single rounding away from the true rational value.
pub fn mse(a: &Frame, b: &Frame) -> Result<f64, MetricsError> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(MetricsError::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.width(),
            b.width(),
            a.height(),
            b.height()
        )));
    }
    let sum: u64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum();
    Ok(sum as f64 / a.data().len() as f64)
}

/// Peak signal-to-noise ratio in dB for 8-bit channels; infinite when the
/// frames are identical.
pub fn psnr(mse_value: f64) -> f64 {
    debug_assert!(mse_value >= 0.0);
    if mse_value == 0.0 {
        f64::INFINITY
    } else {
        10.0 * ((255.0 * 255.0) / mse_value).log10()
    }
}

/// Per-frame and aggregate fidelity between a cover and its stego clip.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub per_frame_mse: Vec<f64>,
    pub per_frame_psnr: Vec<f64>,
    /// PSNR of the mean per-frame MSE.
    pub mean_psnr: f64,
    pub changed_byte_count: u64,
    pub max_abs_byte_delta: u8,
}

impl FidelityReport {
    /// Stable machine-readable form, one `key=value` per line.
    pub fn to_kv_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("frames={}\n", self.per_frame_mse.len()));
        out.push_str(&format!("changed_byte_count={}\n", self.changed_byte_count));
        out.push_str(&format!(
            "max_abs_byte_delta={}\n",
            self.max_abs_byte_delta
        ));
        out.push_str(&format!("mean_psnr_db={}\n", self.mean_psnr));
        for (i, (m, p)) in self
            .per_frame_mse
            .iter()
            .zip(&self.per_frame_psnr)
            .enumerate()
        {
            out.push_str(&format!("frame_{i:04}_mse={m}\n"));
            out.push_str(&format!("frame_{i:04}_psnr_db={p}\n"));
        }
        out
    }

    /// Human-readable table with one row per frame.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:>6}  {:>14}  {:>10}\n", "frame", "mse", "psnr_db"));
        for (i, (m, p)) in self
            .per_frame_mse
            .iter()
            .zip(&self.per_frame_psnr)
            .enumerate()
        {
            out.push_str(&format!("{i:>6}  {m:>14.6}  {p:>10.3}\n"));
        }
        out.push_str(&format!(
            "mean PSNR {:.3} dB, {} bytes changed, max |delta| {}\n",
            self.mean_psnr, self.changed_byte_count, self.max_abs_byte_delta
        ));
        out
    }
}

/// Compare two clips frame by frame.
pub fn compare(cover: &Clip, stego: &Clip) -> Result<FidelityReport, MetricsError> {
    if cover.width() != stego.width()
        || cover.height() != stego.height()
        || cover.frame_count() != stego.frame_count()
    {
        return Err(MetricsError::DimensionMismatch(format!(
            "{}x{}x{} vs {}x{}x{}",
            cover.width(),
            cover.height(),
            cover.frame_count(),
            stego.width(),
            stego.height(),
            stego.frame_count()
        )));
    }
    let mut per_frame_mse = Vec::with_capacity(cover.frames().len());
    let mut changed = 0u64;
    let mut max_delta = 0u8;
    for (a, b) in cover.frames().iter().zip(stego.frames()) {
        per_frame_mse.push(mse(a, b)?);
        for (&x, &y) in a.data().iter().zip(b.data()) {
            let d = x.abs_diff(y);
            if d > 0 {
                changed += 1;
                max_delta = max_delta.max(d);
            }
        }
    }
    let per_frame_psnr: Vec<f64> = per_frame_mse.iter().map(|&m| psnr(m)).collect();
    let mean_mse = per_frame_mse.iter().sum::<f64>() / per_frame_mse.len() as f64;
    Ok(FidelityReport {
        mean_psnr: psnr(mean_mse),
        per_frame_mse,
        per_frame_psnr,
        changed_byte_count: changed,
        max_abs_byte_delta: max_delta,
    })
}
