//! Hide secret payloads inside uncompressed video clips and recover them.
//!
//! A carrier clip is split into per-pixel static and dynamic regions by one of
//! three frame-comparison techniques. Static pixels carry whole payload bytes
//! (one byte per channel, three per pixel) at positions selected by a
//! key-derived arithmetic progression; dynamic pixels carry one payload bit
//! per channel byte via LSB parity. A self-describing header embedded in a
//! reserved pixel prefix records payload lengths and the region map so the
//! extractor needs nothing but the stego clip and the key.
//!
//! Modules:
//! - [`frame_io`]: PPM P6 / uncompressed RGB24 AVI codecs and the `Clip`/`Frame` model
//! - [`motion_analysis`]: static/dynamic region detection
//! - [`keying`]: key hashing, arithmetic-progression parameters, keystreams
//! - [`embedding`]: header, region-map serialization, embed pipeline, capacity
//! - [`extraction`]: the reverse pipeline
//! - [`metrics`]: MSE/PSNR fidelity reports
//! - [`synth`]: deterministic moving-block test clips

pub mod embedding;
pub mod extraction;
pub mod frame_io;
pub mod keying;
pub mod metrics;
pub mod motion_analysis;
pub mod synth;

pub use embedding::{CapacityReport, EmbedPlan, EmbedReport, StegoHeader};
pub use extraction::ExtractResult;
pub use frame_io::{Clip, Fps, Frame};
pub use keying::KeyMaterial;
pub use metrics::FidelityReport;
pub use motion_analysis::{AnalysisParams, DetectionMethod, Region, RegionMap};
