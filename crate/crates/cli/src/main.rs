//! `smclip`: hide payloads in uncompressed video clips and get them back.
//!
//! Exit codes: 0 success, 1 usage error, 2 capacity error, 3 integrity
//! error (bad magic / CRC mismatch), 4 I/O or format error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use smclip::embedding::{capacity, embed, EmbedError};
use smclip::extraction::extract;
use smclip::frame_io::{
    read_avi, read_frame_dir, write_avi, write_frame_dir, Clip, CodecError, Fps,
};
use smclip::metrics::{compare, MetricsError};
use smclip::motion_analysis::{analyze, AnalysisParams, DetectionMethod};
use smclip::synth::{gen_test_clip, MovingBlockSpec};

#[derive(Parser)]
#[command(
    name = "smclip",
    version,
    about = "Steganography for uncompressed movie clips: static-region byte substitution plus dynamic-region LSB parity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify pixels as static or dynamic and report per-frame counts
    Analyze(AnalyzeArgs),
    /// Report how much payload a cover clip admits
    Capacity(CapacityArgs),
    /// Hide payload files inside a cover clip
    Embed(EmbedArgs),
    /// Recover payloads from a stego clip
    Extract(ExtractArgs),
    /// Measure MSE/PSNR and byte changes between two clips
    Compare(CompareArgs),
    /// Generate a deterministic test clip with a moving block
    Gen(GenArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Read the clip from an uncompressed RGB24 AVI file
    #[arg(long, value_name = "FILE")]
    input_avi: Option<PathBuf>,
    /// Read the clip from a directory of PPM frames
    #[arg(long, value_name = "DIR")]
    input_frames: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Per-pixel grayscale differencing
    PixelDiff,
    /// Per-block mean/variance comparison
    Block,
    /// Per-block per-channel color histograms
    Histogram,
}

impl From<MethodArg> for DetectionMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::PixelDiff => DetectionMethod::PixelDiff,
            MethodArg::Block => DetectionMethod::BlockLikelihood,
            MethodArg::Histogram => DetectionMethod::ColorHistogram,
        }
    }
}

#[derive(Args)]
struct AnalysisArgs {
    /// Region detection method
    #[arg(long, value_enum, default_value = "pixel-diff")]
    method: MethodArg,
    /// Grayscale difference still considered static (pixel-diff)
    #[arg(long, default_value_t = 2)]
    threshold: u8,
    /// Comparison block side length (block, histogram)
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    block_size: u32,
    /// Histogram bins per channel
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(2..=256))]
    bins: u32,
    /// Normalized histogram distance still considered static
    #[arg(long, default_value_t = 0.1)]
    hist_tol: f64,
    /// Mean shift still considered static
    #[arg(long, default_value_t = 2.0)]
    mean_tol: f64,
    /// Variance shift still considered static
    #[arg(long, default_value_t = 4.0)]
    var_tol: f64,
}

impl AnalysisArgs {
    fn params(&self) -> Result<AnalysisParams, CliError> {
        if self.hist_tol < 0.0 || self.mean_tol < 0.0 || self.var_tol < 0.0 {
            return Err(CliError::Usage(
                "tolerances must be nonnegative".to_string(),
            ));
        }
        Ok(AnalysisParams {
            method: self.method.into(),
            diff_threshold: self.threshold,
            block_size: self.block_size,
            mean_tol: self.mean_tol,
            var_tol: self.var_tol,
            hist_bins: self.bins,
            hist_tol: self.hist_tol,
        })
    }
}

#[derive(Args)]
struct KeyArgs {
    /// Stego key as a literal string
    #[arg(long, value_name = "STRING")]
    key: Option<String>,
    /// Stego key read verbatim from a file
    #[arg(long, value_name = "FILE", conflicts_with = "key")]
    key_file: Option<PathBuf>,
    /// Separate key for the dynamic payload (defaults to the static key)
    #[arg(long, value_name = "STRING")]
    key_dynamic: Option<String>,
    /// Dynamic key read verbatim from a file
    #[arg(long, value_name = "FILE", conflicts_with = "key_dynamic")]
    key_dynamic_file: Option<PathBuf>,
}

impl KeyArgs {
    fn static_key(&self) -> Result<Option<Vec<u8>>, CliError> {
        resolve_key(self.key.as_deref(), self.key_file.as_deref())
    }

    fn dynamic_key(&self) -> Result<Option<Vec<u8>>, CliError> {
        resolve_key(self.key_dynamic.as_deref(), self.key_dynamic_file.as_deref())
    }
}

fn resolve_key(literal: Option<&str>, file: Option<&Path>) -> Result<Option<Vec<u8>>, CliError> {
    match (literal, file) {
        (Some(s), _) => Ok(Some(s.as_bytes().to_vec())),
        (None, Some(path)) => Ok(Some(fs::read(path).map_err(|e| {
            CliError::IoFormat(format!("reading key file {}: {e}", path.display()))
        })?)),
        (None, None) => Ok(None),
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    analysis: AnalysisArgs,
    /// Write per-frame PGM masks (255 = dynamic) into this directory
    #[arg(long, value_name = "DIR")]
    mask_out: Option<PathBuf>,
}

#[derive(Args)]
struct CapacityArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[command(flatten)]
    keys: KeyArgs,
}

#[derive(Args)]
#[group(id = "payloads", required = true, multiple = true)]
struct PayloadArgs {
    /// Payload file for the static (byte substitution) scheme
    #[arg(long, value_name = "FILE", group = "payloads")]
    payload: Option<PathBuf>,
    /// Payload file for the dynamic (LSB parity) scheme
    #[arg(long, value_name = "FILE", group = "payloads")]
    payload_dynamic: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "stego_output", required = true, multiple = false)]
struct OutputArgs {
    /// Write the stego clip as an AVI file
    #[arg(long, value_name = "FILE", group = "stego_output")]
    output: Option<PathBuf>,
    /// Write the stego clip as a directory of PPM frames
    #[arg(long, value_name = "DIR", group = "stego_output")]
    output_frames: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[command(flatten)]
    payloads: PayloadArgs,
    #[command(flatten)]
    keys: KeyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    keys: KeyArgs,
    /// Where to write the recovered static payload
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Where to write the recovered dynamic payload
    #[arg(long, value_name = "FILE")]
    out_dynamic: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "cover", required = true, multiple = false)]
struct CoverArgs {
    #[arg(long, value_name = "FILE", group = "cover")]
    cover_avi: Option<PathBuf>,
    #[arg(long, value_name = "DIR", group = "cover")]
    cover_frames: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "stego", required = true, multiple = false)]
struct StegoArgs {
    #[arg(long, value_name = "FILE", group = "stego")]
    stego_avi: Option<PathBuf>,
    #[arg(long, value_name = "DIR", group = "stego")]
    stego_frames: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    cover: CoverArgs,
    #[command(flatten)]
    stego: StegoArgs,
    /// Print a human-readable table instead of key=value lines
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    width: u32,
    #[arg(long)]
    height: u32,
    #[arg(long)]
    frames: u32,
    /// Moving block size as WxH
    #[arg(long, value_name = "WxH", default_value = "8x8", value_parser = parse_dims)]
    block: (u32, u32),
    /// Block translation per frame as DX,DY
    #[arg(long, value_name = "DX,DY", default_value = "1,1", value_parser = parse_velocity)]
    velocity: (i32, i32),
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Frame rate of the generated clip
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    fps: u32,
    /// Directory to write the PPM frames into
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

fn parse_dims(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got '{s}'"))?;
    Ok((
        w.parse().map_err(|e| format!("bad width '{w}': {e}"))?,
        h.parse().map_err(|e| format!("bad height '{h}': {e}"))?,
    ))
}

fn parse_velocity(s: &str) -> Result<(i32, i32), String> {
    let (dx, dy) = s
        .split_once(',')
        .ok_or_else(|| format!("expected DX,DY, got '{s}'"))?;
    Ok((
        dx.parse().map_err(|e| format!("bad dx '{dx}': {e}"))?,
        dy.parse().map_err(|e| format!("bad dy '{dy}': {e}"))?,
    ))
}

enum CliError {
    Usage(String),
    Capacity(String),
    Integrity(String),
    IoFormat(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Capacity(_) => 2,
            CliError::Integrity(_) => 3,
            CliError::IoFormat(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Capacity(m)
            | CliError::Integrity(m)
            | CliError::IoFormat(m) => m,
        }
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        CliError::IoFormat(e.to_string())
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::NothingToEmbed => CliError::Usage(e.to_string()),
            _ => CliError::Capacity(e.to_string()),
        }
    }
}

impl From<smclip::extraction::ExtractError> for CliError {
    fn from(e: smclip::extraction::ExtractError) -> Self {
        CliError::Integrity(e.to_string())
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn load_clip(avi: Option<&Path>, frames: Option<&Path>) -> Result<Clip, CliError> {
    match (avi, frames) {
        (Some(path), _) => {
            let bytes = fs::read(path)
                .map_err(|e| CliError::IoFormat(format!("reading {}: {e}", path.display())))?;
            Ok(read_avi(&bytes)?)
        }
        (_, Some(dir)) => Ok(read_frame_dir(dir, Fps::default())?),
        _ => unreachable!("clap enforces one input"),
    }
}

fn save_clip(clip: &Clip, output: &OutputArgs) -> Result<(), CliError> {
    if let Some(path) = &output.output {
        fs::write(path, write_avi(clip))
            .map_err(|e| CliError::IoFormat(format!("writing {}: {e}", path.display())))?;
    } else if let Some(dir) = &output.output_frames {
        write_frame_dir(clip, dir)?;
    }
    Ok(())
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let clip = load_clip(args.input.input_avi.as_deref(), args.input.input_frames.as_deref())?;
    let params = args.analysis.params()?;
    let map = analyze(&clip, &params);

    if let Some(dir) = &args.mask_out {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::IoFormat(format!("creating {}: {e}", dir.display())))?;
        for frame in 0..map.frame_count() {
            let path = dir.join(format!("mask_{:06}.pgm", frame + 1));
            fs::write(&path, map.to_pgm(frame))
                .map_err(|e| CliError::IoFormat(format!("writing {}: {e}", path.display())))?;
        }
    }

    let counts = map.frame_region_counts();
    let total_static: u64 = counts.iter().map(|(s, _)| s).sum();
    let total_dynamic: u64 = counts.iter().map(|(_, d)| d).sum();
    emit(&format!(
        "method={}\nwidth={}\nheight={}\nframes={}\nstatic_pixels_total={}\ndynamic_pixels_total={}\n",
        method_kebab(params.method),
        clip.width(),
        clip.height(),
        clip.frame_count(),
        total_static,
        total_dynamic
    ));
    for (i, (s, d)) in counts.iter().enumerate() {
        emit(&format!(
            "frame_{i:04}_static_pixels={s}\nframe_{i:04}_dynamic_pixels={d}\n"
        ));
    }
    Ok(())
}

/// Write report text to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn method_kebab(method: DetectionMethod) -> &'static str {
    match method {
        DetectionMethod::PixelDiff => "pixel-diff",
        DetectionMethod::BlockLikelihood => "block",
        DetectionMethod::ColorHistogram => "histogram",
    }
}

fn run_capacity(args: CapacityArgs) -> Result<(), CliError> {
    let clip = load_clip(args.input.input_avi.as_deref(), args.input.input_frames.as_deref())?;
    let params = args.analysis.params()?;
    let key = args.keys.static_key()?;
    let report = capacity(&clip, &params, key.as_deref())?;
    emit(&report.to_kv_text());
    Ok(())
}

fn run_embed(args: EmbedArgs) -> Result<(), CliError> {
    let cover = load_clip(args.input.input_avi.as_deref(), args.input.input_frames.as_deref())?;
    let params = args.analysis.params()?;

    let read_payload = |path: &PathBuf| -> Result<Vec<u8>, CliError> {
        fs::read(path).map_err(|e| {
            CliError::IoFormat(format!("reading payload {}: {e}", path.display()))
        })
    };
    let static_payload = args.payloads.payload.as_ref().map(read_payload).transpose()?;
    let dynamic_payload = args
        .payloads
        .payload_dynamic
        .as_ref()
        .map(read_payload)
        .transpose()?;
    let static_key = args.keys.static_key()?;
    let dynamic_key = args.keys.dynamic_key()?;

    let (stego, report) = embed(
        &cover,
        &params,
        static_payload.as_deref(),
        dynamic_payload.as_deref(),
        static_key.as_deref(),
        dynamic_key.as_deref(),
    )?;
    save_clip(&stego, &args.output)?;
    emit(&report.to_kv_text());
    Ok(())
}

fn run_extract(args: ExtractArgs) -> Result<(), CliError> {
    let stego = load_clip(args.input.input_avi.as_deref(), args.input.input_frames.as_deref())?;
    let static_key = args.keys.static_key()?;
    let dynamic_key = args.keys.dynamic_key()?;
    let result = extract(&stego, static_key.as_deref(), dynamic_key.as_deref())?;

    fs::write(&args.out, &result.static_payload)
        .map_err(|e| CliError::IoFormat(format!("writing {}: {e}", args.out.display())))?;
    if let Some(path) = &args.out_dynamic {
        fs::write(path, &result.dynamic_payload)
            .map_err(|e| CliError::IoFormat(format!("writing {}: {e}", path.display())))?;
    } else if !result.dynamic_payload.is_empty() {
        eprintln!(
            "note: {} dynamic payload bytes present; pass --out-dynamic to save them",
            result.dynamic_payload.len()
        );
    }
    emit(&format!(
        "method={}\nstatic_bytes={}\ndynamic_bytes={}\n",
        method_kebab(result.method),
        result.static_payload.len(),
        result.dynamic_payload.len()
    ));
    Ok(())
}

fn run_compare(args: CompareArgs) -> Result<(), CliError> {
    let cover = load_clip(args.cover.cover_avi.as_deref(), args.cover.cover_frames.as_deref())?;
    let stego = load_clip(args.stego.stego_avi.as_deref(), args.stego.stego_frames.as_deref())?;
    let report = compare(&cover, &stego)?;
    if args.pretty {
        emit(&report.to_table());
    } else {
        emit(&report.to_kv_text());
    }
    Ok(())
}

fn run_gen(args: GenArgs) -> Result<(), CliError> {
    let (bw, bh) = args.block;
    if bw == 0 || bh == 0 || bw > args.width || bh > args.height || args.frames == 0 {
        return Err(CliError::Usage(format!(
            "block {bw}x{bh} must be nonzero and fit inside {}x{}, frames must be positive",
            args.width, args.height
        )));
    }
    let spec = MovingBlockSpec {
        block_width: bw,
        block_height: bh,
        dx: args.velocity.0,
        dy: args.velocity.1,
    };
    let fps = Fps::whole(args.fps).map_err(|e| CliError::Usage(e.to_string()))?;
    let clip = gen_test_clip(args.width, args.height, args.frames, &spec, args.seed, fps);
    let paths = write_frame_dir(&clip, &args.out)?;
    emit(&format!(
        "frames_written={}\nwidth={}\nheight={}\nout={}\n",
        paths.len(),
        args.width,
        args.height,
        args.out.display()
    ));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Capacity(args) => run_capacity(args),
        Command::Embed(args) => run_embed(args),
        Command::Extract(args) => run_extract(args),
        Command::Compare(args) => run_compare(args),
        Command::Gen(args) => run_gen(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
