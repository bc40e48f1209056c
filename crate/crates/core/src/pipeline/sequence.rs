//! Frame-sequence conversion: video handled as numbered PPM frames.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use super::{convert_image, StageTimings};
use crate::config::{ConversionConfig, OutputFormat};
use crate::error::Error;
use crate::exec::Executor;
use crate::imgcore::{decode_ppm, encode_ppm, ImageRGB8};

pub const FRAME_CSV_HEADER: &str =
    "index,depth_ns,filter_ns,dibr_ns,inpaint_l_ns,inpaint_r_ns,format_ns,pure_ns";

/// One undecoded frame from a source.
#[derive(Clone, Debug)]
pub struct SourceFrame {
    pub index: u64,
    /// Stem used to name this frame's outputs.
    pub name: String,
    pub bytes: Vec<u8>,
}

/// Ordered supply of PPM-encoded frames.
pub trait FrameSource {
    fn next_frame(&mut self) -> Option<io::Result<SourceFrame>>;
}

/// Destination for converted frames.
pub trait FrameSink {
    fn write(&mut self, frame: &FrameRecord, format: OutputFormat, img: &ImageRGB8) -> io::Result<()>;
}

/// Frames named by a printf-style numeric pattern such as `frame_%06d.ppm`.
///
/// Enumeration starts at index 0, or at 1 if frame 0 is absent, and stops at
/// the first missing index.
#[derive(Debug)]
pub struct PatternSource {
    dir: PathBuf,
    prefix: String,
    suffix: String,
    pad: usize,
    next: Option<u64>,
}

impl PatternSource {
    pub fn new(dir: impl Into<PathBuf>, pattern: &str) -> Result<Self, String> {
        let start = pattern
            .find('%')
            .ok_or_else(|| format!("pattern '{pattern}' has no %d placeholder"))?;
        let rest = &pattern[start + 1..];
        let end = rest
            .find('d')
            .ok_or_else(|| format!("pattern '{pattern}' has no %d placeholder"))?;
        let spec = &rest[..end];
        let pad = if spec.is_empty() {
            0
        } else if spec.starts_with('0') && spec[1..].chars().all(|c| c.is_ascii_digit()) && spec.len() > 1 {
            spec[1..].parse().map_err(|_| format!("bad width in '{pattern}'"))?
        } else {
            return Err(format!("unsupported placeholder '%{spec}d' (use %d or %0Nd)"));
        };
        let suffix = &rest[end + 1..];
        if suffix.contains('%') {
            return Err(format!("pattern '{pattern}' has more than one placeholder"));
        }
        Ok(Self {
            dir: dir.into(),
            prefix: pattern[..start].to_string(),
            suffix: suffix.to_string(),
            pad,
            next: None,
        })
    }

    pub fn file_name(&self, index: u64) -> String {
        format!("{}{:0pad$}{}", self.prefix, index, self.suffix, pad = self.pad)
    }

    pub fn path(&self, index: u64) -> PathBuf {
        self.dir.join(self.file_name(index))
    }
}

impl FrameSource for PatternSource {
    fn next_frame(&mut self) -> Option<io::Result<SourceFrame>> {
        let index = match self.next {
            Some(i) => i,
            None if self.path(0).exists() => 0,
            None => 1,
        };
        let path = self.path(index);
        if !path.exists() {
            self.next = Some(index);
            return None;
        }
        self.next = Some(index + 1);
        let name = Path::new(&self.file_name(index))
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| index.to_string());
        Some(fs::read(&path).map(|bytes| SourceFrame { index, name, bytes }))
    }
}

/// In-memory frames, indexed from 0.
#[derive(Debug, Default)]
pub struct VecSource {
    frames: std::vec::IntoIter<Vec<u8>>,
    next: u64,
}

impl VecSource {
    pub fn new(frames: Vec<Vec<u8>>) -> Self {
        Self {
            frames: frames.into_iter(),
            next: 0,
        }
    }
}

impl FrameSource for VecSource {
    fn next_frame(&mut self) -> Option<io::Result<SourceFrame>> {
        let bytes = self.frames.next()?;
        let index = self.next;
        self.next += 1;
        Some(Ok(SourceFrame {
            index,
            name: format!("frame_{index:06}"),
            bytes,
        }))
    }
}

/// Writes `<name>_<format>.ppm` files into a directory.
#[derive(Debug)]
pub struct DirSink {
    dir: PathBuf,
}

impl DirSink {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }
}

impl FrameSink for DirSink {
    fn write(&mut self, frame: &FrameRecord, format: OutputFormat, img: &ImageRGB8) -> io::Result<()> {
        let path = self.dir.join(format!("{}_{}.ppm", frame.name, format));
        fs::write(path, encode_ppm(img))
    }
}

/// Keeps converted frames in memory.
#[derive(Debug, Default)]
pub struct MemorySink {
    pub frames: Vec<(u64, OutputFormat, ImageRGB8)>,
}

impl FrameSink for MemorySink {
    fn write(&mut self, frame: &FrameRecord, format: OutputFormat, img: &ImageRGB8) -> io::Result<()> {
        self.frames.push((frame.index, format, img.clone()));
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameRecord {
    pub index: u64,
    pub name: String,
    pub timings: StageTimings,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequenceReport {
    pub frames: Vec<FrameRecord>,
    pub outputs_written: usize,
    /// Wall time of the whole run, decode and disk included.
    pub wall_ns: u64,
}

impl SequenceReport {
    pub fn sum_pure_ns(&self) -> u64 {
        self.frames.iter().map(|f| f.timings.pure_ns).sum()
    }

    pub fn mean_pure_ns(&self) -> Option<f64> {
        (!self.frames.is_empty()).then(|| self.sum_pure_ns() as f64 / self.frames.len() as f64)
    }

    pub fn min_pure_ns(&self) -> Option<u64> {
        self.frames.iter().map(|f| f.timings.pure_ns).min()
    }

    pub fn max_pure_ns(&self) -> Option<u64> {
        self.frames.iter().map(|f| f.timings.pure_ns).max()
    }

    pub fn sum_depth_ns(&self) -> u64 {
        self.frames.iter().map(|f| f.timings.depth_gen_ns).sum()
    }

    /// Wall time not spent in any timed stage (decode, encode, disk access).
    pub fn io_ns(&self) -> u64 {
        self.wall_ns
            .saturating_sub(self.sum_pure_ns() + self.sum_depth_ns())
    }

    /// Per-frame timing rows under [`FRAME_CSV_HEADER`], LF line endings.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(FRAME_CSV_HEADER);
        s.push('\n');
        for f in &self.frames {
            let t = &f.timings;
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                f.index,
                t.depth_gen_ns,
                t.filter_ns,
                t.dibr_ns,
                t.inpaint_left_ns,
                t.inpaint_right_ns,
                t.format_ns,
                t.pure_ns
            );
        }
        s
    }

    pub fn summary_line(&self) -> String {
        let ms = |ns: u64| ns as f64 / 1e6;
        format!(
            "frames={} outputs={} pure_sum_ms={:.3} pure_mean_ms={:.3} pure_min_ms={:.3} pure_max_ms={:.3} depth_ms={:.3} io_ms={:.3} wall_ms={:.3}",
            self.frames.len(),
            self.outputs_written,
            ms(self.sum_pure_ns()),
            self.mean_pure_ns().unwrap_or(0.0) / 1e6,
            ms(self.min_pure_ns().unwrap_or(0)),
            ms(self.max_pure_ns().unwrap_or(0)),
            ms(self.sum_depth_ns()),
            ms(self.io_ns()),
            ms(self.wall_ns),
        )
    }
}

/// Aborted sequence conversion. `report` covers the frames completed (and
/// outputs written) before the failure.
#[derive(Debug, Error)]
#[error("frame {index}: {source}")]
pub struct SequenceError {
    pub index: u64,
    #[source]
    pub source: Error,
    pub report: SequenceReport,
}

/// Converts every frame of `frames` and hands each requested output to `sink`.
pub fn convert_sequence(
    frames: &mut dyn FrameSource,
    cfg: &ConversionConfig,
    exec: &Executor,
    sink: &mut dyn FrameSink,
) -> Result<SequenceReport, SequenceError> {
    let start = Instant::now();
    let mut report = SequenceReport::default();
    let mut expected_index = 0u64;
    let fail = |index: u64, source: Error, mut report: SequenceReport| {
        report.wall_ns = start.elapsed().as_nanos() as u64;
        SequenceError {
            index,
            source,
            report,
        }
    };
    while let Some(frame) = frames.next_frame() {
        let frame = match frame {
            Ok(f) => f,
            Err(e) => return Err(fail(expected_index, e.into(), report)),
        };
        expected_index = frame.index + 1;
        let img = match decode_ppm(&frame.bytes) {
            Ok(img) => img,
            Err(e) => return Err(fail(frame.index, e.into(), report)),
        };
        let result = match convert_image(&img, cfg, exec) {
            Ok(r) => r,
            Err(e) => return Err(fail(frame.index, e, report)),
        };
        let record = FrameRecord {
            index: frame.index,
            name: frame.name,
            timings: result.timings,
        };
        for (&format, out) in &result.outputs {
            if let Err(e) = sink.write(&record, format, out) {
                return Err(fail(frame.index, e.into(), report));
            }
            report.outputs_written += 1;
        }
        report.frames.push(record);
    }
    report.wall_ns = start.elapsed().as_nanos() as u64;
    Ok(report)
}
