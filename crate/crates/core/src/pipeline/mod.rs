//! Stage orchestration: depth -> filter -> DIBR -> inpaint -> format.
//!
//! Depth generation runs on the calling thread. Every later stage runs on
//! the [`Executor`] and is timed individually; their sum is the "pure"
//! compute time, which leaves out depth generation and all I/O.

mod bench;
mod sequence;

pub use bench::{bench, synthetic_frame, BenchReport, BenchRow, BENCH_CSV_HEADER};
pub use sequence::{
    convert_sequence, DirSink, FrameRecord, FrameSink, FrameSource, MemorySink, PatternSource,
    SequenceError, SequenceReport, VecSource, FRAME_CSV_HEADER,
};

use std::collections::BTreeMap;
use std::time::Instant;

use crate::config::{ConversionConfig, OutputFormat};
use crate::depthgen::generate_depth;
use crate::dibr::{reconstruct, StereoFrames};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::imgcore::{luma, GrayMap, ImageRGB8};
use crate::inpaint::inpaint;
use crate::stereofmt::{anaglyph, side_by_side};
use crate::xbfilter::cross_bilateral;

/// Per-stage wall time in nanoseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub depth_gen_ns: u64,
    pub filter_ns: u64,
    pub dibr_ns: u64,
    pub inpaint_left_ns: u64,
    pub inpaint_right_ns: u64,
    pub format_ns: u64,
    /// `filter + dibr + inpaint_left + inpaint_right + format`.
    pub pure_ns: u64,
}

impl StageTimings {
    fn finish(mut self) -> Self {
        self.pure_ns = self.filter_ns
            + self.dibr_ns
            + self.inpaint_left_ns
            + self.inpaint_right_ns
            + self.format_ns;
        self
    }
}

#[derive(Clone, Debug)]
pub struct ConversionResult {
    pub outputs: BTreeMap<OutputFormat, ImageRGB8>,
    pub depth: GrayMap,
    pub filtered_depth: GrayMap,
    pub timings: StageTimings,
}

fn timed<T>(slot: &mut u64, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot = start.elapsed().as_nanos() as u64;
    out
}

/// Runs the full conversion of one frame.
pub fn convert_image(
    src: &ImageRGB8,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<ConversionResult> {
    cfg.validate()?;
    if cfg.output_formats.contains(&OutputFormat::Hsbs) && !src.width().is_multiple_of(2) {
        return Err(Error::OddWidth(src.width()));
    }
    let mut t = StageTimings::default();

    let depth = timed(&mut t.depth_gen_ns, || generate_depth(src, cfg));

    let filtered_depth = timed(&mut t.filter_ns, || {
        let guide = luma(src);
        cross_bilateral(&depth, &guide, cfg, exec)
    })?;

    let StereoFrames {
        left,
        right,
        left_mask,
        right_mask,
    } = timed(&mut t.dibr_ns, || reconstruct(src, &filtered_depth, cfg, exec))?;

    let left = if left_mask.is_clean() {
        left
    } else {
        timed(&mut t.inpaint_left_ns, || inpaint(&left, &left_mask, cfg, exec))?
    };
    let right = if right_mask.is_clean() {
        right
    } else {
        timed(&mut t.inpaint_right_ns, || inpaint(&right, &right_mask, cfg, exec))?
    };

    let outputs = timed(&mut t.format_ns, || {
        cfg.output_formats
            .iter()
            .map(|&f| {
                let img = match f {
                    OutputFormat::Anaglyph => anaglyph(&left, &right),
                    OutputFormat::Hsbs => side_by_side(&left, &right, true, exec),
                    OutputFormat::Fsbs => side_by_side(&left, &right, false, exec),
                }?;
                Ok((f, img))
            })
            .collect::<Result<BTreeMap<_, _>>>()
    })?;

    Ok(ConversionResult {
        outputs,
        depth,
        filtered_depth,
        timings: t.finish(),
    })
}
