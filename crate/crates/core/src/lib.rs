//! 2D-to-3D pseudo-stereo conversion.
//!
//! A single image goes through a fixed sequence of stages:
//!
//! 1. [`depthgen`]: depth map from edge density and a ground-plane prior
//!    (serial).
//! 2. [`xbfilter`]: cross-bilateral smoothing of the depth map, guided by the
//!    source luma.
//! 3. [`dibr`]: left/right eye reconstruction by horizontal pixel shifting.
//! 4. [`inpaint`]: hole filling for pixels no source pixel landed on.
//! 5. [`stereofmt`]: anaglyph and side-by-side output frames.
//!
//! Stages 2 to 5 run on an [`Executor`] and produce byte-identical output for
//! any worker count. [`pipeline`] ties the stages together, converts frame
//! sequences and benchmarks serial against parallel execution.
//!
//! ```
//! use pseudo3d::{convert_image, synthetic_frame, ConversionConfig, Executor, OutputFormat};
//!
//! let src = synthetic_frame(64, 48, 1);
//! let cfg = ConversionConfig::default().with_base(4).with_formats([OutputFormat::Anaglyph]);
//! let result = convert_image(&src, &cfg, &Executor::serial()).unwrap();
//! assert_eq!(result.outputs[&OutputFormat::Anaglyph].dims(), (64, 48));
//! ```

pub mod cli;
pub mod config;
pub mod depthgen;
pub mod dibr;
pub mod error;
pub mod exec;
pub mod imgcore;
pub mod inpaint;
pub mod pipeline;
pub mod stereofmt;
pub mod xbfilter;

pub use config::{ConversionConfig, DibrMode, OutputFormat};
pub use error::{Error, PnmError, Result};
pub use exec::Executor;
pub use imgcore::{decode_pgm, decode_ppm, encode_pgm, encode_ppm, luma, DamageMask, GrayMap, ImageRGB8};
pub use pipeline::{
    bench, convert_image, convert_sequence, synthetic_frame, BenchReport, ConversionResult,
    SequenceReport, StageTimings,
};
