//! Depth-image-based rendering of the left and right eye frames.
//!
//! Parallax is purely horizontal: row `y` of either eye depends only on row
//! `y` of the source and of the depth map, so rows are rendered in parallel.

use rayon::prelude::*;

use crate::config::{ConversionConfig, DibrMode};
use crate::error::{check_dims, Result};
use crate::exec::Executor;
use crate::imgcore::{DamageMask, GrayMap, ImageRGB8};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StereoFrames {
    pub left: ImageRGB8,
    pub right: ImageRGB8,
    pub left_mask: DamageMask,
    pub right_mask: DamageMask,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Eye {
    Left,
    Right,
}

/// Signed offset added to `x` to get the left-eye sample column.
///
/// Above the threshold the pixel pops out and the eyes diverge
/// (`x - s`, `s = B/2 * D/255`); otherwise they converge by
/// `s' = B/2 * (1 - D/255)`. The right eye uses the negated offset.
#[inline]
fn left_offset(depth: u8, base: u32, pop_threshold: u8) -> f64 {
    let half = base as f64 / 2.0;
    let d = depth as f64 / 255.0;
    if depth > pop_threshold {
        -(half * d)
    } else {
        half * (1.0 - d)
    }
}

/// Real-valued sample columns `(xL, xR)` for source column `x` at depth `depth`.
///
/// Callers truncate the whole expression toward zero to get integer columns.
pub fn shift_pair(x: usize, depth: u8, base: u32, pop_threshold: u8) -> (f64, f64) {
    let o = left_offset(depth, base, pop_threshold);
    let x = x as f64;
    (x + o, x - o)
}

#[inline]
fn sample_column(x: usize, depth: u8, base: u32, threshold: u8, eye: Eye) -> i64 {
    let (xl, xr) = shift_pair(x, depth, base, threshold);
    match eye {
        Eye::Left => xl as i64,
        Eye::Right => xr as i64,
    }
}

/// Destination of a forward splat: the sign-inverse of the sampling offset.
#[inline]
fn splat_column(x: usize, depth: u8, base: u32, threshold: u8, eye: Eye) -> i64 {
    let o = left_offset(depth, base, threshold);
    let x = x as f64;
    match eye {
        Eye::Left => (x - o) as i64,
        Eye::Right => (x + o) as i64,
    }
}

fn render_eye(
    src: &ImageRGB8,
    depth: &GrayMap,
    base: u32,
    threshold: u8,
    mode: DibrMode,
    eye: Eye,
    exec: &Executor,
) -> (ImageRGB8, DamageMask) {
    let (w, h) = src.dims();
    let mut out = ImageRGB8::new(w, h).expect("source dims are valid");
    let mut mask = DamageMask::clean(w, h).expect("source dims are valid");
    let [sr, sg, sb] = src.planes();
    let [or, og, ob] = out.planes_mut();
    let row_kernel = |y: usize, or: &mut [u8], og: &mut [u8], ob: &mut [u8], m: &mut [bool]| {
        let off = y * w;
        let drow = depth.row(y);
        match mode {
            DibrMode::BackwardFallback => {
                for x in 0..w {
                    let c = sample_column(x, drow[x], base, threshold, eye);
                    let sx = if c >= 0 && (c as usize) < w { c as usize } else { x };
                    or[x] = sr[off + sx];
                    og[x] = sg[off + sx];
                    ob[x] = sb[off + sx];
                }
            }
            DibrMode::ForwardZBuffer => {
                let mut zbuf: Vec<Option<u8>> = vec![None; w];
                for x in 0..w {
                    let c = splat_column(x, drow[x], base, threshold, eye);
                    if c < 0 || c as usize >= w {
                        continue;
                    }
                    let dst = c as usize;
                    // Nearer wins; on equal depth the first (smallest x) writer stays.
                    if zbuf[dst].is_none_or(|z| drow[x] > z) {
                        zbuf[dst] = Some(drow[x]);
                        or[dst] = sr[off + x];
                        og[dst] = sg[off + x];
                        ob[dst] = sb[off + x];
                    }
                }
                for (m, z) in m.iter_mut().zip(&zbuf) {
                    *m = z.is_none();
                }
            }
        }
    };
    exec.install(|| {
        or.par_chunks_mut(w)
            .zip(og.par_chunks_mut(w))
            .zip(ob.par_chunks_mut(w))
            .zip(mask.as_mut_slice().par_chunks_mut(w))
            .enumerate()
            .for_each(|(y, (((r, g), b), m))| row_kernel(y, r, g, b, m))
    });
    (out, mask)
}

fn reconstruct_with(
    src: &ImageRGB8,
    depth: &GrayMap,
    cfg: &ConversionConfig,
    mode: DibrMode,
    exec: &Executor,
) -> Result<StereoFrames> {
    check_dims(src.dims(), depth.dims())?;
    let base = cfg.base_for(src.width());
    let t = cfg.pop_threshold;
    let (left, left_mask) = render_eye(src, depth, base, t, mode, Eye::Left, exec);
    let (right, right_mask) = render_eye(src, depth, base, t, mode, Eye::Right, exec);
    Ok(StereoFrames {
        left,
        right,
        left_mask,
        right_mask,
    })
}

/// Samples the source at the shifted column, or at `x` itself when that
/// column falls outside the frame. Masks come back clean.
pub fn reconstruct_backward(
    src: &ImageRGB8,
    depth: &GrayMap,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<StereoFrames> {
    reconstruct_with(src, depth, cfg, DibrMode::BackwardFallback, exec)
}

/// Splats every source pixel to its shifted column with a per-row depth
/// buffer. Destinations nobody wrote stay black and are flagged damaged.
pub fn reconstruct_forward(
    src: &ImageRGB8,
    depth: &GrayMap,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<StereoFrames> {
    reconstruct_with(src, depth, cfg, DibrMode::ForwardZBuffer, exec)
}

/// Dispatches on `cfg.dibr_mode`.
pub fn reconstruct(
    src: &ImageRGB8,
    depth: &GrayMap,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<StereoFrames> {
    reconstruct_with(src, depth, cfg, cfg.dibr_mode, exec)
}
