//! Single-image depth estimation from edge density and a ground-plane prior.
//!
//! The map is built per block: a vertical ramp (lower rows are nearer) blended
//! with the mean Sobel magnitude of the block, then bilinearly upsampled from
//! block centres to full resolution. Larger values mean nearer to the viewer.
//! This stage always runs serially.

use crate::config::ConversionConfig;
use crate::imgcore::{luma, round_u8, GrayMap, ImageRGB8};

/// Per-block depth values before upsampling.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockGrid {
    pub blocks_x: usize,
    pub blocks_y: usize,
    pub block: usize,
    pub width: usize,
    pub height: usize,
    /// Row-major `blocks_x * blocks_y` values in `[0, 255]`.
    pub values: Vec<f64>,
}

impl BlockGrid {
    pub fn get(&self, bx: usize, by: usize) -> f64 {
        self.values[by * self.blocks_x + bx]
    }

    /// Centre coordinates of the blocks along the x axis.
    pub fn centers_x(&self) -> Vec<f64> {
        block_centers(self.width, self.block)
    }

    pub fn centers_y(&self) -> Vec<f64> {
        block_centers(self.height, self.block)
    }
}

fn block_centers(len: usize, block: usize) -> Vec<f64> {
    (0..len.div_ceil(block))
        .map(|i| {
            let start = i * block;
            let end = (start + block).min(len);
            (start + end - 1) as f64 / 2.0
        })
        .collect()
}

/// `min(255, (|Gx| + |Gy|) / 4)` with 3x3 Sobel kernels and clamp-to-edge borders.
pub fn sobel_magnitude(gray: &GrayMap) -> GrayMap {
    let (w, h) = gray.dims();
    let px = |x: isize, y: isize| -> i32 {
        let x = x.clamp(0, w as isize - 1) as usize;
        let y = y.clamp(0, h as isize - 1) as usize;
        gray.get(x, y) as i32
    };
    let mut out = GrayMap::new(w, h).expect("same dims as input");
    for y in 0..h as isize {
        for x in 0..w as isize {
            let gx = px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)
                - px(x - 1, y - 1)
                - 2 * px(x - 1, y)
                - px(x - 1, y + 1);
            let gy = px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)
                - px(x - 1, y - 1)
                - 2 * px(x, y - 1)
                - px(x + 1, y - 1);
            let g = ((gx.abs() + gy.abs()) / 4).min(255);
            out.set(x as usize, y as usize, g as u8);
        }
    }
    out
}

/// Block value: `alpha * 255 * y_c / (height - 1) + beta * mean(edges in block)`,
/// where `y_c` is the block's centre row.
pub fn block_depth(edges: &GrayMap, cfg: &ConversionConfig) -> BlockGrid {
    let (w, h) = edges.dims();
    let block = cfg.depth_block;
    let blocks_x = w.div_ceil(block);
    let blocks_y = h.div_ceil(block);
    let centers_y = block_centers(h, block);
    let mut values = Vec::with_capacity(blocks_x * blocks_y);
    for (by, &yc) in centers_y.iter().enumerate() {
        let ramp = if h > 1 { yc / (h - 1) as f64 } else { 0.0 };
        let y0 = by * block;
        let y1 = (y0 + block).min(h);
        for bx in 0..blocks_x {
            let x0 = bx * block;
            let x1 = (x0 + block).min(w);
            let mut sum = 0u64;
            for y in y0..y1 {
                sum += edges.row(y)[x0..x1].iter().map(|&v| v as u64).sum::<u64>();
            }
            let mean = sum as f64 / ((y1 - y0) * (x1 - x0)) as f64;
            values.push(cfg.alpha * 255.0 * ramp + cfg.beta * mean);
        }
    }
    BlockGrid {
        blocks_x,
        blocks_y,
        block,
        width: w,
        height: h,
        values,
    }
}

/// For each pixel coordinate: the lower sample index and the interpolation
/// weight toward the next sample, clamped outside the first/last centre.
fn interp_table(len: usize, centers: &[f64]) -> Vec<(usize, f64)> {
    let last = centers.len() - 1;
    (0..len)
        .map(|p| {
            let p = p as f64;
            if p <= centers[0] {
                (0, 0.0)
            } else if p >= centers[last] {
                (last, 0.0)
            } else {
                let i = centers.partition_point(|&c| c <= p) - 1;
                (i, (p - centers[i]) / (centers[i + 1] - centers[i]))
            }
        })
        .collect()
}

/// Exact when `a == b`, so flat block rows stay flat.
#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

/// Bilinear upsampling of block values with block centres as sample points.
pub fn upsample(grid: &BlockGrid) -> GrayMap {
    let tx = interp_table(grid.width, &grid.centers_x());
    let ty = interp_table(grid.height, &grid.centers_y());
    let mut out = GrayMap::new(grid.width, grid.height).expect("grid dims are non-zero");
    let bx_max = grid.blocks_x - 1;
    let by_max = grid.blocks_y - 1;
    for (y, &(j, fy)) in ty.iter().enumerate() {
        let j1 = (j + 1).min(by_max);
        for (x, &(i, fx)) in tx.iter().enumerate() {
            let i1 = (i + 1).min(bx_max);
            let top = lerp(grid.get(i, j), grid.get(i1, j), fx);
            let bottom = lerp(grid.get(i, j1), grid.get(i1, j1), fx);
            out.set(x, y, round_u8(lerp(top, bottom, fy)));
        }
    }
    out
}

/// Luma, Sobel, block depth, then bilinear upsampling.
pub fn generate_depth(img: &ImageRGB8, cfg: &ConversionConfig) -> GrayMap {
    let edges = sobel_magnitude(&luma(img));
    upsample(&block_depth(&edges, cfg))
}
