//! Joint (cross) bilateral filtering of a depth map guided by source luma.
//!
//! `D'(p) = sum_q w(p,q) D(q) / sum_q w(p,q)` over a square window of radius
//! `ceil(2 sigma_s)` clipped to the image, with
//! `w = exp(-|p-q|^2 / 2 sigma_s^2) * exp(-(I(p)-I(q))^2 / 2 sigma_r^2)`.
//!
//! Within each window row the taps at `-dx` and `+dx` are added together
//! before joining the running sum. Floating-point addition is commutative, so
//! filtering a mirrored input reproduces the mirrored output bit for bit.

use crate::config::ConversionConfig;
use crate::error::{check_dims, Result};
use crate::exec::Executor;
use crate::imgcore::{round_u8, GrayMap};

pub fn filter_radius(sigma_spatial: f64) -> usize {
    (2.0 * sigma_spatial).ceil() as usize
}

struct Kernel {
    radius: usize,
    /// `(2r+1)^2` spatial weights, row-major by `(dy, dx)`.
    spatial: Vec<f64>,
    /// Range weight per absolute luma difference.
    range: [f64; 256],
}

impl Kernel {
    fn new(sigma_spatial: f64, sigma_range: f64) -> Self {
        let radius = filter_radius(sigma_spatial);
        let side = 2 * radius + 1;
        let r = radius as isize;
        let two_ss = 2.0 * sigma_spatial * sigma_spatial;
        let mut spatial = Vec::with_capacity(side * side);
        for dy in -r..=r {
            for dx in -r..=r {
                spatial.push((-((dx * dx + dy * dy) as f64) / two_ss).exp());
            }
        }
        let two_sr = 2.0 * sigma_range * sigma_range;
        let mut range = [0.0; 256];
        for (d, w) in range.iter_mut().enumerate() {
            *w = (-((d * d) as f64) / two_sr).exp();
        }
        Self {
            radius,
            spatial,
            range,
        }
    }

    #[inline]
    fn eval(&self, depth: &GrayMap, guide: &GrayMap, x: usize, y: usize) -> f64 {
        let (w, h) = depth.dims();
        let r = self.radius;
        let side = 2 * r + 1;
        let ip = guide.get(x, y) as i32;
        let y0 = y.saturating_sub(r);
        let y1 = (y + r).min(h - 1);
        let mut num = 0.0;
        let mut den = 0.0;
        for qy in y0..=y1 {
            let srow = &self.spatial[(qy + r - y) * side..(qy + r - y + 1) * side];
            let drow = depth.row(qy);
            let grow = guide.row(qy);
            let tap = |qx: usize, k: usize| -> (f64, f64) {
                let wt = srow[k] * self.range[(ip - grow[qx] as i32).unsigned_abs() as usize];
                (wt * drow[qx] as f64, wt)
            };
            let (mut rn, mut rd) = tap(x, r);
            if x >= r && x + r < w {
                for k in 1..=r {
                    let (nl, dl) = tap(x - k, r - k);
                    let (nr, dr) = tap(x + k, r + k);
                    rn += nl + nr;
                    rd += dl + dr;
                }
            } else {
                for k in 1..=r {
                    let (nl, dl) = if x >= k { tap(x - k, r - k) } else { (0.0, 0.0) };
                    let (nr, dr) = if x + k < w { tap(x + k, r + k) } else { (0.0, 0.0) };
                    rn += nl + nr;
                    rd += dl + dr;
                }
            }
            num += rn;
            den += rd;
        }
        num / den
    }
}

/// Filtered depth before rounding, row-major.
pub fn cross_bilateral_unrounded(
    depth: &GrayMap,
    guide: &GrayMap,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<Vec<f64>> {
    check_dims(depth.dims(), guide.dims())?;
    let kernel = Kernel::new(cfg.sigma_spatial, cfg.sigma_range);
    let mut out = vec![0.0; depth.data().len()];
    exec.fill_rows(&mut out, depth.width(), |y, row| {
        for (x, v) in row.iter_mut().enumerate() {
            *v = kernel.eval(depth, guide, x, y);
        }
    });
    Ok(out)
}

pub fn cross_bilateral(
    depth: &GrayMap,
    guide: &GrayMap,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<GrayMap> {
    check_dims(depth.dims(), guide.dims())?;
    let kernel = Kernel::new(cfg.sigma_spatial, cfg.sigma_range);
    let mut out = GrayMap::new(depth.width(), depth.height())?;
    let width = depth.width();
    exec.fill_rows(out.data_mut(), width, |y, row| {
        for (x, v) in row.iter_mut().enumerate() {
            *v = round_u8(kernel.eval(depth, guide, x, y));
        }
    });
    Ok(out)
}
