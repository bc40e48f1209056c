//! Independent reference implementations used to check the library.
//!
//! These are written from the stage definitions directly, with naive loops
//! and no shared code paths with the crate beyond the raster types.
#![allow(dead_code)]

use pseudo3d::{DamageMask, GrayMap, ImageRGB8};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_image(rng: &mut ChaCha8Rng, w: usize, h: usize) -> ImageRGB8 {
    let bytes: Vec<u8> = (0..w * h * 3).map(|_| rng.random()).collect();
    ImageRGB8::from_interleaved(w, h, &bytes).unwrap()
}

pub fn random_gray(rng: &mut ChaCha8Rng, w: usize, h: usize) -> GrayMap {
    GrayMap::from_vec(w, h, (0..w * h).map(|_| rng.random()).collect()).unwrap()
}

/// Sample column per the shift rule: above the threshold the eyes diverge by
/// `B/2 * D/255`, otherwise they converge by `B/2 * (1 - D/255)`.
/// Returns untruncated `(x_left, x_right)`.
pub fn ref_shift(x: usize, d: u8, base: u32, t: u8) -> (f64, f64) {
    let x = x as f64;
    let half = base as f64 / 2.0;
    let dn = d as f64 / 255.0;
    if d > t {
        let s = half * dn;
        (x - s, x + s)
    } else {
        let s = half * (1.0 - dn);
        (x + s, x - s)
    }
}

/// Backward sampling with out-of-range fallback, one pixel at a time.
pub fn ref_backward(src: &ImageRGB8, depth: &GrayMap, base: u32, t: u8) -> (ImageRGB8, ImageRGB8) {
    let (w, h) = src.dims();
    let mut left = ImageRGB8::new(w, h).unwrap();
    let mut right = ImageRGB8::new(w, h).unwrap();
    for y in 0..h {
        for x in 0..w {
            let (xl, xr) = ref_shift(x, depth.get(x, y), base, t);
            let (cl, cr) = (xl as i64, xr as i64);
            let pick = |c: i64| if c >= 0 && c < w as i64 { c as usize } else { x };
            left.set(x, y, src.get(pick(cl), y));
            right.set(x, y, src.get(pick(cr), y));
        }
    }
    (left, right)
}

/// Untruncated forward splat targets `(left, right)`: the sampling offsets
/// with their sign flipped.
pub fn ref_splat(x: usize, d: u8, base: u32, t: u8) -> (f64, f64) {
    let x = x as f64;
    let half = base as f64 / 2.0;
    let dn = d as f64 / 255.0;
    if d > t {
        let s = half * dn;
        (x + s, x - s)
    } else {
        let s = half * (1.0 - dn);
        (x - s, x + s)
    }
}

/// Forward splat resolved per destination: among all sources landing on a
/// destination, the largest depth wins, then the smallest source column.
pub fn ref_forward(
    src: &ImageRGB8,
    depth: &GrayMap,
    base: u32,
    t: u8,
) -> (ImageRGB8, ImageRGB8, DamageMask, DamageMask) {
    let (w, h) = src.dims();
    let mut left = ImageRGB8::new(w, h).unwrap();
    let mut right = ImageRGB8::new(w, h).unwrap();
    let mut lm = DamageMask::all_damaged(w, h).unwrap();
    let mut rm = DamageMask::all_damaged(w, h).unwrap();
    for y in 0..h {
        for dst in 0..w {
            for (eye, img, mask) in [(0, &mut left, &mut lm), (1, &mut right, &mut rm)] {
                let mut best: Option<(u8, usize)> = None;
                for x in 0..w {
                    let d = depth.get(x, y);
                    let (tl, tr) = ref_splat(x, d, base, t);
                    let target = if eye == 0 { tl as i64 } else { tr as i64 };
                    if target != dst as i64 {
                        continue;
                    }
                    best = match best {
                        None => Some((d, x)),
                        Some((bd, bx)) if d > bd || (d == bd && x < bx) => Some((d, x)),
                        keep => keep,
                    };
                }
                if let Some((_, sx)) = best {
                    img.set(dst, y, src.get(sx, y));
                    mask.set(dst, y, false);
                }
            }
        }
    }
    (left, right, lm, rm)
}

/// Snapshot-pass hole filling over the whole frame, no tiling, no worklists.
/// Returns the image and the number of passes (fallback counted as one).
pub fn ref_inpaint(frame: &ImageRGB8, mask: &DamageMask) -> (ImageRGB8, usize) {
    let (w, h) = frame.dims();
    let mut img = frame.clone();
    let mut dmg: Vec<bool> = mask.as_slice().to_vec();
    let mut passes = 0;
    loop {
        if !dmg.iter().any(|&d| d) {
            return (img, passes);
        }
        let snap_img = img.clone();
        let snap = dmg.clone();
        let mut repaired = 0;
        for y in 0..h {
            for x in 0..w {
                if !snap[y * w + x] {
                    continue;
                }
                let mut sum = [0u32; 3];
                let mut n = 0u32;
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                        if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                            continue;
                        }
                        let (nx, ny) = (nx as usize, ny as usize);
                        if snap[ny * w + nx] {
                            continue;
                        }
                        let c = snap_img.get(nx, ny);
                        for k in 0..3 {
                            sum[k] += c[k] as u32;
                        }
                        n += 1;
                    }
                }
                if n >= 2 {
                    let mean = |s: u32| (s as f64 / n as f64 + 0.5).floor() as u8;
                    img.set(x, y, [mean(sum[0]), mean(sum[1]), mean(sum[2])]);
                    dmg[y * w + x] = false;
                    repaired += 1;
                }
            }
        }
        passes += 1;
        if repaired == 0 {
            for y in 0..h {
                for x in 0..w {
                    if dmg[y * w + x] {
                        img.set(x, y, [128, 128, 128]);
                        dmg[y * w + x] = false;
                    }
                }
            }
            return (img, passes);
        }
    }
}

/// Plain Gaussian blur over the clipped square window of radius `ceil(2 sigma)`,
/// before rounding.
pub fn ref_gaussian(depth: &GrayMap, sigma: f64) -> Vec<f64> {
    let (w, h) = depth.dims();
    let r = (2.0 * sigma).ceil() as i64;
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let (mut num, mut den) = (0.0, 0.0);
            for qy in (y - r).max(0)..=(y + r).min(h as i64 - 1) {
                for qx in (x - r).max(0)..=(x + r).min(w as i64 - 1) {
                    let d2 = ((qx - x).pow(2) + (qy - y).pow(2)) as f64;
                    let wt = (-d2 / (2.0 * sigma * sigma)).exp();
                    num += wt * depth.get(qx as usize, qy as usize) as f64;
                    den += wt;
                }
            }
            out.push(num / den);
        }
    }
    out
}
