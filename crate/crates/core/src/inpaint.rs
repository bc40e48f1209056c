//! Block-based hole filling by iterative neighbour averaging.
//!
//! The frame is split into square tiles that serve as the parallel work unit.
//! Every pass works against a snapshot of the damage state taken at the pass
//! boundary: a damaged pixel with at least two undamaged 8-neighbours in the
//! snapshot takes the rounded mean of those neighbours and becomes undamaged
//! for the next pass. Neighbours in other tiles are read from the same
//! snapshot, so the result is independent of tile order and worker count.
//!
//! When a pass repairs nothing while damage remains, dropping the tiling
//! cannot help (the frame-wide pass would see the identical snapshot), so the
//! remaining pixels are set to mid gray.

use crate::config::ConversionConfig;
use crate::error::{check_dims, Result};
use crate::exec::Executor;
use crate::imgcore::{DamageMask, ImageRGB8};

pub const FALLBACK_COLOR: [u8; 3] = [128, 128, 128];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InpaintStats {
    /// Passes run, including the final fallback fill if it was needed.
    pub passes: usize,
    /// Pixels repaired from neighbours.
    pub repaired: usize,
    /// Pixels set to [`FALLBACK_COLOR`].
    pub fallback_filled: usize,
}

struct Tile {
    /// Still-damaged pixel indices, ascending.
    damaged: Vec<usize>,
}

fn build_tiles(mask: &DamageMask, block: usize) -> Vec<Tile> {
    let (w, h) = mask.dims();
    let tiles_x = w.div_ceil(block);
    let tiles_y = h.div_ceil(block);
    let mut tiles: Vec<Tile> = (0..tiles_x * tiles_y)
        .map(|_| Tile { damaged: Vec::new() })
        .collect();
    for y in 0..h {
        for x in 0..w {
            if mask.is_damaged(x, y) {
                tiles[(y / block) * tiles_x + x / block]
                    .damaged
                    .push(y * w + x);
            }
        }
    }
    tiles.retain(|t| !t.damaged.is_empty());
    tiles
}

/// Mean colour of the undamaged 8-neighbours of `idx`, if there are at least two.
#[inline]
fn repair_color(img: &ImageRGB8, damaged: &[bool], idx: usize) -> Option<[u8; 3]> {
    let (w, h) = img.dims();
    let (x, y) = (idx % w, idx / w);
    let [pr, pg, pb] = img.planes();
    let mut sum = [0u32; 3];
    let mut count = 0u32;
    for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
        for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
            let n = ny * w + nx;
            if n == idx || damaged[n] {
                continue;
            }
            sum[0] += pr[n] as u32;
            sum[1] += pg[n] as u32;
            sum[2] += pb[n] as u32;
            count += 1;
        }
    }
    (count >= 2).then(|| sum.map(|s| ((2 * s + count) / (2 * count)) as u8))
}

pub fn inpaint_with_stats(
    frame: &ImageRGB8,
    mask: &DamageMask,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<(ImageRGB8, InpaintStats)> {
    check_dims(frame.dims(), mask.dims())?;
    let mut img = frame.clone();
    let mut damaged = mask.as_slice().to_vec();
    let mut tiles = build_tiles(mask, cfg.inpaint_block.max(1));
    let mut stats = InpaintStats::default();

    while !tiles.is_empty() {
        let repairs: Vec<Vec<(usize, [u8; 3])>> = {
            let (img, damaged, tiles) = (&img, &damaged, &tiles);
            exec.map_indexed(tiles.len(), |t| {
                tiles[t]
                    .damaged
                    .iter()
                    .filter_map(|&i| repair_color(img, damaged, i).map(|c| (i, c)))
                    .collect()
            })
        };
        let n: usize = repairs.iter().map(Vec::len).sum();
        if n == 0 {
            break;
        }
        {
            let [pr, pg, pb] = img.planes_mut();
            for &(i, [r, g, b]) in repairs.iter().flatten() {
                pr[i] = r;
                pg[i] = g;
                pb[i] = b;
                damaged[i] = false;
            }
        }
        for tile in &mut tiles {
            tile.damaged.retain(|&i| damaged[i]);
        }
        tiles.retain(|t| !t.damaged.is_empty());
        stats.passes += 1;
        stats.repaired += n;
    }

    if !tiles.is_empty() {
        let [pr, pg, pb] = img.planes_mut();
        for &i in tiles.iter().flat_map(|t| &t.damaged) {
            pr[i] = FALLBACK_COLOR[0];
            pg[i] = FALLBACK_COLOR[1];
            pb[i] = FALLBACK_COLOR[2];
            stats.fallback_filled += 1;
        }
        stats.passes += 1;
    }
    Ok((img, stats))
}

/// Fills every damaged pixel of `frame`; undamaged pixels are left untouched.
pub fn inpaint(
    frame: &ImageRGB8,
    mask: &DamageMask,
    cfg: &ConversionConfig,
    exec: &Executor,
) -> Result<ImageRGB8> {
    inpaint_with_stats(frame, mask, cfg, exec).map(|(img, _)| img)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient(w: usize, h: usize) -> ImageRGB8 {
        let mut img = ImageRGB8::new(w, h).unwrap();
        for y in 0..h {
            for x in 0..w {
                img.set(x, y, [(x * 20) as u8, (y * 20) as u8, ((x + y) * 7) as u8]);
            }
        }
        img
    }

    fn small_blocks() -> ConversionConfig {
        ConversionConfig {
            inpaint_block: 4,
            ..Default::default()
        }
    }

    #[test]
    fn clean_mask_is_noop() {
        let img = gradient(9, 7);
        let mask = DamageMask::clean(9, 7).unwrap();
        let (out, stats) =
            inpaint_with_stats(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert_eq!(out, img);
        assert_eq!(stats, InpaintStats::default());
    }

    #[test]
    fn single_hole_takes_neighbour_mean() {
        let mut img = ImageRGB8::filled(3, 3, [0, 0, 0]).unwrap();
        let reds = [10, 10, 10, 10, 20, 20, 20, 20];
        let around = [(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)];
        for (&(x, y), &r) in around.iter().zip(&reds) {
            img.set(x, y, [r, 2 * r, 255 - r]);
        }
        let mut mask = DamageMask::clean(3, 3).unwrap();
        mask.set(1, 1, true);
        let (out, stats) =
            inpaint_with_stats(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert_eq!(out.get(1, 1), [15, 30, 240]);
        assert_eq!(stats.passes, 1);
    }

    #[test]
    fn mean_rounds_half_up() {
        // Two undamaged neighbours 10 and 11 -> 10.5 -> 11.
        let img = ImageRGB8::from_planes(3, 1, vec![10, 0, 11], vec![0; 3], vec![0; 3]).unwrap();
        let mask = DamageMask::from_vec(3, 1, vec![false, true, false]).unwrap();
        let out = inpaint(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert_eq!(out.get(1, 0)[0], 11);
    }

    #[test]
    fn two_by_two_hole_one_pass() {
        let img = gradient(8, 8);
        let mut mask = DamageMask::clean(8, 8).unwrap();
        for (x, y) in [(3, 3), (4, 3), (3, 4), (4, 4)] {
            mask.set(x, y, true);
        }
        let (_, stats) =
            inpaint_with_stats(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert_eq!(stats.passes, 1);
        assert_eq!(stats.repaired, 4);
    }

    #[test]
    fn fully_damaged_frame_falls_back() {
        let img = gradient(8, 8);
        let mask = DamageMask::all_damaged(8, 8).unwrap();
        let (out, stats) =
            inpaint_with_stats(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert!(out.r().iter().chain(out.g()).chain(out.b()).all(|&v| v == 128));
        assert_eq!(stats.fallback_filled, 64);
    }

    #[test]
    fn lone_survivor_cannot_seed() {
        let img = gradient(5, 5);
        let mut mask = DamageMask::all_damaged(5, 5).unwrap();
        mask.set(2, 2, false);
        let (out, stats) =
            inpaint_with_stats(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert_eq!(out.get(2, 2), img.get(2, 2));
        assert_eq!(stats.repaired, 0);
        assert_eq!(stats.fallback_filled, 24);
    }

    #[test]
    fn holes_spanning_tiles_converge() {
        let img = gradient(16, 16);
        let mut mask = DamageMask::clean(16, 16).unwrap();
        for y in 2..14 {
            for x in 3..13 {
                mask.set(x, y, true);
            }
        }
        let (out, stats) =
            inpaint_with_stats(&img, &mask, &small_blocks(), &Executor::new(3).unwrap()).unwrap();
        assert_eq!(stats.fallback_filled, 0);
        assert!(stats.passes <= 32);
        let serial = inpaint(&img, &mask, &small_blocks(), &Executor::serial()).unwrap();
        assert_eq!(out, serial);
    }

    #[test]
    fn dimension_mismatch() {
        let img = gradient(4, 4);
        let mask = DamageMask::clean(4, 5).unwrap();
        assert!(inpaint(&img, &mask, &small_blocks(), &Executor::serial()).is_err());
    }
}
