//! Serial-vs-parallel timing harness over synthetic frames.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{convert_image, StageTimings};
use crate::config::ConversionConfig;
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::imgcore::ImageRGB8;

pub const BENCH_CSV_HEADER: &str =
    "width,height,threads,rep,depth_ns,filter_ns,dibr_ns,inpaint_l_ns,inpaint_r_ns,format_ns,pure_ns";

/// Deterministic test frame: a diagonal colour gradient plus seeded noise,
/// so both the depth ramp and the edge term have something to work with.
pub fn synthetic_frame(width: usize, height: usize, seed: u64) -> ImageRGB8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut img = ImageRGB8::new(width.max(1), height.max(1)).expect("non-zero dims");
    let (w, h) = img.dims();
    let sx = (w.max(2) - 1) as u32;
    let sy = (h.max(2) - 1) as u32;
    for y in 0..h {
        for x in 0..w {
            let gx = x as u32 * 191 / sx;
            let gy = y as u32 * 191 / sy;
            let n: [u32; 3] = [rng.random_range(0..64), rng.random_range(0..64), rng.random_range(0..64)];
            img.set(
                x,
                y,
                [(gx + n[0]) as u8, (gy + n[1]) as u8, ((gx + gy) / 2 + n[2]) as u8],
            );
        }
    }
    img
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub width: usize,
    pub height: usize,
    pub threads: usize,
    pub rep: usize,
    pub timings: StageTimings,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn median(mut v: Vec<u64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_unstable();
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] as f64 + v[n / 2] as f64) / 2.0
    })
}

impl BenchReport {
    pub fn median_pure_ns(&self, width: usize, height: usize, threads: usize) -> Option<f64> {
        median(
            self.rows
                .iter()
                .filter(|r| (r.width, r.height, r.threads) == (width, height, threads))
                .map(|r| r.timings.pure_ns)
                .collect(),
        )
    }

    /// Median single-worker pure time over the median at `threads`.
    pub fn speedup(&self, width: usize, height: usize, threads: usize) -> Option<f64> {
        if threads == 1 {
            return self.median_pure_ns(width, height, 1).map(|_| 1.0);
        }
        let base = self.median_pure_ns(width, height, 1)?;
        let t = self.median_pure_ns(width, height, threads)?;
        Some(if t > 0.0 { base / t } else { f64::INFINITY })
    }

    /// Distinct `(width, height, threads)` keys in first-seen order.
    pub fn configurations(&self) -> Vec<(usize, usize, usize)> {
        let mut keys = Vec::new();
        for r in &self.rows {
            let k = (r.width, r.height, r.threads);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
        keys
    }

    /// One row per repetition under [`BENCH_CSV_HEADER`], LF line endings.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(BENCH_CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let t = &r.timings;
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.width,
                r.height,
                r.threads,
                r.rep,
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

    /// Human-readable median/speedup table.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for (w, h, t) in self.configurations() {
            let med = self.median_pure_ns(w, h, t).unwrap_or(0.0);
            let sp = self.speedup(w, h, t).map_or("n/a".to_string(), |v| format!("{v:.2}x"));
            let _ = writeln!(s, "{w}x{h} threads={t} median_pure_ms={:.3} speedup={sp}", med / 1e6);
        }
        s
    }
}

/// Times `convert_image` `reps` times per size and worker count.
///
/// Single-worker runs are always included so every configuration has a
/// speedup baseline.
pub fn bench(
    sizes: &[(usize, usize)],
    thread_counts: &[usize],
    reps: usize,
    cfg: &ConversionConfig,
    seed: u64,
) -> Result<BenchReport> {
    if reps < 3 {
        return Err(Error::InvalidConfig(format!("bench needs reps >= 3, got {reps}")));
    }
    let mut threads: Vec<usize> = Vec::with_capacity(thread_counts.len() + 1);
    if !thread_counts.contains(&1) {
        threads.push(1);
    }
    threads.extend(thread_counts.iter().copied());
    let executors = threads
        .iter()
        .map(|&t| Executor::new(t))
        .collect::<Result<Vec<_>>>()?;

    let mut report = BenchReport::default();
    for &(w, h) in sizes {
        let frame = synthetic_frame(w, h, seed);
        for exec in &executors {
            for rep in 0..reps {
                let timings = convert_image(&frame, cfg, exec)?.timings;
                report.rows.push(BenchRow {
                    width: w,
                    height: h,
                    threads: exec.threads(),
                    rep,
                    timings,
                });
            }
        }
    }
    Ok(report)
}
