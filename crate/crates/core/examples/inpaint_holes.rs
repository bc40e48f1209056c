//! Forward warping leaves disocclusion holes; inpainting fills them.
//!
//!     cargo run --example inpaint_holes

use pseudo3d::dibr::reconstruct_forward;
use pseudo3d::inpaint::inpaint_with_stats;
use pseudo3d::xbfilter::cross_bilateral;
use pseudo3d::depthgen::generate_depth;
use pseudo3d::{luma, synthetic_frame, ConversionConfig, Executor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = synthetic_frame(960, 540, 11);
    let exec = Executor::available()?;
    for base in [8, 16, 32] {
        let cfg = ConversionConfig::default().with_base(base);
        let depth = cross_bilateral(&generate_depth(&src, &cfg), &luma(&src), &cfg, &exec)?;
        let frames = reconstruct_forward(&src, &depth, &cfg, &exec)?;
        for (eye, img, mask) in [
            ("left", &frames.left, &frames.left_mask),
            ("right", &frames.right, &frames.right_mask),
        ] {
            let (_, stats) = inpaint_with_stats(img, mask, &cfg, &exec)?;
            println!(
                "base {base:>2} {eye:>5}: {:>6} damaged, {} passes, {} repaired, {} fallback",
                mask.count_damaged(),
                stats.passes,
                stats.repaired,
                stats.fallback_filled
            );
        }
    }
    Ok(())
}
