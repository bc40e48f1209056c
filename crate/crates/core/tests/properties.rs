mod common;

use proptest::prelude::*;
use pseudo3d::dibr::reconstruct;
use pseudo3d::inpaint::inpaint_with_stats;
use pseudo3d::xbfilter::{cross_bilateral, cross_bilateral_unrounded, filter_radius};
use pseudo3d::*;

fn image(w: usize, h: usize) -> impl Strategy<Value = ImageRGB8> {
    proptest::collection::vec(any::<u8>(), w * h * 3)
        .prop_map(move |v| ImageRGB8::from_interleaved(w, h, &v).unwrap())
}

fn gray(w: usize, h: usize) -> impl Strategy<Value = GrayMap> {
    proptest::collection::vec(any::<u8>(), w * h).prop_map(move |v| GrayMap::from_vec(w, h, v).unwrap())
}

fn sized<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(usize, usize) -> S + Clone,
) -> impl Strategy<Value = T> {
    (1usize..24, 1usize..24).prop_flat_map(move |(w, h)| f(w, h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ppm_round_trip(img in sized(image)) {
        prop_assert_eq!(decode_ppm(&encode_ppm(&img)).unwrap(), img);
    }

    #[test]
    fn pgm_round_trip(map in sized(gray)) {
        prop_assert_eq!(decode_pgm(&encode_pgm(&map)).unwrap(), map);
    }

    #[test]
    fn filtered_depth_stays_within_window_range(
        (d, g) in sized(|w, h| (gray(w, h), gray(w, h))),
        ss in 0.5f64..3.0,
        sr in 1.0f64..50.0,
    ) {
        let cfg = ConversionConfig { sigma_spatial: ss, sigma_range: sr, ..Default::default() };
        let raw = cross_bilateral_unrounded(&d, &g, &cfg, &Executor::serial()).unwrap();
        let r = filter_radius(ss);
        let (w, h) = d.dims();
        for y in 0..h {
            for x in 0..w {
                let mut lo = 255u8;
                let mut hi = 0u8;
                for qy in y.saturating_sub(r)..=(y + r).min(h - 1) {
                    for qx in x.saturating_sub(r)..=(x + r).min(w - 1) {
                        lo = lo.min(d.get(qx, qy));
                        hi = hi.max(d.get(qx, qy));
                    }
                }
                let v = raw[y * w + x];
                prop_assert!(v >= lo as f64 - 1e-9 && v <= hi as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn filter_is_thread_count_invariant((d, g) in sized(|w, h| (gray(w, h), gray(w, h)))) {
        let cfg = ConversionConfig { sigma_spatial: 2.0, ..Default::default() };
        let a = cross_bilateral(&d, &g, &cfg, &Executor::serial()).unwrap();
        let b = cross_bilateral(&d, &g, &cfg, &Executor::new(5).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn forward_rows_are_independent(
        (src, depth) in sized(|w, h| (image(w, h), gray(w, h))),
        base in (0u32..12).prop_map(|b| 2 * b),
        row in any::<prop::sample::Index>(),
    ) {
        // Rendering a single row on its own gives the same row as the full frame.
        let cfg = ConversionConfig::default().with_base(base);
        let full = reconstruct(&src, &depth, &cfg, &Executor::new(3).unwrap()).unwrap();
        let (w, h) = src.dims();
        let y = row.index(h);
        let one = ImageRGB8::from_interleaved(w, 1, &src.to_interleaved()[y * w * 3..(y + 1) * w * 3]).unwrap();
        let one_depth = GrayMap::from_vec(w, 1, depth.row(y).to_vec()).unwrap();
        let part = reconstruct(&one, &one_depth, &cfg, &Executor::serial()).unwrap();
        for x in 0..w {
            prop_assert_eq!(part.left_mask.is_damaged(x, 0), full.left_mask.is_damaged(x, y));
            prop_assert_eq!(part.right_mask.is_damaged(x, 0), full.right_mask.is_damaged(x, y));
            if !part.left_mask.is_damaged(x, 0) {
                prop_assert_eq!(part.left.get(x, 0), full.left.get(x, y));
            }
        }
    }

    #[test]
    fn inpaint_is_complete_local_and_deterministic(
        (img, flags) in sized(|w, h| (image(w, h), proptest::collection::vec(any::<bool>(), w * h))),
        block in 4usize..12,
    ) {
        let (w, h) = img.dims();
        let mask = DamageMask::from_vec(w, h, flags).unwrap();
        let cfg = ConversionConfig { inpaint_block: block, ..Default::default() };
        let (a, stats) = inpaint_with_stats(&img, &mask, &cfg, &Executor::serial()).unwrap();
        let (b, _) = inpaint_with_stats(&img, &mask, &cfg, &Executor::new(4).unwrap()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(stats.passes <= w + h);
        prop_assert_eq!(stats.repaired + stats.fallback_filled, mask.count_damaged());
        for y in 0..h {
            for x in 0..w {
                if !mask.is_damaged(x, y) {
                    prop_assert_eq!(a.get(x, y), img.get(x, y));
                }
            }
        }
        let (want, _) = common::ref_inpaint(&img, &mask);
        prop_assert_eq!(a, want);
    }

    #[test]
    fn anaglyph_planes((l, r) in sized(|w, h| (image(w, h), image(w, h)))) {
        let a = pseudo3d::stereofmt::anaglyph(&l, &r).unwrap();
        prop_assert_eq!(a.r(), l.r());
        prop_assert_eq!(a.g(), r.g());
        prop_assert_eq!(a.b(), r.b());
    }
}

#[test]
fn pipeline_deterministic_across_workers() {
    let mut rng = common::rng(99);
    let cfg = ConversionConfig::default()
        .with_base(6)
        .with_formats(OutputFormat::ALL);
    for _ in 0..5 {
        let src = common::random_image(&mut rng, 64, 64);
        let a = convert_image(&src, &cfg, &Executor::serial()).unwrap();
        let b = convert_image(&src, &cfg, &Executor::new(8).unwrap()).unwrap();
        assert_eq!(a.outputs, b.outputs);
        assert_eq!(a.filtered_depth, b.filtered_depth);
    }
}
