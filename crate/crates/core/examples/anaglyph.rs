//! Red/cyan anaglyph from a single image.
//!
//!     cargo run --example anaglyph -- [input.ppm] [output.ppm]
//!
//! Without an input a synthetic 640x360 frame is used.

use std::env;
use std::fs;

use pseudo3d::{convert_image, decode_ppm, encode_ppm, synthetic_frame, ConversionConfig, Executor, OutputFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let src = match args.next() {
        Some(path) => decode_ppm(&fs::read(path)?)?,
        None => synthetic_frame(640, 360, 42),
    };
    let out = args
        .next()
        .unwrap_or_else(|| env::temp_dir().join("pseudo3d_anaglyph.ppm").display().to_string());

    let cfg = ConversionConfig::default().with_formats([OutputFormat::Anaglyph]);
    let exec = Executor::available()?;
    let result = convert_image(&src, &cfg, &exec)?;
    fs::write(&out, encode_ppm(&result.outputs[&OutputFormat::Anaglyph]))?;

    let t = result.timings;
    println!(
        "{}x{} base={} -> {out}",
        src.width(),
        src.height(),
        cfg.base_for(src.width())
    );
    println!(
        "depth {:.2} ms (serial, excluded) | filter {:.2} | dibr {:.2} | inpaint {:.2}+{:.2} | format {:.2} | pure {:.2} ms",
        t.depth_gen_ns as f64 / 1e6,
        t.filter_ns as f64 / 1e6,
        t.dibr_ns as f64 / 1e6,
        t.inpaint_left_ns as f64 / 1e6,
        t.inpaint_right_ns as f64 / 1e6,
        t.format_ns as f64 / 1e6,
        t.pure_ns as f64 / 1e6,
    );
    Ok(())
}
