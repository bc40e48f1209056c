//! Half and full side-by-side stereo frames.
//!
//!     cargo run --example side_by_side -- [input.ppm] [out_dir]

use std::env;
use std::fs;
use std::path::PathBuf;

use pseudo3d::{convert_image, decode_ppm, encode_ppm, synthetic_frame, ConversionConfig, DibrMode, Executor, OutputFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let src = match args.next() {
        Some(path) => decode_ppm(&fs::read(path)?)?,
        None => synthetic_frame(1280, 720, 7),
    };
    let dir = args.next().map(PathBuf::from).unwrap_or_else(env::temp_dir);
    fs::create_dir_all(&dir)?;

    let exec = Executor::available()?;
    for mode in [DibrMode::ForwardZBuffer, DibrMode::BackwardFallback] {
        let cfg = ConversionConfig::default()
            .with_mode(mode)
            .with_formats([OutputFormat::Hsbs, OutputFormat::Fsbs]);
        let result = convert_image(&src, &cfg, &exec)?;
        let tag = match mode {
            DibrMode::ForwardZBuffer => "forward",
            DibrMode::BackwardFallback => "backward",
        };
        for (format, img) in &result.outputs {
            let path = dir.join(format!("pseudo3d_{tag}_{format}.ppm"));
            fs::write(&path, encode_ppm(img))?;
            println!("{tag:>8} {format}: {}x{} -> {}", img.width(), img.height(), path.display());
        }
    }
    Ok(())
}
