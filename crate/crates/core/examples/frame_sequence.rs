//! Converts a numbered frame sequence and reports compute versus I/O time.
//!
//!     cargo run --example frame_sequence -- [frames] [width] [height]

use std::env;
use std::fs;

use pseudo3d::pipeline::{DirSink, PatternSource};
use pseudo3d::{convert_sequence, encode_ppm, synthetic_frame, ConversionConfig, Executor, OutputFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let frames = args.first().copied().unwrap_or(12);
    let (w, h) = (args.get(1).copied().unwrap_or(640), args.get(2).copied().unwrap_or(360));

    let root = env::temp_dir().join("pseudo3d_sequence");
    let input = root.join("in");
    let output = root.join("out");
    fs::create_dir_all(&input)?;
    for i in 0..frames as u64 {
        fs::write(input.join(format!("frame_{i:06}.ppm")), encode_ppm(&synthetic_frame(w, h, i)))?;
    }

    let mut source = PatternSource::new(&input, "frame_%06d.ppm")?;
    let mut sink = DirSink::new(&output)?;
    let cfg = ConversionConfig::default().with_formats([OutputFormat::Anaglyph, OutputFormat::Hsbs]);
    let report = convert_sequence(&mut source, &cfg, &Executor::available()?, &mut sink)?;

    println!("{}", report.summary_line());
    print!("{}", report.to_csv());
    println!("outputs in {}", output.display());
    Ok(())
}
