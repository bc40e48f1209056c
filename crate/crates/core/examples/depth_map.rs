//! Exports the generated depth map and its cross-bilateral filtered version.
//!
//!     cargo run --example depth_map -- [input.ppm] [out_dir]

use std::env;
use std::fs;
use std::path::PathBuf;

use pseudo3d::depthgen::{block_depth, generate_depth, sobel_magnitude};
use pseudo3d::xbfilter::cross_bilateral;
use pseudo3d::{decode_ppm, encode_pgm, luma, synthetic_frame, ConversionConfig, Executor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let src = match args.next() {
        Some(path) => decode_ppm(&fs::read(path)?)?,
        None => synthetic_frame(640, 360, 3),
    };
    let dir = args.next().map(PathBuf::from).unwrap_or_else(env::temp_dir);
    fs::create_dir_all(&dir)?;

    let cfg = ConversionConfig::default();
    let guide = luma(&src);
    let edges = sobel_magnitude(&guide);
    let grid = block_depth(&edges, &cfg);
    println!(
        "{}x{} blocks of {} px; block depth range {:.1}..{:.1}",
        grid.blocks_x,
        grid.blocks_y,
        grid.block,
        grid.values.iter().cloned().fold(f64::INFINITY, f64::min),
        grid.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );

    let depth = generate_depth(&src, &cfg);
    let filtered = cross_bilateral(&depth, &guide, &cfg, &Executor::available()?)?;
    for (name, map) in [("edges", &edges), ("depth", &depth), ("depth_filtered", &filtered)] {
        let path = dir.join(format!("pseudo3d_{name}.pgm"));
        fs::write(&path, encode_pgm(map))?;
        println!("{name:>15} -> {}", path.display());
    }
    Ok(())
}
