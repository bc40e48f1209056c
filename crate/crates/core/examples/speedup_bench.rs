//! Serial versus parallel pure-time speedup on synthetic frames.
//!
//!     cargo run --release --example speedup_bench -- [WxH] [reps]

use std::env;

use pseudo3d::exec::available_threads;
use pseudo3d::{bench, ConversionConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let (w, h) = match args.next() {
        Some(s) => {
            let (w, h) = s.split_once('x').ok_or("size must be WxH")?;
            (w.parse()?, h.parse()?)
        }
        None => (1920, 1080),
    };
    let reps = args.next().map(|r| r.parse()).transpose()?.unwrap_or(3);

    let cores = available_threads();
    let mut threads = vec![1];
    let mut t = 2;
    while t < cores {
        threads.push(t);
        t *= 2;
    }
    if cores > 1 {
        threads.push(cores);
    }

    let report = bench(&[(w, h)], &threads, reps, &ConversionConfig::default(), 0)?;
    eprint!("{}", report.summary());
    print!("{}", report.to_csv());
    Ok(())
}
