//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O error, 3 decode error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{ConversionConfig, DibrMode, OutputFormat};
use crate::depthgen::generate_depth;
use crate::error::Error;
use crate::exec::Executor;
use crate::imgcore::{decode_ppm, encode_pgm, encode_ppm, ImageRGB8};
use crate::pipeline::{bench, convert_image, convert_sequence, DirSink, PatternSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_DECODE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pseudo3d", version, about = "Convert 2D images and frame sequences to pseudo-stereo 3D")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert one PPM image to the requested stereo formats.
    Convert {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// anaglyph, hsbs or fsbs; repeatable.
        #[arg(long = "format")]
        formats: Vec<OutputFormat>,
        /// Also write `<stem>_depth.pgm`.
        #[arg(long)]
        emit_depth: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Write the generated depth map of one PPM image as PGM.
    Depth {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Convert a numbered frame sequence.
    Video {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "frame_%06d.ppm")]
        pattern: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "format")]
        formats: Vec<OutputFormat>,
        #[arg(long)]
        timing_csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Time the pipeline on synthetic frames across worker counts.
    Bench {
        /// Comma-separated WxH list.
        #[arg(long, default_value = "1920x1080", value_delimiter = ',', value_parser = parse_size)]
        sizes: Vec<(usize, usize)>,
        #[arg(long, default_value = "1", value_delimiter = ',')]
        threads: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// CSV destination; `-` or absent for standard output.
        #[arg(long)]
        csv: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tuning: Tuning,
    },
}

#[derive(Debug, Args)]
struct Tuning {
    /// Stereo base in pixels (even). Defaults to 2 * round(width / 256).
    #[arg(long)]
    base: Option<u32>,
    #[arg(long, default_value_t = 150)]
    pop_threshold: u8,
    #[arg(long, default_value_t = 8.0)]
    sigma_spatial: f64,
    #[arg(long, default_value_t = 16.0)]
    sigma_range: f64,
    #[arg(long, default_value_t = 16)]
    depth_block: usize,
    #[arg(long, default_value_t = 64)]
    inpaint_block: usize,
    /// forward or backward.
    #[arg(long, default_value = "forward")]
    mode: DibrMode,
}

impl Tuning {
    fn config(&self, formats: &[OutputFormat]) -> ConversionConfig {
        let mut cfg = ConversionConfig {
            base: self.base,
            pop_threshold: self.pop_threshold,
            sigma_spatial: self.sigma_spatial,
            sigma_range: self.sigma_range,
            depth_block: self.depth_block,
            inpaint_block: self.inpaint_block,
            dibr_mode: self.mode,
            ..Default::default()
        };
        if !formats.is_empty() {
            cfg.output_formats = formats.iter().copied().collect();
        }
        cfg
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("size '{s}' is not WxH"))?;
    let w: usize = w.trim().parse().map_err(|_| format!("bad width in '{s}'"))?;
    let h: usize = h.trim().parse().map_err(|_| format!("bad height in '{s}'"))?;
    if w == 0 || h == 0 {
        return Err(format!("size '{s}' has a zero dimension"));
    }
    Ok((w, h))
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Pnm(_) => EXIT_DECODE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn read_ppm(path: &Path) -> Result<ImageRGB8, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    decode_ppm(&bytes).map_err(|e| Failure {
        code: EXIT_DECODE,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::io(path, e))
}

fn executor(threads: usize) -> Result<Executor, Failure> {
    Executor::new(threads).map_err(|e| Failure::usage(e.to_string()))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".into())
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Convert {
            input,
            out: dir,
            formats,
            emit_depth,
            threads,
            tuning,
        } => {
            let cfg = tuning.config(&formats);
            let exec = executor(threads)?;
            let img = read_ppm(&input)?;
            let result = convert_image(&img, &cfg, &exec)?;
            fs::create_dir_all(&dir).map_err(|e| Failure::io(&dir, e))?;
            let stem = stem(&input);
            for (format, image) in &result.outputs {
                write_file(&dir.join(format!("{stem}_{format}.ppm")), &encode_ppm(image))?;
            }
            if emit_depth {
                write_file(&dir.join(format!("{stem}_depth.pgm")), &encode_pgm(&result.depth))?;
            }
            let t = result.timings;
            let _ = writeln!(
                err,
                "converted {} ({}x{}): pure {:.3} ms, depth {:.3} ms",
                input.display(),
                img.width(),
                img.height(),
                t.pure_ns as f64 / 1e6,
                t.depth_gen_ns as f64 / 1e6
            );
        }
        Command::Depth {
            input,
            out: path,
            tuning,
        } => {
            let cfg = tuning.config(&[]);
            cfg.validate()?;
            let img = read_ppm(&input)?;
            write_file(&path, &encode_pgm(&generate_depth(&img, &cfg)))?;
        }
        Command::Video {
            input,
            pattern,
            out: dir,
            formats,
            timing_csv,
            threads,
            tuning,
        } => {
            let cfg = tuning.config(&formats);
            cfg.validate()?;
            let exec = executor(threads)?;
            let mut source = PatternSource::new(&input, &pattern).map_err(Failure::usage)?;
            let mut sink = DirSink::new(&dir).map_err(|e| Failure::io(&dir, e))?;
            let (report, failure) = match convert_sequence(&mut source, &cfg, &exec, &mut sink) {
                Ok(r) => (r, None),
                Err(e) => {
                    let msg = format!("frame {}: {}", e.index, e.source);
                    let f = Failure {
                        message: msg,
                        ..Failure::from(e.source)
                    };
                    (e.report, Some(f))
                }
            };
            if let Some(path) = &timing_csv {
                write_file(path, report.to_csv().as_bytes())?;
            }
            let _ = writeln!(out, "{}", report.summary_line());
            if let Some(f) = failure {
                return Err(f);
            }
        }
        Command::Bench {
            sizes,
            threads,
            reps,
            csv,
            seed,
            tuning,
        } => {
            let cfg = tuning.config(&[]);
            let report = bench(&sizes, &threads, reps, &cfg, seed)?;
            match csv.as_deref() {
                None | Some("-") => {
                    out.write_all(report.to_csv().as_bytes())
                        .map_err(|e| Failure::io(Path::new("<stdout>"), e))?;
                }
                Some(path) => write_file(Path::new(path), report.to_csv().as_bytes())?,
            }
            let _ = write!(err, "{}", report.summary());
        }
    }
    Ok(())
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("pseudo3d").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_size("1920x1080"), Ok((1920, 1080)));
        assert!(parse_size("19201080").is_err());
        assert!(parse_size("0x5").is_err());
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_capture(&["convert", "a.ppm", "--out", "x", "--bogus"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
    }

    #[test]
    fn missing_input_is_io_error() {
        let (code, _, _) = run_capture(&["depth", "/nonexistent/in.ppm", "--out", "/tmp/x.pgm"]);
        assert_eq!(code, EXIT_IO);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("bench"));
    }
}
