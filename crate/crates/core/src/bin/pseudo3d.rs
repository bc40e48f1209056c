fn main() {
    std::process::exit(pseudo3d::cli::run(std::env::args_os()));
}
