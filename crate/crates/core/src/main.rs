fn main() {
    std::process::exit(conescope::cli::run(std::env::args_os()));
}
