fn main() {
    std::process::exit(szasz::cli::run(std::env::args_os()));
}
