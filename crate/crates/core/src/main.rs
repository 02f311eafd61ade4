fn main() {
    std::process::exit(capmatch::cli::run(std::env::args_os()));
}
