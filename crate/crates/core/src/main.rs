fn main() {
    std::process::exit(fstirling::cli::run(std::env::args_os()));
}
