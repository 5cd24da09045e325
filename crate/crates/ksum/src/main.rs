fn main() {
    std::process::exit(ksum::cli::run(std::env::args_os()));
}
