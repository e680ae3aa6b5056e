fn main() {
    std::process::exit(offsetal::cli::run(std::env::args_os()));
}
