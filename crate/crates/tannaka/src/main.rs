fn main() {
    std::process::exit(tannaka::cli::run(std::env::args_os()));
}
