fn main() {
    std::process::exit(paving_ideals::cli::run(std::env::args_os()));
}
