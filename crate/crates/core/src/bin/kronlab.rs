fn main() {
    std::process::exit(kronlab::cli::run(std::env::args_os()));
}
