fn main() {
    std::process::exit(qcleb::cli::run(std::env::args_os()));
}
