fn main() {
    std::process::exit(multimono::cli::run(std::env::args_os()));
}
