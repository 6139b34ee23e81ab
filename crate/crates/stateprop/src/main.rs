fn main() {
    std::process::exit(stateprop::cli::run(std::env::args_os()));
}
