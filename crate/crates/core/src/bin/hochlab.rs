fn main() {
    std::process::exit(hochlab::cli::main_from_args(std::env::args_os()));
}
