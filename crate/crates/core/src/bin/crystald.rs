fn main() {
    std::process::exit(crystald_core::cli::main_with_args(std::env::args_os()));
}
