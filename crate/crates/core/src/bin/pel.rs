fn main() {
    std::process::exit(pel_core::cli::main_with_args(std::env::args_os()));
}
