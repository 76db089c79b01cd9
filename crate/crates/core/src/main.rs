fn main() {
    std::process::exit(frobenius_core::cli::main_with_args(std::env::args_os()));
}
