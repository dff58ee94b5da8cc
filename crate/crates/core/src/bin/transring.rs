fn main() {
    std::process::exit(transring::cli::main_with_args(std::env::args_os()));
}
