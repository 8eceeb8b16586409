fn main() {
    std::process::exit(modred::cli::main_with_args(std::env::args_os()));
}
