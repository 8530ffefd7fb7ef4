fn main() {
    std::process::exit(circnil::cli::main_with_args(std::env::args_os()));
}
