fn main() {
    std::process::exit(wavelab_cli::main_with_args(std::env::args_os()));
}
