fn main() {
    std::process::exit(cnoidal::cli::main_with_args(std::env::args_os()));
}
