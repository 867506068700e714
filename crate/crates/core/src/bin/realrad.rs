fn main() {
    std::process::exit(realrad::cli::main_with(std::env::args_os()));
}
