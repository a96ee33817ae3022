fn main() {
    std::process::exit(sddb::cli::main_with_args(std::env::args_os()));
}
