fn main() {
    std::process::exit(ambc::cli::main_with_args(std::env::args_os()));
}
