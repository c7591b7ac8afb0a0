fn main() {
    std::process::exit(kdvw::cli::main_with(std::env::args_os()));
}
