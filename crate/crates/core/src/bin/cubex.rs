fn main() {
    std::process::exit(cubical_exactness::cli::main_with_args(std::env::args_os()));
}
