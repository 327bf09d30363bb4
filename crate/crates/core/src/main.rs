fn main() {
    std::process::exit(rcpoly::cli::run(std::env::args_os()));
}
