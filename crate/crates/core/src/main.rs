fn main() {
    std::process::exit(preoperad::cli::run(std::env::args_os()));
}
