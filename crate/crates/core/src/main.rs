fn main() {
    std::process::exit(orthoreps::cli::run(std::env::args_os()));
}
