fn main() {
    std::process::exit(zeta_forge::cli::run(std::env::args_os()));
}
