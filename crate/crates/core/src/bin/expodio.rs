fn main() {
    std::process::exit(expodio::cli::run(std::env::args_os()));
}
