fn main() {
    std::process::exit(packinglab::cli::run(std::env::args_os()));
}
