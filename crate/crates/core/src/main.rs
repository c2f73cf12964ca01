fn main() {
    std::process::exit(slaglab::cli::run(std::env::args_os()));
}
