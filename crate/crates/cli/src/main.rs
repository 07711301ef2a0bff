fn main() {
    std::process::exit(keller_cli::run(std::env::args_os()));
}
