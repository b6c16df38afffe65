fn main() {
    std::process::exit(fsbasis_cli::run(std::env::args_os()));
}
