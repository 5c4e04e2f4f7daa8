fn main() {
    std::process::exit(ghzsym_cli::run(std::env::args_os()));
}
