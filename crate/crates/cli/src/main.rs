fn main() {
    std::process::exit(gammacoh_cli::run(std::env::args_os()));
}
