fn main() {
    std::process::exit(kickout_cli::run(std::env::args_os()));
}
