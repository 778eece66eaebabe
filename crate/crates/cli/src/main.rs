fn main() {
    std::process::exit(minimax_cli::run(std::env::args_os()));
}
