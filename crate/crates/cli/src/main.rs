fn main() {
    std::process::exit(graphsym_cli::run_with_std_streams(std::env::args_os()));
}
