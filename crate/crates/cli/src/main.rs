fn main() {
    std::process::exit(ratelink_cli::run_cli(std::env::args_os()));
}
