fn main() {
    std::process::exit(indtrans::cli::cli_main(std::env::args_os()));
}
