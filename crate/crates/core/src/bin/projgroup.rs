fn main() {
    std::process::exit(projgroup::cli::cli_main(std::env::args_os()));
}
