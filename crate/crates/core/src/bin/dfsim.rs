fn main() {
    std::process::exit(degroot_friedkin::cli::cli_main(std::env::args_os()));
}
