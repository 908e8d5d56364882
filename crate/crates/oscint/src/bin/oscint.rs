fn main() {
    std::process::exit(oscint::cli::cli_main());
}
