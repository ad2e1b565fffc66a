fn main() {
    std::process::exit(wrmc_cli::main_with(std::env::args_os()));
}
