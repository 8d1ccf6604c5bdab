fn main() {
    std::process::exit(torinv_cli::run(std::env::args_os()));
}
