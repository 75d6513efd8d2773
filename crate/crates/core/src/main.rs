fn main() {
    std::process::exit(dicut::cli::run_command(std::env::args_os()));
}
