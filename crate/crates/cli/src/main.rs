fn main() {
    std::process::exit(hdx_cli::run::run(std::env::args_os()));
}
