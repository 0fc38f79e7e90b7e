fn main() {
    let _ = env_logger::try_init();
    std::process::exit(wavelab::cli::run_cli(std::env::args_os()));
}
