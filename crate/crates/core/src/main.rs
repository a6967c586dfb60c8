fn main() {
    std::process::exit(quasilag::cli::run(std::env::args_os()));
}
