fn main() {
    std::process::exit(kplanar::cli::run(std::env::args_os()));
}
