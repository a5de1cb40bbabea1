fn main() {
    std::process::exit(hecomp::cli::run(std::env::args_os()));
}
