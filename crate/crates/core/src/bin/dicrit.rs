fn main() {
    std::process::exit(dicrit_core::cli::run(std::env::args_os()));
}
