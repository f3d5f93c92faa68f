fn main() {
    std::process::exit(jordan_mg::cli::run(std::env::args_os()));
}
