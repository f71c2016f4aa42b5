fn main() {
    std::process::exit(dimfree::cli::run_from(std::env::args()));
}
