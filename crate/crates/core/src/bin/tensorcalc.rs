fn main() {
    std::process::exit(tensorcalc::cli::run(std::env::args()));
}
