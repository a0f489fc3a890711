fn main() {
    std::process::exit(annular_kh::cli::run(std::env::args()));
}
