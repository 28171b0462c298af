fn main() {
    std::process::exit(chaotic_roots::cli::run());
}
