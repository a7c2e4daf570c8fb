fn main() {
    std::process::exit(pseudospectra::cli::run());
}
