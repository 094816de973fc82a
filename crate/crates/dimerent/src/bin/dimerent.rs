fn main() {
    std::process::exit(dimerent::cli::run());
}
