fn main() {
    std::process::exit(skewgas::cli::main_with_args());
}
