fn main() {
    std::process::exit(toric_ga::cli::main());
}
