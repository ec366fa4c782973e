fn main() {
    std::process::exit(hypermap::cli::main_exit());
}
