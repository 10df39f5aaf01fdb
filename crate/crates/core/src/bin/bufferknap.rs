fn main() {
    std::process::exit(bufferknap::cli::main_with_args(std::env::args()));
}
