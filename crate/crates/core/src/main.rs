fn main() {
    std::process::exit(digitnet::cli::main());
}
