fn main() {
    std::process::exit(arrmi::cli::main());
}
