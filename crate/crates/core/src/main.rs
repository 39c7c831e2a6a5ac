fn main() {
    std::process::exit(ooc::cli::main());
}
