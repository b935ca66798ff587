fn main() {
    std::process::exit(ecdlp::cli::main())
}
