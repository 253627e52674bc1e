fn main() {
    std::process::exit(jumplab::harness::cli::run());
}
