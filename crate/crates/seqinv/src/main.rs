fn main() {
    std::process::exit(seqinv::cli::run());
}
