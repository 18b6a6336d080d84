fn main() {
    std::process::exit(qflag::cli::run());
}
