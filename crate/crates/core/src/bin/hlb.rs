fn main() {
    std::process::exit(hlb::cli::run(std::env::args()));
}
