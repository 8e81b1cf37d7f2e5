fn main() {
    std::process::exit(twocat::cli::run(std::env::args().skip(1)));
}
