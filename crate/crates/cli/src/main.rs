fn main() {
    std::process::exit(sphero::run(std::env::args()));
}
