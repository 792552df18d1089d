fn main() {
    std::process::exit(cuspidal::shell::run(std::env::args()));
}
