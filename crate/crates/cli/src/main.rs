fn main() {
    std::process::exit(speclab::run(std::env::args_os()));
}
