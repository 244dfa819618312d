fn main() {
    std::process::exit(arithlab::run_cli());
}
