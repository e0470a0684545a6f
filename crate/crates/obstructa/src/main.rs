fn main() {
    std::process::exit(obstructa::run_cli());
}
