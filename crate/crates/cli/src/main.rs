fn main() {
    let report = rangekit_cli::run(std::env::args_os());
    std::process::exit(rangekit_cli::emit(&report));
}
