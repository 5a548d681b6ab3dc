fn main() {
    std::process::exit(hypersync::cli::run(std::env::args_os()));
}
