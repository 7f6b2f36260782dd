fn main() {
    std::process::exit(systolekit::cli::run(std::env::args_os()));
}
