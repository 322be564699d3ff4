fn main() {
    std::process::exit(hanoi_trees::cli::run(std::env::args_os()));
}
