fn main() {
    std::process::exit(bookpop::cli::main_with_args(std::env::args_os()));
}
