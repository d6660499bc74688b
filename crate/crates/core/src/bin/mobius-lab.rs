fn main() {
    std::process::exit(mobius_lab::cli::main_with_args(std::env::args_os()));
}
