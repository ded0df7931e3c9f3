fn main() {
    std::process::exit(otforge::cli::main_with_env());
}
