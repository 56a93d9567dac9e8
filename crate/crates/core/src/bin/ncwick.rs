fn main() {
    std::process::exit(ncwick::cli::main_with_env());
}
