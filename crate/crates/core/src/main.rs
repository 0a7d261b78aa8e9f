fn main() {
    let code = dbridge::cli::main_with(
        std::env::args_os().collect(),
        std::env::var(dbridge::cli::PRECISION_ENV).ok(),
    );
    std::process::exit(code);
}
