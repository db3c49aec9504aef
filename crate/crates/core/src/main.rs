fn main() {
    let code = bertrand_lab::cli::main_with_args(std::env::args_os());
    std::process::exit(code);
}
