fn main() {
    std::process::exit(poincare_shell_cli::main_with(std::env::args_os()));
}
