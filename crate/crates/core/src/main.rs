fn main() -> std::process::ExitCode {
    expander_lcc::cli::main_with_args(std::env::args_os())
}
