fn main() -> std::process::ExitCode {
    ulrich_core::cli::main()
}
