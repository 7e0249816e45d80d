fn main() -> std::process::ExitCode {
    lie_sseq::cli::main()
}
