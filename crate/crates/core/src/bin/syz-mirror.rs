fn main() -> std::process::ExitCode {
    syz_mirror::cli::run()
}
