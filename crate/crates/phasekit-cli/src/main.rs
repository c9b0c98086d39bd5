fn main() {
    std::process::exit(phasekit_cli::run());
}
