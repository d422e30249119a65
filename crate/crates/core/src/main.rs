fn main() {
    std::process::exit(weibull_gof::harness::cli::main());
}
