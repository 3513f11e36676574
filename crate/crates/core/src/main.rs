fn main() {
    std::process::exit(dirac_analytika::cli::main_with_args(std::env::args_os()));
}
