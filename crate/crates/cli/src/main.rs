fn main() {
    std::process::exit(nklab::run_with_args(std::env::args_os()));
}
