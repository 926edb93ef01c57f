fn main() {
    std::process::exit(infrascat::cli::dispatch(std::env::args_os()));
}
