fn main() {
    std::process::exit(gausscanon::cli::dispatch(std::env::args_os()));
}
