fn main() {
    std::process::exit(motif_tracker::cli::run(std::env::args_os()));
}
