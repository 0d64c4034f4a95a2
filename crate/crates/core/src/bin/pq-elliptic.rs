fn main() {
    std::process::exit(pq_elliptic::cli::run_main());
}
