fn main() {
    std::process::exit(motivic_hall::cli::run(std::env::args_os()));
}
