fn main() {
    std::process::exit(slantix::cli::run(std::env::args_os()));
}
