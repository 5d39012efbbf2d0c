fn main() {
    std::process::exit(z22susy::cli::run(std::env::args_os()));
}
