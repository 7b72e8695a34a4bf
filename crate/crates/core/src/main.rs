fn main() {
    std::process::exit(dynamo_lab::cli::run(std::env::args_os()));
}
