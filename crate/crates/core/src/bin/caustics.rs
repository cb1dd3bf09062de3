fn main() {
    std::process::exit(caustics::cli::run(std::env::args_os()));
}
