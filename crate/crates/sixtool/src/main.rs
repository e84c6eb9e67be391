fn main() {
    std::process::exit(sixtool::cli::main_entry());
}
