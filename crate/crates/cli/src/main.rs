fn main() {
    std::process::exit(intcx::main_with(std::env::args_os()));
}
