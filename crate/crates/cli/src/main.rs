fn main() {
    std::process::exit(linkinv::run(std::env::args_os()));
}
