fn main() {
    let out = shapovalov::cli::run(std::env::args_os());
    if out.diagnostic {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    std::process::exit(out.code);
}
