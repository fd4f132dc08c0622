fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, out) = realcurves::cli::run(&args);
    if code == realcurves::cli::EXIT_USAGE {
        eprint!("{}", out);
    } else {
        print!("{}", out);
    }
    std::process::exit(code);
}
