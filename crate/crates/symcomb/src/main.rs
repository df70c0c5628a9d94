use std::io::Write;

fn main() {
    let (code, text) = symcomb::cli::run(std::env::args_os());
    if code == 0 {
        let _ = std::io::stdout().write_all(text.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(text.as_bytes());
    }
    std::process::exit(code);
}
