use std::io::Write;

fn main() {
    let r = readk_cli::run(std::env::args().skip(1));
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(r.exit_code());
}
