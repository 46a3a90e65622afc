use std::io::Write;

fn main() {
    let resp = tamedeg_cli::run_args(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(resp.stdout.as_bytes());
    let _ = std::io::stderr().write_all(resp.stderr.as_bytes());
    std::process::exit(resp.code);
}
