use std::io::Write;

fn main() {
    let ceiling = std::env::var(dualitykit_cli::CEILING_VAR).ok();
    let out = dualitykit_cli::run(std::env::args_os(), ceiling.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code());
}
