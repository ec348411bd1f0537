use std::io::Write;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let result = popmatch::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    if !result.payload.is_empty() {
        let _ = writeln!(stdout, "{}", result.payload);
    }
    if let Some(message) = &result.message {
        if result.status == popmatch::Status::Ok {
            let _ = write!(stdout, "{message}");
        } else {
            eprintln!("popmatch: {}", message.trim_end());
        }
    }
    let _ = stdout.flush();
    std::process::exit(result.status.exit_code());
}
