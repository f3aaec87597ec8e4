fn main() {
    let env = std::env::var("GTN_RESTARTS").ok();
    let code = gtn_core::cli::run(std::env::args_os(), env.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
