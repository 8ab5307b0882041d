use std::io::Read;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let needs_stdin = args.iter().any(|a| a == "-");
    let mut stdin_text = String::new();
    if needs_stdin {
        let _ = std::io::stdin().read_to_string(&mut stdin_text);
    }
    let outcome = rsg_cli::run(&args, &stdin_text);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
