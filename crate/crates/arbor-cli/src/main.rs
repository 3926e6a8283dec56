use clap::Parser;

fn main() {
    let cli = arbor_cli::Cli::parse();
    let (text, code) = arbor_cli::run(&cli);
    if code == 0 || code == 3 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    std::process::exit(code);
}
