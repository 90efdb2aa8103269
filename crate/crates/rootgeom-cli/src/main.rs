use clap::Parser;

fn main() -> std::process::ExitCode {
    let cli = rootgeom_cli::Cli::parse();
    std::process::ExitCode::from(rootgeom_cli::execute(cli))
}
