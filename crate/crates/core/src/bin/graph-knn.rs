use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = graph_knn::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
