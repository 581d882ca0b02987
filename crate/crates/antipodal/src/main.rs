use std::process::ExitCode;

use antipodal::cli::{run, Io};

fn main() -> ExitCode {
    let (stdin, stdout, stderr) = (std::io::stdin(), std::io::stdout(), std::io::stderr());
    let mut io = Io {
        stdin: &mut stdin.lock(),
        stdout: &mut stdout.lock(),
        stderr: &mut stderr.lock(),
        env_seed: std::env::var("BSA_SEED").ok(),
    };
    ExitCode::from(run(std::env::args_os(), &mut io) as u8)
}
