//! Drives the command-line entry point in-process on the bundled matrix
//! fixtures, showing the exit-code contract.

use skew_capelli::cli::run;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for (file, backend) in [("phi_n2.txt", "forms"), ("wrong_expect.txt", "restricted"), ("malformed.txt", "restricted")] {
        let path = format!("{dir}/{file}");
        let out = run(["capelli", "pfaffian", path.as_str(), "--backend", backend]);
        println!("{file} -> exit {}", out.code);
        print!("{}", out.stdout);
        if !out.stderr.is_empty() {
            println!("{}", out.stderr.trim_end());
        }
    }
    let out = run(["capelli", "hermite", "--m", "3", "--format", "json"]);
    print!("hermite json -> {}", out.stdout);
}
