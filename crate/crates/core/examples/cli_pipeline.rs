//! Drives the command-line entry point in-process: generate, solve, verify.

use expodio::cli::run;

fn main() {
    let dir = std::env::temp_dir().join(format!("expodio-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let inst = dir.join("partition.json");
    let inst = inst.to_str().unwrap();
    let side = format!("{inst}.sidecar.json");

    let steps: Vec<Vec<&str>> = vec![
        vec!["expodio", "gen-partition", "--values", "3,5,8,2,2", "--n", "3", "--out", inst],
        vec!["expodio", "bounds", inst],
        vec!["expodio", "solve", inst],
        vec!["expodio", "verify", inst, &side],
        vec!["expodio", "rou", "1,1,1"],
    ];
    for argv in steps {
        eprintln!("$ {}", argv[1..].join(" "));
        let code = run(argv);
        eprintln!("exit {code}");
    }
    let _ = std::fs::remove_dir_all(&dir);
}
