//! Drives the command line in-process on a problem given as text.

use std::io::Write;

fn main() {
    let path = std::env::temp_dir().join("fpterm_parse_and_prove.trs");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "(VAR x y)\n(RULES\n  plus(0,y) -> y\n  plus(s(x),y) -> s(plus(x,y))\n)").unwrap();
    drop(f);

    let file = path.to_string_lossy().into_owned();
    for args in [
        vec!["fpterm", "prove", &file],
        vec!["fpterm", "cdps", &file],
        vec!["fpterm", "rewrite", &file, "--term", "plus(s(0),s(0))"],
    ] {
        let code = fpterm::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
        println!("exit {code}\n");
    }
}
