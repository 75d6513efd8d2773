//! Reading and writing the text graph format, and driving the CLI in-process.

use dicut::cli::run_command_with;
use dicut::io::{parse_graph_str, write_graph};

const TEXT: &str = "\
c a vertex-weighted graph with named vertices
p vert 4 5
v src 3
v a 1
v b 0
v sink 2
a src a
a src b
a a sink
a b sink
a sink src
";

fn main() -> dicut::Result<()> {
    let file = parse_graph_str(TEXT, true)?;
    println!("labels {:?}, zero weights lifted: {}", file.labels, file.lifted);
    println!("lifted weights {:?}", file.graph.vertex_weights());
    print!("{}", write_graph(&file.original, Some(&file.labels)));

    let dir = std::env::temp_dir().join(format!("dicut-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| dicut::Error::Io(e.to_string()))?;
    let path = dir.join("g.txt");
    std::fs::write(&path, TEXT).map_err(|e| dicut::Error::Io(e.to_string()))?;
    let args = ["dicut", "vertex-rooted", path.to_str().unwrap(), "--root", "sink", "--allow-zero-weights", "--json"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_command_with(args, &mut out, &mut err);
    println!("exit {code}");
    print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
