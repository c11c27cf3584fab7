//! Edge-list text: parse, attach weights, serialise and parse again.

use clusterkit::io::{apply_weights, parse_graph, parse_weights, serialize_graph};

fn main() -> clusterkit::Result<()> {
    let text = "\
# a bull with a heavy horn
t1 t2
t2 t3
t1 t3
t1 h1
t2 h2
lonely
w h1 5
";
    let g = parse_graph(text)?;
    println!("parsed {} vertices and {} edges", g.n(), g.m());

    let g = apply_weights(g, &parse_weights("t3 2.5\n")?)?;
    let out = serialize_graph(&g);
    print!("{out}");

    let again = parse_graph(&out)?;
    assert_eq!((again.n(), again.m()), (g.n(), g.m()));
    assert_eq!(again.weight(again.id_of("t3").unwrap()), 2.5);

    match parse_graph("a b\nc c\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("self-loops are invalid"),
    }
    Ok(())
}
