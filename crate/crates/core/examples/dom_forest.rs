//! Parses a small page and lists node ids with their levels.

use domgame::dom_ingest::{classify_levels, parse_document};

const PAGE: &str = r#"<html>
  <head><title>Home</title></head>
  <body>
    <h1>Welcome</h1>
    <a href="/about">About</a>
  </body>
</html>"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let forest = parse_document(PAGE)?;
    println!(
        "{} nodes, {} edges",
        forest.nodes().len(),
        forest.edge_count()
    );
    let levels = classify_levels(&forest);
    let deepest = levels.values().copied().max().unwrap_or(0);
    for node in forest.nodes() {
        let level = levels[&node.id];
        let mark = if level == deepest { "  (boundary)" } else { "" };
        println!("{level}  {:<20} {:?}{mark}", node.id.0, node.kind);
    }
    println!("\n{}", forest.to_markup());
    Ok(())
}
