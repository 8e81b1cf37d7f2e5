//! Prints a built-in category fixture as a category file.
//!
//! Usage: `cargo run --example render_fixtures -- <name>` with one of
//! terminal, walking-pair, sphere, pseudo-circle, codiscrete-aby,
//! codiscrete-by.

use twocat::cli::render_category_file;
use twocat::fixtures;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_default();
    let cat = match name.as_str() {
        "terminal" => fixtures::terminal(),
        "walking-pair" => fixtures::walking_pair(),
        "sphere" => fixtures::sphere(),
        "pseudo-circle" => fixtures::pseudo_circle(),
        "codiscrete-aby" => fixtures::codiscrete(&["a", "b", "y"]),
        "codiscrete-by" => fixtures::codiscrete(&["b", "y"]),
        _ => {
            eprintln!("unknown fixture `{name}`");
            std::process::exit(2);
        }
    };
    print!("{}", render_category_file(&cat.to_data()));
}
