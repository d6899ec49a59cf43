//! Writes the brute-force class table for `|Disc| ≤ 300` to stdout.
//!
//! `cargo run --release --example oracle_table > data/classes_300.csv`

use shintani::forms::brute_force_class_oracle;

fn main() -> shintani::Result<()> {
    let table = brute_force_class_oracle(300, 75)?;
    table.write_csv(std::io::stdout().lock())
}
