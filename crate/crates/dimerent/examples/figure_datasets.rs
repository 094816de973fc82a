//! Evaluate every figure preset and write its CSV datasets to a scratch
//! directory. The same files come out of `dimerent figure --preset <id>`.
//!
//! Run with: cargo run --example figure_datasets

use std::fs::File;

use dimerent::sweep::{evaluate_grid, figure_preset, write_csv, FigureId};

fn main() {
    let out_dir = std::env::temp_dir().join("dimerent-figures");
    std::fs::create_dir_all(&out_dir).expect("scratch dir");

    for id in FigureId::ALL {
        let preset = figure_preset(id);
        for series in &preset.series {
            let rows = evaluate_grid(&series.spec);
            let path = out_dir.join(&series.file_name);
            let mut file = File::create(&path).expect("writable scratch file");
            write_csv(&rows, &mut file).expect("csv write");
            println!("{:>6} rows  {}", rows.len(), path.display());
        }
    }
}
