//! ASCII block diagrams.
//!
//! Each block is drawn as a top row (`U(p)` cells) above a bottom row (`U(q)`
//! cells), offset by half a cell to show the shape, with its ν list beneath.
//!
//! ```text
//!  1   | 1/2    | 0 0  | -1/2
//! 1    | 1/2    |  0   | -1/2
//! nu=0 | nu=1/2 | nu=0 | nu=7/2
//! ```

use crate::datum::BlockShape;
use crate::theta::ThetaDatum;

fn row(cell: &str, count: usize) -> String {
    vec![cell; count].join(" ")
}

/// Renders `td` as three text lines.
pub fn render(td: &ThetaDatum) -> String {
    let mut lines = [String::new(), String::new(), String::new()];
    for (i, (b, nu)) in td.blocks().iter().zip(&td.nus).enumerate() {
        let cell = b.gamma.to_string();
        let half = cell.len().div_ceil(2);
        let (top_shift, bottom_shift) = match b.shape {
            BlockShape::Rectangle => (0, 0),
            BlockShape::ParallelogramDown => (0, half),
            BlockShape::ParallelogramUp => (half, 0),
            BlockShape::TrapezoidWideTop => (0, half),
            BlockShape::TrapezoidWideBottom => (half, 0),
        };
        let top = format!("{}{}", " ".repeat(top_shift), row(&cell, b.r));
        let bottom = format!("{}{}", " ".repeat(bottom_shift), row(&cell, b.s));
        let label = if nu.is_empty() {
            String::new()
        } else {
            let parts: Vec<String> = nu.0.iter().map(|x| x.to_string()).collect();
            format!("nu={}", parts.join(","))
        };
        let width = top.len().max(bottom.len()).max(label.len());
        let sep = if i == 0 { "" } else { " | " };
        for (line, text) in lines.iter_mut().zip([top, bottom, label]) {
            line.push_str(sep);
            line.push_str(&format!("{text:<width$}"));
        }
    }
    lines.iter().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n")
}
