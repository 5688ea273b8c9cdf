//! Right-aligned triangular and rectangular grids for the `table` command.

use narayana::numbers::{catalan, narayana_row};
use narayana::{CountValue, Result};

/// One block: a title, a corner label, column indices and ragged rows.
struct Block {
    title: String,
    corner: &'static str,
    columns: usize,
    rows: Vec<(String, Vec<String>)>,
}

impl Block {
    fn render(&self) -> String {
        let header: Vec<String> = (0..self.columns).map(|i| i.to_string()).collect();
        let width = self
            .rows
            .iter()
            .flat_map(|(_, cells)| cells.iter())
            .chain(header.iter())
            .map(String::len)
            .max()
            .unwrap_or(1);
        let label_width = self
            .rows
            .iter()
            .map(|(label, _)| label.len())
            .chain([self.corner.len()])
            .max()
            .unwrap_or(1);
        let line = |label: &str, cells: &[String]| {
            let mut s = format!("{label:<label_width$}");
            for c in cells {
                s.push_str(&format!(" {c:>width$}"));
            }
            s.push('\n');
            s
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&line(self.corner, &header));
        for (label, cells) in &self.rows {
            out.push_str(&line(label, cells));
        }
        out
    }
}

fn strings(row: &[CountValue]) -> Vec<String> {
    row.iter().map(|v| v.to_string()).collect()
}

/// `N_d(n,k)` for `0 <= k <= n <= n_max`, one block per arity.
pub fn narayana_text(ds: &[usize], n_max: usize) -> Result<String> {
    let mut blocks = Vec::new();
    for &d in ds {
        let rows = (0..=n_max)
            .map(|n| Ok((n.to_string(), strings(&narayana_row(d, n)?))))
            .collect::<Result<Vec<_>>>()?;
        blocks.push(
            Block {
                title: format!("N_{d}(n,k)"),
                corner: "n\\k",
                columns: n_max + 1,
                rows,
            }
            .render(),
        );
    }
    Ok(blocks.join("\n"))
}

/// `C_d(n)` with one row per arity.
pub fn catalan_text(ds: &[usize], n_max: usize) -> Result<String> {
    let rows = ds
        .iter()
        .map(|&d| {
            let row = (0..=n_max)
                .map(|n| catalan(d, n))
                .collect::<Result<Vec<_>>>()?;
            Ok((d.to_string(), strings(&row)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Block {
        title: "C_d(n)".into(),
        corner: "d\\n",
        columns: n_max + 1,
        rows,
    }
    .render())
}

pub fn narayana_csv(ds: &[usize], n_max: usize) -> Result<String> {
    let mut out = String::from("d,n,k,value\n");
    for &d in ds {
        for n in 0..=n_max {
            for (k, v) in narayana_row(d, n)?.iter().enumerate() {
                out.push_str(&format!("{d},{n},{k},{v}\n"));
            }
        }
    }
    Ok(out)
}

pub fn catalan_csv(ds: &[usize], n_max: usize) -> Result<String> {
    let mut out = String::from("d,n,value\n");
    for &d in ds {
        for n in 0..=n_max {
            out.push_str(&format!("{d},{n},{}\n", catalan(d, n)?));
        }
    }
    Ok(out)
}

/// One JSON object per arity; values are decimal strings.
pub fn narayana_json(ds: &[usize], n_max: usize) -> Result<String> {
    let mut out = String::new();
    for &d in ds {
        let rows = (0..=n_max)
            .map(|n| narayana_row(d, n))
            .collect::<Result<Vec<_>>>()?;
        let v = serde_json::json!({ "kind": "narayana", "d": d, "rows": rows });
        out.push_str(&v.to_string());
        out.push('\n');
    }
    Ok(out)
}

pub fn catalan_json(ds: &[usize], n_max: usize) -> Result<String> {
    let mut out = String::new();
    for &d in ds {
        let values = (0..=n_max)
            .map(|n| catalan(d, n))
            .collect::<Result<Vec<_>>>()?;
        let v = serde_json::json!({ "kind": "catalan", "d": d, "values": values });
        out.push_str(&v.to_string());
        out.push('\n');
    }
    Ok(out)
}
