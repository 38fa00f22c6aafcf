//! Matrix file format: optional `#` comment lines, a header line holding
//! either `ROWS COLS` or a bare `N` (an N-vector, stored as N x 1), then
//! whitespace-separated row-major decimal entries. Writing uses 17
//! significant digits so a write/read round trip is bit-exact.

use mvmd::mat::Mat;
use std::fmt::Write as _;
use std::path::Path;

pub fn read_mat(path: &Path) -> Result<Mat, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    parse_mat(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

pub fn parse_mat(text: &str) -> Result<Mat, String> {
    let mut tokens = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        tokens.extend(line.split_whitespace().map(str::to_owned));
    }
    if tokens.is_empty() {
        return Err("empty matrix file".into());
    }
    let rows: usize = tokens[0]
        .parse()
        .map_err(|_| format!("bad row count '{}'", tokens[0]))?;
    // the header is `ROWS COLS` when the token count works out, else a bare N
    let (rows, cols, data_start) = if tokens.len() >= 2 {
        match tokens[1].parse::<usize>() {
            Ok(c) if tokens.len() == 2 + rows * c => (rows, c, 2),
            _ if tokens.len() == 1 + rows => (rows, 1, 1),
            Ok(c) => {
                return Err(format!(
                    "expected {} entries for a {}x{} matrix, found {}",
                    rows * c,
                    rows,
                    c,
                    tokens.len() - 2
                ))
            }
            Err(_) => return Err(format!("bad column count '{}'", tokens[1])),
        }
    } else {
        return Err("matrix file has a header but no data".into());
    };
    if rows == 0 || cols == 0 {
        return Err("matrix dimensions must be positive".into());
    }
    let mut data = Vec::with_capacity(rows * cols);
    for tok in &tokens[data_start..] {
        data.push(
            tok.parse::<f64>()
                .map_err(|_| format!("bad number '{}'", tok))?,
        );
    }
    Mat::new(rows, cols, data).map_err(|e| e.to_string())
}

pub fn format_mat(m: &Mat) -> String {
    let mut out = String::new();
    if m.cols() == 1 {
        let _ = writeln!(out, "{}", m.rows());
    } else {
        let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    }
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format!("{:.16e}", m.at(i, j))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_mat(path: &Path, m: &Mat) -> Result<(), String> {
    std::fs::write(path, format_mat(m))
        .map_err(|e| format!("cannot write {}: {}", path.display(), e))
}

/// Human-readable rendering for terminal output.
pub fn render(m: &Mat) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "shape: {}x{}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format!("{:>13.6e}", m.at(i, j))).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
    out
}
