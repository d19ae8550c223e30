//! Matrix shapes in the `0 / × / *` display convention: `×` is any nonzero
//! entry, `*` any entry, a letter a nonzero value shared by every cell with
//! that letter, and `.` a position left blank (zero).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Blank,
    Value(u32),
    NonZero,
    Any,
    Var(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    n: usize,
    cells: Vec<Cell>,
}

impl Shape {
    /// Rows separated by newlines or `/`, cells by whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<Cell>> = text
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| r.split_whitespace().map(parse_cell).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("shape must be square".into()));
        }
        Ok(Shape {
            n,
            cells: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[i * self.n + j]
    }

    pub fn matches(&self, m: &Matrix) -> bool {
        if m.rows() != self.n || m.cols() != self.n {
            return false;
        }
        let mut vars: HashMap<char, u32> = HashMap::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = m.get(i, j);
                let ok = match self.cell(i, j) {
                    Cell::Blank => v == 0,
                    Cell::Value(c) => v == c,
                    Cell::NonZero => v != 0,
                    Cell::Any => true,
                    Cell::Var(c) => v != 0 && *vars.entry(c).or_insert(v) == v,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// The coarsest description of a set of matrices cell by cell: constant
    /// cells keep their value, cells taking every value become `*`, cells
    /// taking every nonzero value become `×`, anything else `?` (rendered as
    /// `Var('?')`, which [`Shape::matches`] treats as a shared nonzero value).
    pub fn infer(n: usize, p: u32, set: &[Matrix]) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut seen = vec![false; p as usize];
                for m in set {
                    seen[m.get(i, j) as usize] = true;
                }
                let count = seen.iter().filter(|&&s| s).count();
                cells.push(if count == 1 {
                    match seen.iter().position(|&s| s).unwrap() {
                        0 => Cell::Blank,
                        v => Cell::Value(v as u32),
                    }
                } else if count == p as usize {
                    Cell::Any
                } else if !seen[0] && count == p as usize - 1 {
                    Cell::NonZero
                } else {
                    Cell::Var('?')
                });
            }
        }
        Shape { n, cells }
    }
}

fn parse_cell(t: &str) -> Result<Cell> {
    Ok(match t {
        "." => Cell::Blank,
        "x" | "×" => Cell::NonZero,
        "*" => Cell::Any,
        _ => {
            if let Ok(v) = t.parse::<u32>() {
                Cell::Value(v)
            } else {
                let mut chars = t.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) if c.is_alphabetic() || c == '?' => Cell::Var(c),
                    _ => return Err(Error::Parse(format!("unknown shape cell {t:?}"))),
                }
            }
        }
    })
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| match self.cell(i, j) {
                    Cell::Blank => "0".to_string(),
                    Cell::Value(v) => v.to_string(),
                    Cell::NonZero => "×".to_string(),
                    Cell::Any => "*".to_string(),
                    Cell::Var(c) => c.to_string(),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
