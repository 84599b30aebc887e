//! Chessboard bookkeeping for odd `N = 2n+1`: the cell `(x, y)` stands for
//! `O(xh + yH)` on `E`.

use serde::Serialize;

use crate::flagx::EObject;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Plain,
    /// Part of the staircase `𝒮_{n-2}` (or its Serre twist).
    Stair,
    /// Column `-1-n` above row `n`; replaced by a mutation through the staircase below it.
    Mutated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
    pub kind: CellKind,
}

impl Cell {
    pub fn object(&self) -> EObject {
        EObject::line(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Board {
    pub name: String,
    /// Cells in semiorthogonal order.
    pub cells: Vec<Cell>,
}

pub fn in_staircase(n: i64, x: i64, y: i64) -> bool {
    let j = y - n;
    (0..=n - 2).contains(&j) && (n - 1 - 2 * j..n).contains(&x)
}

/// Rows `0..=2n-2`, columns `-1-n..=n-1`, row by row from the bottom.
pub fn sod2(n: i64) -> Board {
    let mut cells = Vec::new();
    for y in 0..=2 * n - 2 {
        for x in -1 - n..=n - 1 {
            let kind = if in_staircase(n, x, y) {
                CellKind::Stair
            } else if x == -1 - n && y > n {
                CellKind::Mutated
            } else {
                CellKind::Plain
            };
            cells.push(Cell { x, y, kind });
        }
    }
    Board { name: "staircase moved to the far right".into(), cells }
}

/// The staircase twisted by `O(-1, 1-2n)` at the front, then the remaining cells.
pub fn sod2_final(n: i64) -> Board {
    let base = sod2(n);
    let mut cells: Vec<Cell> = base
        .cells
        .iter()
        .filter(|c| c.kind == CellKind::Stair)
        .map(|c| Cell { x: c.x - 1, y: c.y + 1 - 2 * n, kind: CellKind::Stair })
        .collect();
    cells.extend(base.cells.into_iter().filter(|c| c.kind != CellKind::Stair));
    Board { name: "staircase moved to the far left".into(), cells }
}

pub fn region_i(n: i64, (x, y): (i64, i64)) -> bool {
    x + 2 * y <= 3 * n - 2 && (0..=2 * n - 2).contains(&y) && (-n..=n - 1).contains(&x)
}

pub fn region_ii(n: i64, (x, y): (i64, i64)) -> bool {
    (-n..=3 * n - 4).contains(&(x + 2 * y)) && (-n..=n - 2).contains(&x)
}

impl Board {
    pub fn render_ascii(&self) -> String {
        let (x0, x1) = bounds(self.cells.iter().map(|c| c.x));
        let (y0, y1) = bounds(self.cells.iter().map(|c| c.y));
        let mut out = format!("{}\n", self.name);
        for y in (y0..=y1).rev() {
            out.push_str(&format!("{y:>5} |"));
            for x in x0..=x1 {
                let mark = match self.cells.iter().find(|c| c.x == x && c.y == y).map(|c| c.kind) {
                    Some(CellKind::Plain) => "#",
                    Some(CellKind::Stair) => "S",
                    Some(CellKind::Mutated) => "M",
                    None => ".",
                };
                out.push_str(&format!("{mark:>4}"));
            }
            out.push('\n');
        }
        out.push_str("      +");
        out.push_str(&"-".repeat(4 * (x1 - x0 + 1) as usize));
        out.push_str("\n       ");
        for x in x0..=x1 {
            out.push_str(&format!("{x:>4}"));
        }
        out.push('\n');
        out
    }
}

fn bounds(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}
