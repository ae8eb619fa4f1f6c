use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An `n x n` Sudoku grid, `n = m^2`. Zero marks an empty cell.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PuzzleGrid {
    n: usize,
    box_size: usize,
    cells: Vec<u8>,
}

impl PuzzleGrid {
    /// Builds a grid from row-major cells, rejecting out-of-range values and
    /// givens that already clash in a row, column or box.
    pub fn new(n: usize, cells: Vec<u8>) -> Result<Self> {
        let box_size = (n as f64).sqrt().round() as usize;
        if n == 0 || box_size * box_size != n || n > 255 {
            return Err(Error::InvalidParameter(format!("grid size {n} is not a positive square")));
        }
        if cells.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: cells.len() });
        }
        if let Some(&v) = cells.iter().find(|&&v| v as usize > n) {
            return Err(Error::InvalidParameter(format!("cell value {v} exceeds {n}")));
        }
        let g = PuzzleGrid { n, box_size, cells };
        g.check_givens()?;
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        PuzzleGrid::new(n, vec![0; n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_size(&self) -> usize {
        self.box_size
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    /// `(row, col, value)` for every filled cell.
    pub fn givens(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.cells.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(i, &v)| (i / self.n, i % self.n, v))
    }

    pub fn given_count(&self) -> usize {
        self.cells.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != 0)
    }

    /// Cell indices of every row, column and box.
    pub fn units(&self) -> Vec<Vec<usize>> {
        let (n, m) = (self.n, self.box_size);
        let mut units = Vec::with_capacity(3 * n);
        for r in 0..n {
            units.push((0..n).map(|c| r * n + c).collect());
        }
        for c in 0..n {
            units.push((0..n).map(|r| r * n + c).collect());
        }
        for b in 0..n {
            let (r0, c0) = (b / m * m, b % m * m);
            // column-major inside the box
            units.push((0..n).map(|k| (r0 + k % m) * n + c0 + k / m).collect());
        }
        units
    }

    fn check_givens(&self) -> Result<()> {
        for unit in self.units() {
            let mut seen = vec![false; self.n + 1];
            for &i in &unit {
                let v = self.cells[i] as usize;
                if v != 0 && std::mem::replace(&mut seen[v], true) {
                    let (r, c) = (i / self.n, i % self.n);
                    return Err(Error::InconsistentGivens(format!(
                        "value {v} repeated (seen again at row {}, column {})",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when every row, column and box holds each of `1..=n` once.
    pub fn is_solved(&self) -> bool {
        self.is_complete() && self.check_givens().is_ok()
    }

    /// The 81-character single-line form used by puzzle collections, with
    /// `.` for blanks. Only defined for `n <= 9`.
    pub fn to_line(&self) -> Option<String> {
        (self.n <= 9).then(|| self.cells.iter().map(|&v| if v == 0 { '.' } else { (b'0' + v) as char }).collect())
    }

    /// Parses either a single line of `n^2` digits (`0` or `.` for blanks)
    /// or `n` lines of `n` whitespace-separated integers. Lines starting
    /// with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        match lines.as_slice() {
            [] => Err(Error::Parse { line: 1, msg: "no grid found".into() }),
            [(no, line)] if !line.contains(char::is_whitespace) => parse_compact(*no, line),
            _ => parse_rows(&lines),
        }
    }
}

fn parse_compact(no: usize, line: &str) -> Result<PuzzleGrid> {
    let len = line.chars().count();
    let n = (len as f64).sqrt().round() as usize;
    if n * n != len || n > 9 {
        return Err(Error::Parse {
            line: no,
            msg: format!("single-line grid has {len} characters; expected 16 or 81"),
        });
    }
    let cells = line
        .chars()
        .map(|ch| match ch {
            '.' | '0' => Ok(0),
            '1'..='9' => Ok(ch as u8 - b'0'),
            _ => Err(Error::Parse { line: no, msg: format!("unexpected character {ch:?}") }),
        })
        .collect::<Result<Vec<u8>>>()?;
    PuzzleGrid::new(n, cells)
}

fn parse_rows(lines: &[(usize, &str)]) -> Result<PuzzleGrid> {
    let n = lines.len();
    let mut cells = Vec::with_capacity(n * n);
    for &(no, line) in lines {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != n {
            return Err(Error::Parse { line: no, msg: format!("expected {n} entries, found {}", row.len()) });
        }
        for tok in row {
            let v = if tok == "." {
                0
            } else {
                tok.parse::<u8>().map_err(|_| Error::Parse { line: no, msg: format!("bad entry {tok:?}") })?
            };
            cells.push(v);
        }
    }
    PuzzleGrid::new(n, cells)
}

impl FromStr for PuzzleGrid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PuzzleGrid::parse(s)
    }
}

impl fmt::Display for PuzzleGrid {
    /// One row per line; blanks are `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.n > 9 { 3 } else { 2 };
        for r in 0..self.n {
            let row: String = (0..self.n)
                .map(|c| match self.get(r, c) {
                    0 => format!("{:>w$}", "."),
                    v => format!("{v:>w$}"),
                })
                .collect();
            writeln!(f, "{}", row.trim_start())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuzzleGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuzzleGrid({}x{})\n{}", self.n, self.n, self)
    }
}

/// True iff `candidate` is a complete valid grid agreeing with every given
/// of `puzzle`.
pub fn verify(puzzle: &PuzzleGrid, candidate: &PuzzleGrid) -> bool {
    puzzle.n == candidate.n && candidate.is_solved() && puzzle.givens().all(|(r, c, v)| candidate.get(r, c) == v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOLVED_4: &str = "1234\n3412\n2143\n4321";

    fn solved4() -> PuzzleGrid {
        let cells = SOLVED_4.lines().flat_map(|l| l.bytes().map(|b| b - b'0')).collect();
        PuzzleGrid::new(4, cells).unwrap()
    }

    #[test]
    fn compact_and_row_formats_agree() {
        let line = "1.3.....2.4....1";
        let rows = "1 0 3 0\n0 0 0 0\n2 . 4 0\n0 0 0 1\n";
        let a = PuzzleGrid::parse(line).unwrap();
        let b = PuzzleGrid::parse(rows).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_line().unwrap(), line);
        assert_eq!(a.given_count(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(PuzzleGrid::parse("12345"), Err(Error::Parse { .. })));
        assert!(matches!(PuzzleGrid::parse("1 2\n3"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(PuzzleGrid::parse("11.............."), Err(Error::InconsistentGivens(_))));
        assert!(matches!(PuzzleGrid::parse("5..............."), Err(Error::InvalidParameter(_))));
        assert!(PuzzleGrid::new(3, vec![0; 9]).is_err());
    }

    #[test]
    fn box_conflict_is_detected() {
        // same box, different row and column
        let mut cells = vec![0u8; 16];
        cells[0] = 2;
        cells[5] = 2;
        assert!(matches!(PuzzleGrid::new(4, cells), Err(Error::InconsistentGivens(_))));
    }

    #[test]
    fn verification() {
        let s = solved4();
        assert!(s.is_solved());
        let puzzle = PuzzleGrid::parse("1.......2.......").unwrap();
        assert!(verify(&puzzle, &s));
        let other = PuzzleGrid::parse("3.......").err();
        assert!(other.is_some());
        let wrong = PuzzleGrid::parse("2...............").unwrap();
        assert!(!verify(&wrong, &s));
        let mut cells = s.cells().to_vec();
        cells.swap(0, 1);
        let broken = PuzzleGrid { n: 4, box_size: 2, cells };
        assert!(!broken.is_solved());
    }

    #[test]
    fn units_partition_cells() {
        let g = PuzzleGrid::empty(9).unwrap();
        let units = g.units();
        assert_eq!(units.len(), 27);
        for kind in units.chunks(9) {
            let mut all: Vec<usize> = kind.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, (0..81).collect::<Vec<_>>());
        }
    }

    #[test]
    fn display_round_trips() {
        let s = solved4();
        assert_eq!(PuzzleGrid::parse(&s.to_string()).unwrap(), s);
    }
}
