//! Reference implementations shared by the integration tests.

use webca::percolation::{Field, PathType};

/// Grid copy of a field with the path rules written out cell by cell.
pub struct Grid {
    w: i64,
    h: i64,
    s: Vec<Vec<u8>>,
}

impl Grid {
    pub fn of(f: &Field) -> Self {
        let s = f.rows.iter().map(|r| r.iter().map(u8::from).collect()).collect();
        Grid { w: f.width() as i64, h: f.height() as i64, s }
    }

    fn at(&self, x: i64, t: i64) -> u8 {
        if x < 0 || x >= self.w || t < 0 || t >= self.h {
            0
        } else {
            self.s[t as usize][x as usize]
        }
    }

    fn point(&self, x: i64, t: i64, p: PathType) -> bool {
        if x < 0 || x >= self.w || self.at(x, t) == 1 {
            return false;
        }
        if let PathType::Free(theta) = p {
            let n = self.at(x - 1, t) + self.at(x + 1, t) + self.at(x - 1, t - 1) + self.at(x + 1, t - 1) + self.at(x, t - 1);
            return n < theta;
        }
        true
    }

    fn step(&self, x: i64, t: i64, y: i64, p: PathType) -> bool {
        let d = (y - x).abs();
        match p {
            PathType::Diagonal => d == 1,
            PathType::Wide => d == 0 || (d == 1 && !(self.at(y, t) == 1 && self.at(x, t + 1) == 1)),
            _ => d <= 1,
        }
    }

    /// Depth-first search over paths from every source.
    pub fn reach(&self, sources: &[(i64, usize)], p: PathType) -> Vec<Vec<bool>> {
        let mut seen = vec![vec![false; self.w as usize]; self.h as usize];
        let mut stack: Vec<(i64, i64)> = sources
            .iter()
            .map(|&(x, t)| (x, t as i64))
            .filter(|&(x, t)| self.point(x, t, p))
            .collect();
        while let Some((x, t)) = stack.pop() {
            if seen[t as usize][x as usize] {
                continue;
            }
            seen[t as usize][x as usize] = true;
            if t + 1 == self.h {
                continue;
            }
            for y in [x - 1, x, x + 1] {
                if self.point(y, t + 1, p) && self.step(x, t, y, p) && !seen[t as usize + 1][y as usize] {
                    stack.push((y, t + 1));
                }
            }
        }
        seen
    }
}
