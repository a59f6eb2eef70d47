//! Register-resident kernels for words of at most 64 cells on a cylinder:
//! 1 Or 3 evolution, path DP, and web CA steps on two bit planes.

use crate::percolation::PathType;
use crate::webca::rules::WebRule;

#[derive(Clone, Copy, Debug)]
pub struct Cyl {
    pub n: u32,
    pub mask: u64,
}

impl Cyl {
    pub fn new(n: u32) -> Self {
        assert!((1..=64).contains(&n));
        Cyl {
            n,
            mask: if n == 64 { !0 } else { (1u64 << n) - 1 },
        }
    }

    /// Bit `i` moves to `i + k`.
    #[inline(always)]
    pub fn rotl(self, w: u64, k: u32) -> u64 {
        let k = k % self.n;
        if k == 0 {
            w
        } else {
            ((w << k) | (w >> (self.n - k))) & self.mask
        }
    }

    /// Bit `i` moves to `i - k`.
    #[inline(always)]
    pub fn rotr(self, w: u64, k: u32) -> u64 {
        self.rotl(w, self.n - k % self.n)
    }

    #[inline(always)]
    pub fn step_1or3(self, w: u64) -> u64 {
        self.rotl(w, 1) ^ w ^ self.rotr(w, 1)
    }

    /// Whether `w` is the numerically least of its rotations.
    #[inline]
    pub fn is_least_rotation(self, w: u64) -> bool {
        (1..self.n).all(|k| self.rotl(w, k) >= w)
    }

    pub fn least_rotation(self, w: u64) -> u64 {
        (1..self.n).map(|k| self.rotl(w, k)).fold(w, u64::min)
    }

    /// Number of distinct rotations.
    pub fn orbit_size(self, w: u64) -> u64 {
        (1..=self.n)
            .find(|&p| self.n % p == 0 && self.rotl(w, p) == w)
            .unwrap_or(self.n) as u64
    }

    #[inline]
    fn at_least(self, inputs: [u64; 5], theta: u8) -> u64 {
        let (mut b0, mut b1, mut b2) = (0u64, 0u64, 0u64);
        for x in inputs {
            let c0 = b0 & x;
            b0 ^= x;
            let c1 = b1 & c0;
            b1 ^= c0;
            b2 |= c1;
        }
        match theta {
            0 => self.mask,
            1 => b0 | b1 | b2,
            2 => b1 | b2,
            3 => b2 | (b1 & b0),
            4 => b2,
            5 => b2 & b0,
            _ => 0,
        }
    }

    /// Cells of `row` that may lie on a path; `prev` is the row above.
    #[inline]
    pub fn allowed(self, prev: u64, row: u64, path: PathType) -> u64 {
        let mut ok = !row & self.mask;
        if let PathType::Free(theta) = path {
            let inputs = [self.rotl(row, 1), self.rotr(row, 1), self.rotl(prev, 1), self.rotr(prev, 1), prev];
            ok &= !self.at_least(inputs, theta);
        }
        ok
    }

    #[inline]
    pub fn advance(self, from: u64, cur: u64, next: u64, path: PathType) -> u64 {
        let n = match path {
            PathType::Empty | PathType::Free(_) => self.rotl(from, 1) | self.rotr(from, 1) | from,
            PathType::Diagonal => self.rotl(from, 1) | self.rotr(from, 1),
            PathType::Wide => {
                let block_r = self.rotr(cur, 1) & next;
                let block_l = self.rotl(cur, 1) & next;
                from | self.rotl(from & !block_r, 1) | self.rotr(from & !block_l, 1)
            }
        };
        n & self.allowed(cur, next, path)
    }

    /// Whether a path joins rows 0 and `rows.len() - 1`.
    pub fn crosses(self, rows: &[u64], path: PathType) -> bool {
        let mut cur = self.allowed(0, rows[0], path);
        for t in 0..rows.len() - 1 {
            if cur == 0 {
                return false;
            }
            cur = self.advance(cur, rows[t], rows[t + 1], path);
        }
        cur != 0
    }
}

/// A web rule applied to two bit planes (`ones`, `twos`) of a cyclic row.
pub struct PlaneRule {
    cyl: Cyl,
    /// Output state indexed by `ones5 | twos5 << 5`, bit `k` of each five-bit
    /// window being cell `x - 2 + k`.
    table: Vec<u8>,
    /// Algebraic normal form of the rule on {0,2} rows, when those never produce 1s.
    anf: Option<Vec<u8>>,
}

impl PlaneRule {
    pub fn new(rule: &WebRule, n: u32) -> Self {
        let mut table = vec![0u8; 1024];
        for (i, out) in table.iter_mut().enumerate() {
            let (o, t) = (i & 31, i >> 5);
            if o & t != 0 {
                continue;
            }
            let st = |k: usize| ((o >> k) & 1) as u8 + 2 * ((t >> k) & 1) as u8;
            *out = rule.apply([st(0), st(1), st(2), st(3), st(4)]);
        }
        let twos: Vec<u8> = (0..32).map(|t| table[t << 5]).collect();
        let anf = (!twos.contains(&1)).then(|| {
            let mut c: Vec<u8> = twos.iter().map(|&s| (s == 2) as u8).collect();
            for b in 0..5 {
                for i in 0..32 {
                    if i & (1 << b) != 0 {
                        c[i] ^= c[i ^ (1 << b)];
                    }
                }
            }
            (0..32u8).filter(|&i| c[i as usize] == 1).collect()
        });
        PlaneRule {
            cyl: Cyl::new(n),
            table,
            anf,
        }
    }

    fn windows(&self, w: u64) -> u128 {
        let n = self.cyl.n;
        let w = w as u128;
        (w << 2) | (w >> (n - 2)) | (w << (n + 2))
    }

    /// One step of the full three-state rule.
    pub fn step(&self, ones: u64, twos: u64) -> (u64, u64) {
        let (eo, et) = (self.windows(ones), self.windows(twos));
        let (mut o, mut t) = (0u64, 0u64);
        for x in 0..self.cyl.n {
            let i = ((eo >> x) & 31) as usize | (((et >> x) & 31) as usize) << 5;
            match self.table[i] {
                1 => o |= 1 << x,
                2 => t |= 1 << x,
                _ => {}
            }
        }
        (o, t)
    }

    /// One step on a row without 1s.
    #[inline]
    pub fn step_twos(&self, twos: u64) -> u64 {
        match &self.anf {
            Some(monos) => {
                let c = self.cyl;
                let v = [c.rotl(twos, 2), c.rotl(twos, 1), twos, c.rotr(twos, 1), c.rotr(twos, 2)];
                let mut acc = 0u64;
                for &m in monos {
                    let mut term = c.mask;
                    for (k, vk) in v.iter().enumerate() {
                        if m & (1 << k) != 0 {
                            term &= vk;
                        }
                    }
                    acc ^= term;
                }
                acc
            }
            None => self.step(0, twos).1,
        }
    }

    pub fn twos_closed(&self) -> bool {
        self.anf.is_some()
    }
}

/// Orbit key of a {0,2} row: the least rotation over all rows of its cycle,
/// found with Brent's method. `None` when no cycle shows within `cap` steps.
pub fn ether_key(rule: &PlaneRule, start: u64, cap: usize) -> Option<u64> {
    let cyl = rule.cyl;
    let (mut power, mut lam) = (1usize, 1usize);
    let mut tortoise = start;
    let mut hare = rule.step_twos(start);
    let mut steps = 1;
    while tortoise != hare {
        if power == lam {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = rule.step_twos(hare);
        lam += 1;
        steps += 1;
        if steps > cap {
            return None;
        }
    }
    let mut key = u64::MAX;
    let mut row = hare;
    for _ in 0..lam {
        key = key.min(cyl.least_rotation(row));
        row = rule.step_twos(row);
    }
    Some(key)
}
