//! 243-entry web rule tables and compliance classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::percolation::PathType;

pub const TABLE_SIZE: usize = 243;

#[inline]
pub fn delta(s: u8) -> u8 {
    (s == 1) as u8
}

#[inline]
pub fn index(t: [u8; 5]) -> usize {
    t[0] as usize * 81 + t[1] as usize * 27 + t[2] as usize * 9 + t[3] as usize * 3 + t[4] as usize
}

pub fn tuple(mut i: usize) -> [u8; 5] {
    let mut t = [0u8; 5];
    for k in (0..5).rev() {
        t[k] = (i % 3) as u8;
        i /= 3;
    }
    t
}

/// New first-level states `(ℓ, r)` of the two neighbours.
#[inline]
pub fn lr(t: [u8; 5]) -> (u8, u8) {
    let [a, b, c, d, e] = t.map(delta);
    ((a + b + c) & 1, (c + d + e) & 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinRule {
    WebXor,
    ModifiedWebXor,
    WebRule30,
    #[serde(rename = "extended_1or3")]
    Extended1Or3,
    Piggyback,
    #[serde(rename = "web_1or3")]
    Web1Or3,
}

impl BuiltinRule {
    pub const ALL: [BuiltinRule; 6] = [
        BuiltinRule::WebXor,
        BuiltinRule::ModifiedWebXor,
        BuiltinRule::WebRule30,
        BuiltinRule::Extended1Or3,
        BuiltinRule::Piggyback,
        BuiltinRule::Web1Or3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinRule::WebXor => "web_xor",
            BuiltinRule::ModifiedWebXor => "modified_web_xor",
            BuiltinRule::WebRule30 => "web_rule30",
            BuiltinRule::Extended1Or3 => "extended_1or3",
            BuiltinRule::Piggyback => "piggyback",
            BuiltinRule::Web1Or3 => "web_1or3",
        }
    }

    /// Whether the cell becomes 2, given that the first level leaves it non-1.
    fn births(self, t: [u8; 5]) -> bool {
        let [_, b, c, d, _] = t;
        let (l, r) = lr(t);
        let n1 = |xs: &[u8]| xs.iter().filter(|&&s| s == 1).count();
        let n2 = |xs: &[u8]| xs.iter().filter(|&&s| s == 2).count();
        let n12 = |xs: &[u8]| xs.iter().filter(|&&s| s != 0).count();
        match self {
            BuiltinRule::WebXor => n2(&[b, d]) == 1,
            BuiltinRule::ModifiedWebXor => {
                n2(&[b, d]) == 1 || (n2(&[b, d]) > 1 && n1(&[l, b, c, d, r]) >= 1)
            }
            BuiltinRule::WebRule30 => {
                let d2 = |s: u8| (s == 2) as u8;
                let w30 = |a1: u8, a2: u8, a3: u8| (a1 + a2 + a3 + a2 * a3) & 1;
                n1(&[l, b, c, d, r]) <= 2
                    && (w30(d2(b), d2(c), d2(d)) == 1
                        || (n2(&[b, c, d]) >= 1 && n1(&[l, b, c, d, r]) >= 1))
            }
            BuiltinRule::Extended1Or3 => matches!(n12(&[l, r, b, c, d]), 1 | 3),
            BuiltinRule::Piggyback => {
                let k = n12(&[l, c, r]);
                k == 2 || (k <= 1 && matches!(n12(&[l, b, c, d, r]), 1 | 3))
            }
            BuiltinRule::Web1Or3 => n2(&[b, c, d]) % 2 == 1,
        }
    }

    /// State-2 colour used when rendering.
    pub fn palette(self) -> [u8; 3] {
        match self {
            BuiltinRule::WebXor | BuiltinRule::ModifiedWebXor => [220, 30, 30],
            BuiltinRule::WebRule30 => [230, 120, 0],
            BuiltinRule::Extended1Or3 => [0, 150, 60],
            BuiltinRule::Piggyback => [40, 60, 220],
            BuiltinRule::Web1Or3 => [150, 40, 160],
        }
    }
}

impl FromStr for BuiltinRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BuiltinRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

impl fmt::Display for BuiltinRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub empty_compliant: bool,
    pub diagonal_compliant: bool,
    pub wide_compliant: bool,
    pub free3_compliant: bool,
    pub free4_compliant: bool,
    pub free5_compliant: bool,
    pub spontaneous_birth: bool,
}

impl ComplianceReport {
    /// The smallest certified path class, in the order diagonal, free3, wide,
    /// free4, free5, empty.
    pub fn strongest(&self) -> Option<PathType> {
        [
            (self.diagonal_compliant, PathType::Diagonal),
            (self.free3_compliant, PathType::Free(3)),
            (self.wide_compliant, PathType::Wide),
            (self.free4_compliant, PathType::Free(4)),
            (self.free5_compliant, PathType::Free(5)),
            (self.empty_compliant, PathType::Empty),
        ]
        .into_iter()
        .find(|c| c.0)
        .map(|c| c.1)
    }

    pub fn complies(&self, path: PathType) -> bool {
        match path {
            PathType::Empty => self.empty_compliant,
            PathType::Diagonal => self.diagonal_compliant,
            PathType::Wide => self.wide_compliant,
            PathType::Free(3) => self.free3_compliant,
            PathType::Free(4) => self.free4_compliant,
            PathType::Free(5) => self.free5_compliant,
            PathType::Free(_) => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WebRule {
    pub id: String,
    table: [u8; TABLE_SIZE],
    compliance: ComplianceReport,
    pub palette_rgb: [u8; 3],
}

impl fmt::Debug for WebRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WebRule")
            .field("id", &self.id)
            .field("compliance", &self.compliance)
            .finish()
    }
}

pub fn builtin_rule(name: &str) -> Result<WebRule> {
    Ok(WebRule::builtin(name.parse()?))
}

impl WebRule {
    pub fn builtin(rule: BuiltinRule) -> WebRule {
        let mut table = [0u8; TABLE_SIZE];
        for (i, out) in table.iter_mut().enumerate() {
            let t = tuple(i);
            let [_, b, c, d, _] = t.map(delta);
            *out = if (b + c + d) & 1 == 1 {
                1
            } else if rule.births(t) {
                2
            } else {
                0
            };
        }
        let mut r = validate_web_rule(rule.name(), table).expect("builtin tables are web rules");
        r.palette_rgb = rule.palette();
        r
    }

    #[inline]
    pub fn apply(&self, t: [u8; 5]) -> u8 {
        self.table[index(t)]
    }

    #[inline]
    pub fn table(&self) -> &[u8; TABLE_SIZE] {
        &self.table
    }

    pub fn compliance(&self) -> ComplianceReport {
        self.compliance
    }
}

/// Accepts a table iff it satisfies the first-level condition and quiescence.
pub fn validate_web_rule(id: &str, table: [u8; TABLE_SIZE]) -> Result<WebRule> {
    if table[0] != 0 {
        return Err(Error::InvalidRule {
            kind: "quiescence",
            tuple: [0; 5],
        });
    }
    for (i, &out) in table.iter().enumerate() {
        let t = tuple(i);
        let [_, b, c, d, _] = t.map(delta);
        if out > 2 || delta(out) != (b + c + d) & 1 {
            return Err(Error::InvalidRule {
                kind: "first-level",
                tuple: t,
            });
        }
    }
    let mut rule = WebRule {
        id: id.to_string(),
        table,
        compliance: ComplianceReport::default(),
        palette_rgb: [200, 0, 0],
    };
    rule.compliance = classify_compliance(&rule);
    Ok(rule)
}

/// Whether `f(t) = f(t')` for every `t'` that agrees with `t` in δ and that
/// differs only at the positions in `free`.
fn invariant_on(rule: &WebRule, t: [u8; 5], free: [bool; 5]) -> bool {
    let f = rule.apply(t);
    let mut alt = t;
    (0..32u32).all(|mask| {
        for k in 0..5 {
            alt[k] = if free[k] && t[k] != 1 {
                2 * (mask >> k & 1) as u8
            } else {
                t[k]
            };
        }
        rule.apply(alt) == f
    })
}

pub fn classify_compliance(rule: &WebRule) -> ComplianceReport {
    let all = |cond: &dyn Fn([u8; 5]) -> bool| (0..TABLE_SIZE).map(tuple).all(|t| cond(t));
    let empty = all(&|t| invariant_on(rule, t, [true, false, false, false, true]));
    let diagonal = empty && all(&|t| invariant_on(rule, t, [true, false, true, false, true]));
    let wide = empty
        && all(&|t| {
            let (l, r) = lr(t);
            (!(t[2] == 1 && r == 1) || invariant_on(rule, t, [true, false, false, true, true]))
                && (!(t[2] == 1 && l == 1) || invariant_on(rule, t, [true, true, false, false, true]))
        });
    let free = |theta: u8| {
        empty
            && all(&|t| {
                let (l, r) = lr(t);
                let n = delta(t[1]) + delta(t[2]) + delta(t[3]) + l + r;
                n < theta || invariant_on(rule, t, [true; 5])
            })
    };
    let spontaneous_birth = (0..32u32).any(|m| {
        let t = [0, 1, 2, 3, 4].map(|k| (m >> k & 1) as u8);
        rule.apply(t) == 2
    });
    ComplianceReport {
        empty_compliant: empty,
        diagonal_compliant: diagonal,
        wide_compliant: wide,
        free3_compliant: free(3),
        free4_compliant: free(4),
        free5_compliant: free(5),
        spontaneous_birth,
    }
}
