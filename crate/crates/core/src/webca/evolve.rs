use crate::additive::DEFAULT_CELL_CAP;
use crate::config::TernaryConfig;
use crate::error::{Error, Result};
use crate::webca::rules::WebRule;

/// Rows `0..=T` of a web CA run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebDiagram {
    pub rule_id: String,
    pub rows: Vec<TernaryConfig>,
}

impl WebDiagram {
    pub fn get(&self, x: i64, t: usize) -> u8 {
        self.rows[t].get(x)
    }

    pub fn horizon(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Applies the rule to `src`, where `src[i]` sits at cell `i`; cells outside
/// the slice read as 0. Returns one output per cell of `-2..len+2`.
fn step_open(rule: &WebRule, src: &[u8]) -> Vec<u8> {
    let n = src.len();
    let at = |i: isize| -> u8 {
        if i < 0 || i as usize >= n {
            0
        } else {
            src[i as usize]
        }
    };
    let table = rule.table();
    let mut out = Vec::with_capacity(n + 4);
    // rolling base-3 index over the window x-2..=x+2
    let mut idx = 0usize;
    for i in -4..=-1isize {
        idx = (idx * 3 + at(i) as usize) % 243;
    }
    for x in -2..(n as isize + 2) {
        idx = (idx * 3 + at(x + 2) as usize) % 243;
        out.push(table[idx]);
    }
    out
}

/// One update of a periodic word, cell `i` at position `i`.
pub fn step_periodic(rule: &WebRule, src: &[u8]) -> Vec<u8> {
    let n = src.len() as isize;
    let at = |i: isize| src[i.rem_euclid(n) as usize];
    let table = rule.table();
    (0..n)
        .map(|x| {
            let idx = at(x - 2) as usize * 81
                + at(x - 1) as usize * 27
                + at(x) as usize * 9
                + at(x + 1) as usize * 3
                + at(x + 2) as usize;
            table[idx]
        })
        .collect()
}

pub fn step_web(rule: &WebRule, config: &TernaryConfig) -> TernaryConfig {
    if config.periodic {
        TernaryConfig {
            offset: 0,
            states: step_periodic(rule, &config.states),
            periodic: true,
        }
    } else if config.states.is_empty() {
        TernaryConfig::empty()
    } else {
        TernaryConfig::finite(config.offset - 2, step_open(rule, &config.states))
    }
}

pub fn evolve_web(rule: &WebRule, config: &TernaryConfig, steps: usize) -> Result<WebDiagram> {
    let width = config.states.len() as u64 + if config.periodic { 0 } else { 4 * steps as u64 };
    let needed = width.saturating_mul(steps as u64 + 1);
    if needed > DEFAULT_CELL_CAP {
        return Err(Error::MemoryCap {
            needed,
            cap: DEFAULT_CELL_CAP,
        });
    }
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(config.clone());
    for t in 0..steps {
        let next = step_web(rule, &rows[t]);
        rows.push(next);
    }
    Ok(WebDiagram {
        rule_id: rule.id.clone(),
        rows,
    })
}
