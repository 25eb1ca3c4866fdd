// Copyright 2026 The groupfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Seeded search for instances without an EF1+CGEQ1 allocation.
//!
//! Random mode draws `(n, m, k, instance seed)` from a master stream seeded
//! by the configuration; exhaustive mode walks every integer instance of the
//! family in a fixed order. Instances are checked in chunks, possibly in
//! parallel, and merged in index order, so the log never depends on
//! scheduling.

use std::fmt;
use std::ops::{ControlFlow, RangeInclusive};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::instances::generate;
use crate::model::{detect_class, ClassKind, Instance};
use crate::oracle::{exists_allocation, ExistenceQuery, Predicate, DEFAULT_ENUM_CAP};
use crate::rational::Rational;

pub const SEARCH_LOG_HEADER: &str = "# groupfair-search/1";

const CHUNK: usize = 256;
const TARGET: [Predicate; 2] = [Predicate::Ef1, Predicate::Cgeq1];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub class: ClassKind,
    pub n_range: RangeInclusive<usize>,
    pub m_range: RangeInclusive<usize>,
    /// Group counts; `None` means `1..=n`. Always clipped to `n`.
    pub k_range: Option<RangeInclusive<usize>>,
    pub vmax: u64,
    pub seed: u64,
    pub budget: u64,
    pub exhaustive: bool,
    pub cap: u64,
    pub execution: Execution,
    /// Append per-instance elapsed time to log lines.
    pub timing: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            class: ClassKind::General,
            n_range: 2..=3,
            m_range: 2..=5,
            k_range: None,
            vmax: 10,
            seed: 0,
            budget: 10_000,
            exhaustive: false,
            cap: DEFAULT_ENUM_CAP,
            execution: Execution::default(),
            timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchVerdict {
    Exists,
    None,
    SkippedCap,
}

impl SearchVerdict {
    pub fn name(self) -> &'static str {
        match self {
            SearchVerdict::Exists => "EXISTS",
            SearchVerdict::None => "NONE",
            SearchVerdict::SkippedCap => "SKIPPED-cap",
        }
    }
}

/// One checked instance. `seed` is the generator seed in random mode and the
/// family ordinal in exhaustive mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogLine {
    pub index: u64,
    pub seed: u64,
    pub class: ClassKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub verdict: SearchVerdict,
    pub elapsed_us: Option<u128>,
}

impl fmt::Display for LogLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\tseed=0x{:016x}\tclass={}\tn={}\tm={}\tk={}\tverdict={}",
            self.index,
            self.seed,
            self.class,
            self.n,
            self.m,
            self.k,
            self.verdict.name()
        )?;
        if let Some(us) = self.elapsed_us {
            write!(f, "\telapsed_us={us}")?;
        }
        Ok(())
    }
}

impl FromStr for LogLine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("malformed search log line {s:?}"));
        let mut fields = s.split('\t');
        let index = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut take = |key: &str| -> Result<String> {
            fields
                .next()
                .and_then(|f| f.strip_prefix(key))
                .and_then(|f| f.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(bad)
        };
        let seed_text = take("seed")?;
        let seed = u64::from_str_radix(seed_text.trim_start_matches("0x"), 16).map_err(|_| bad())?;
        let class = take("class")?.parse()?;
        let n = take("n")?.parse().map_err(|_| bad())?;
        let m = take("m")?.parse().map_err(|_| bad())?;
        let k = take("k")?.parse().map_err(|_| bad())?;
        let verdict = match take("verdict")?.as_str() {
            "EXISTS" => SearchVerdict::Exists,
            "NONE" => SearchVerdict::None,
            "SKIPPED-cap" => SearchVerdict::SkippedCap,
            _ => return Err(bad()),
        };
        let elapsed_us = match take("elapsed_us") {
            Ok(t) => Some(t.parse().map_err(|_| bad())?),
            Err(_) => None,
        };
        Ok(LogLine {
            index,
            seed,
            class,
            n,
            m,
            k,
            verdict,
            elapsed_us,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// First instance with no EF1+CGEQ1 allocation, with its log index.
    pub counterexample: Option<(u64, Instance)>,
    pub lines: Vec<LogLine>,
    pub exists: u64,
    pub skipped: u64,
    header: String,
}

impl SearchOutcome {
    /// Header, one line per instance and a summary, newline terminated.
    pub fn log_text(&self) -> String {
        let mut out = String::with_capacity(64 * (self.lines.len() + 2));
        out.push_str(&self.header);
        out.push('\n');
        for line in &self.lines {
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out.push_str(&format!(
            "# checked={} exists={} none={} skipped={}\n",
            self.lines.len(),
            self.exists,
            u64::from(self.counterexample.is_some()),
            self.skipped
        ));
        out
    }
}

fn range_text(r: &RangeInclusive<usize>) -> String {
    format!("{}..={}", r.start(), r.end())
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [("n", &self.n_range), ("m", &self.m_range)] {
            if r.is_empty() {
                return Err(Error::input(format!("{name} range {} is empty", range_text(r))));
            }
        }
        if *self.n_range.start() == 0 {
            return Err(Error::input("n range must start at 1 or more"));
        }
        if let Some(k) = &self.k_range {
            if k.is_empty() || *k.start() == 0 {
                return Err(Error::input(format!("k range {} is invalid", range_text(k))));
            }
            if k.start() > self.n_range.start() {
                return Err(Error::input("k range must start at or below the smallest n"));
            }
        }
        if self.budget == 0 {
            return Err(Error::input("budget must be at least 1"));
        }
        if self.class == ClassKind::General
            && (*self.n_range.start() < 2 || *self.m_range.start() < 2 || self.vmax == 0)
        {
            return Err(Error::input(
                "general instances need n >= 2, m >= 2 and vmax >= 1",
            ));
        }
        Ok(())
    }

    fn k_bounds(&self, n: usize) -> RangeInclusive<usize> {
        match &self.k_range {
            Some(k) => *k.start()..=(*k.end()).min(n),
            None => 1..=n,
        }
    }

    fn header(&self) -> String {
        format!(
            "{SEARCH_LOG_HEADER} mode={} class={} n={} m={} k={} vmax={} seed=0x{:016x} budget={} cap={}",
            if self.exhaustive { "exhaustive" } else { "random" },
            self.class,
            range_text(&self.n_range),
            range_text(&self.m_range),
            self.k_range.as_ref().map_or("1..=n".into(), range_text),
            self.vmax,
            self.seed,
            self.budget,
            self.cap
        )
    }

    /// Rebuilds the instance behind a log line.
    pub fn replay(&self, line: &LogLine) -> Result<Instance> {
        if !self.exhaustive {
            return generate(line.class, line.n, line.m, line.k, self.vmax, line.seed);
        }
        let mut found = None;
        walk_family(self, |ordinal, inst| {
            if ordinal == line.seed {
                found = Some(inst);
                ControlFlow::Break(())
            } else if ordinal > line.seed {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        found.ok_or_else(|| Error::input(format!("no family member with ordinal {}", line.seed)))
    }
}

struct Candidate {
    seed: u64,
    instance: Instance,
}

/// Compositions of `n` into `k` positive parts, lexicographic.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

fn contiguous(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let g = (start..start + s).collect();
            start += s;
            g
        })
        .collect()
}

/// Every integer instance of the family in a fixed order, with a running
/// ordinal over all candidates (including ones outside the class).
fn walk_family(
    cfg: &SearchConfig,
    mut visit: impl FnMut(u64, Instance) -> ControlFlow<()>,
) -> Result<()> {
    let base = cfg.vmax + 1;
    let mut ordinal = 0u64;
    for n in cfg.n_range.clone() {
        for m in cfg.m_range.clone() {
            for k in cfg.k_bounds(n) {
                for sizes in compositions(n, k) {
                    let groups = contiguous(&sizes);
                    let mut digits = vec![0u64; (n + 1) * m];
                    loop {
                        let rows: Vec<Vec<Rational>> = digits
                            .chunks(m.max(1))
                            .take(n + 1)
                            .map(|c| c.iter().map(|&d| Rational::from_integer(d)).collect())
                            .collect();
                        let (agents, alloc) = if m == 0 {
                            (vec![Vec::new(); n], Vec::new())
                        } else {
                            (rows[..n].to_vec(), rows[n].clone())
                        };
                        let inst = Instance::new(groups.clone(), agents, alloc)?;
                        let member = match cfg.class {
                            ClassKind::General => detect_class(&inst).kind() == ClassKind::General,
                            kind => inst.belongs_to(kind),
                        };
                        if member && visit(ordinal, inst).is_break() {
                            return Ok(());
                        }
                        ordinal += 1;
                        let mut pos = digits.len();
                        let done = loop {
                            if pos == 0 {
                                break true;
                            }
                            pos -= 1;
                            digits[pos] += 1;
                            if digits[pos] < base {
                                break false;
                            }
                            digits[pos] = 0;
                        };
                        if done {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check(cfg: &SearchConfig, index: u64, cand: &Candidate) -> Result<LogLine> {
    let start = Instant::now();
    let query = ExistenceQuery::new(&cand.instance, &TARGET)?.with_cap(cfg.cap);
    let verdict = match exists_allocation(&query) {
        Ok(Some(_)) => SearchVerdict::Exists,
        Ok(None) => SearchVerdict::None,
        Err(Error::CapExceeded { .. }) => SearchVerdict::SkippedCap,
        Err(e) => return Err(e),
    };
    Ok(LogLine {
        index,
        seed: cand.seed,
        class: cfg.class,
        n: cand.instance.n(),
        m: cand.instance.m(),
        k: cand.instance.k(),
        verdict,
        elapsed_us: cfg.timing.then(|| start.elapsed().as_micros()),
    })
}

struct Collector<'a> {
    cfg: &'a SearchConfig,
    outcome: SearchOutcome,
    pending: Vec<Candidate>,
    error: Option<Error>,
}

impl Collector<'_> {
    /// Checks the pending chunk; `Break` once a counterexample is found.
    fn flush(&mut self) -> ControlFlow<()> {
        let chunk = std::mem::take(&mut self.pending);
        let first = self.outcome.lines.len() as u64;
        let cfg = self.cfg;
        let indexed: Vec<(u64, &Candidate)> =
            chunk.iter().enumerate().map(|(i, c)| (first + i as u64, c)).collect();
        let results = cfg
            .execution
            .map_ordered(&indexed, |&(index, cand)| check(cfg, index, cand));
        for (result, cand) in results.into_iter().zip(chunk) {
            let line = match result {
                Ok(line) => line,
                Err(e) => {
                    self.error = Some(e);
                    return ControlFlow::Break(());
                }
            };
            let verdict = line.verdict;
            let index = line.index;
            self.outcome.lines.push(line);
            match verdict {
                SearchVerdict::Exists => self.outcome.exists += 1,
                SearchVerdict::SkippedCap => self.outcome.skipped += 1,
                SearchVerdict::None => {
                    self.outcome.counterexample = Some((index, cand.instance));
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn push(&mut self, cand: Candidate) -> ControlFlow<()> {
        self.pending.push(cand);
        if self.pending.len() == CHUNK {
            self.flush()
        } else {
            ControlFlow::Continue(())
        }
    }
}

/// Checks up to `budget` instances and stops at the first one admitting no
/// EF1+CGEQ1 allocation. Instances over the enumeration cap are logged as
/// skipped.
pub fn search_counterexample(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let mut col = Collector {
        cfg,
        outcome: SearchOutcome {
            counterexample: None,
            lines: Vec::new(),
            exists: 0,
            skipped: 0,
            header: cfg.header(),
        },
        pending: Vec::with_capacity(CHUNK),
        error: None,
    };
    let mut stopped = false;
    if cfg.exhaustive {
        let mut taken = 0u64;
        walk_family(cfg, |ordinal, instance| {
            taken += 1;
            let flow = col.push(Candidate {
                seed: ordinal,
                instance,
            });
            if flow.is_break() {
                stopped = true;
                return flow;
            }
            if taken == cfg.budget {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
    } else {
        let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.budget {
            let n = master.gen_range(cfg.n_range.clone());
            let m = master.gen_range(cfg.m_range.clone());
            let k = master.gen_range(cfg.k_bounds(n));
            let seed = master.next_u64();
            let instance = generate(cfg.class, n, m, k, cfg.vmax, seed)?;
            if col.push(Candidate { seed, instance }).is_break() {
                stopped = true;
                break;
            }
        }
    }
    if !stopped {
        let _ = col.flush();
    }
    match col.error {
        Some(e) => Err(e),
        None => Ok(col.outcome),
    }
}
