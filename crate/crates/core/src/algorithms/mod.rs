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

//! Constructive EF1+CGEQ1 algorithms and the selector they share.

pub mod cd2p;
pub mod dm;
pub mod selector;
pub mod sps;
pub mod trace;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{detect_class, Allocation, Instance, InstanceClass};
use crate::rational::Rational;

pub use cd2p::cd2p_allocate;
pub use dm::{dm_allocate, draft_allocation};
pub use selector::{quota_violations, QuotaViolation, SelectorState};
pub use sps::sps_allocate;
pub use trace::{Phase, Trace, TraceEvent};

/// Result of a constructive run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub allocation: Allocation,
    pub trace: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Auto,
    Dm,
    Sps,
    Cd2p,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Dm => "dm",
            Algorithm::Sps => "sps",
            Algorithm::Cd2p => "cd2p",
        }
    }

    /// The algorithm with a guarantee for `class`, if any.
    pub fn for_class(class: &InstanceClass) -> Option<Algorithm> {
        match class {
            InstanceClass::IdenticalAgents => Some(Algorithm::Dm),
            InstanceClass::Ordered { .. } => Some(Algorithm::Sps),
            InstanceClass::BinaryAllocator { .. } => Some(Algorithm::Cd2p),
            InstanceClass::General => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Algorithm::Auto),
            "dm" => Ok(Algorithm::Dm),
            "sps" => Ok(Algorithm::Sps),
            "cd2p" => Ok(Algorithm::Cd2p),
            _ => Err(Error::input(format!(
                "unknown algorithm {s:?} (expected auto, dm, sps or cd2p)"
            ))),
        }
    }
}

/// Runs `algo`, resolving `Auto` through class detection. Never falls back
/// to exhaustive search.
pub fn solve(inst: &Instance, algo: Algorithm) -> Result<(Algorithm, Outcome)> {
    let algo = match algo {
        Algorithm::Auto => {
            Algorithm::for_class(&detect_class(inst)).ok_or(Error::NoGuaranteedAlgorithm)?
        }
        other => other,
    };
    let outcome = match algo {
        Algorithm::Dm => dm_allocate(inst)?,
        Algorithm::Sps => sps_allocate(inst)?,
        Algorithm::Cd2p => cd2p_allocate(inst)?,
        Algorithm::Auto => unreachable!("resolved above"),
    };
    Ok((algo, outcome))
}

/// Agent-specific preference list over a pool of items, most valued first,
/// lowest id on ties. Taken items are skipped lazily.
struct PreferenceCursor {
    items: Vec<usize>,
    pos: usize,
}

impl PreferenceCursor {
    fn new(values: &[Rational], pool: &[usize]) -> Self {
        let mut items = pool.to_vec();
        items.sort_by(|&a, &b| values[b].cmp(&values[a]));
        PreferenceCursor { items, pos: 0 }
    }

    fn take(&mut self, taken: &mut [bool]) -> Option<usize> {
        while let Some(&o) = self.items.get(self.pos) {
            self.pos += 1;
            if !taken[o] {
                taken[o] = true;
                return Some(o);
            }
        }
        None
    }
}

/// `(agent, item)` picks in turn order.
type Picks = Vec<(usize, usize)>;

/// Forward round-robin over `first` in label order, then reverse
/// round-robin over `second` starting from the last label. Each agent takes
/// its most valued remaining item.
pub(crate) fn dual_flow(
    inst: &Instance,
    label_order: &[usize],
    first: &[usize],
    second: &[usize],
) -> (Allocation, Picks, Picks) {
    let n = inst.n();
    debug_assert_eq!(label_order.len(), n);
    let mut taken = vec![false; inst.m()];
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];

    let mut run = |pool: &[usize], labels: &mut dyn Iterator<Item = usize>| -> Picks {
        let mut cursors: Vec<Option<PreferenceCursor>> = (0..n).map(|_| None).collect();
        let mut picks = Vec::with_capacity(pool.len());
        for label in labels.take(pool.len()) {
            let agent = label_order[label];
            let cursor = cursors[agent]
                .get_or_insert_with(|| PreferenceCursor::new(inst.agent_row(agent), pool));
            let item = cursor
                .take(&mut taken)
                .expect("pool holds one item per turn");
            bundles[agent].push(item);
            picks.push((agent, item));
        }
        picks
    };

    let forward = run(first, &mut (0..n).cycle());
    let reverse = run(second, &mut (0..n).rev().cycle());

    for b in bundles.iter_mut() {
        b.sort_unstable();
    }
    (Allocation::from_sorted_bundles(bundles), forward, reverse)
}
