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

//! Step-by-step record of an algorithm run.
//!
//! The text form is one event per line, tab separated:
//!
//! ```text
//! # groupfair-trace/1 sizes=3,4,5
//! step  phase  group  agent  slot  items  counts
//! 0     pick   G1     a1     -     o1     0/3,0/4,0/5
//! ```
//!
//! Ids are 1-based, `-` marks an absent field or a dummy item, and `counts`
//! holds the exact selector ratios `t_p/|G_p|` seen when the group was chosen.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::Allocation;

pub const TRACE_HEADER: &str = "# groupfair-trace/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Draft-and-Match phase 1: an item joins a provisional bundle (`slot`).
    Draft,
    /// Draft-and-Match phase 2: a provisional bundle is handed to an agent.
    Match,
    /// Synchronous picking: an item goes to an agent.
    Pick,
    /// Dual-flow forward round over allocator-valued items.
    Forward,
    /// Dual-flow labelling turn without an item.
    Label,
    /// Dual-flow reverse round over zero-valued items.
    Reverse,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Draft => "draft",
            Phase::Match => "match",
            Phase::Pick => "pick",
            Phase::Forward => "forward",
            Phase::Label => "label",
            Phase::Reverse => "reverse",
        }
    }

    fn parse(s: &str) -> Option<Phase> {
        Some(match s {
            "draft" => Phase::Draft,
            "match" => Phase::Match,
            "pick" => Phase::Pick,
            "forward" => Phase::Forward,
            "label" => Phase::Label,
            "reverse" => Phase::Reverse,
            _ => return None,
        })
    }

    /// Whether the event hands items to their final owner.
    pub fn is_final(self) -> bool {
        matches!(
            self,
            Phase::Match | Phase::Pick | Phase::Forward | Phase::Reverse
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: usize,
    pub phase: Phase,
    pub group: Option<usize>,
    pub agent: Option<usize>,
    /// Provisional bundle index (Draft-and-Match only).
    pub slot: Option<usize>,
    /// Real items moved; empty for dummy picks and labelling turns.
    pub items: Vec<usize>,
    /// Pick counts per group at the moment the group was selected.
    pub counts: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub group_sizes: Vec<usize>,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new(group_sizes: Vec<usize>) -> Self {
        Trace {
            group_sizes,
            events: Vec::new(),
        }
    }

    pub(crate) fn push(
        &mut self,
        phase: Phase,
        group: Option<usize>,
        agent: Option<usize>,
        slot: Option<usize>,
        items: Vec<usize>,
        counts: Option<Vec<usize>>,
    ) {
        let step = self.events.len();
        self.events.push(TraceEvent {
            step,
            phase,
            group,
            agent,
            slot,
            items,
            counts,
        });
    }

    /// Groups chosen by the selector in `phase`, in order.
    pub fn group_sequence(&self, phase: Phase) -> Vec<usize> {
        self.events
            .iter()
            .filter(|e| e.phase == phase && e.counts.is_some())
            .filter_map(|e| e.group)
            .collect()
    }

    /// Rebuilds the final allocation from the events alone.
    pub fn replay(&self, n: usize, m: usize) -> Result<Allocation> {
        let mut bundles = vec![Vec::new(); n];
        for e in self.events.iter().filter(|e| e.phase.is_final()) {
            let agent = e
                .agent
                .filter(|&a| a < n)
                .ok_or_else(|| Error::input(format!("trace step {} has no valid agent", e.step)))?;
            bundles[agent].extend(e.items.iter().copied());
        }
        Allocation::new(m, bundles)
    }

    /// Provisional Draft-and-Match bundles rebuilt from the draft events.
    pub fn replay_draft(&self, n: usize, m: usize) -> Result<Allocation> {
        let mut bundles = vec![Vec::new(); n];
        for e in self.events.iter().filter(|e| e.phase == Phase::Draft) {
            let slot = e
                .slot
                .filter(|&s| s < n)
                .ok_or_else(|| Error::input(format!("trace step {} has no valid slot", e.step)))?;
            bundles[slot].extend(e.items.iter().copied());
        }
        Allocation::new(m, bundles)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sizes: Vec<String> = self.group_sizes.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "{TRACE_HEADER} sizes={}", sizes.join(","));
        for e in &self.events {
            let items = if e.items.is_empty() {
                "-".to_string()
            } else {
                e.items
                    .iter()
                    .map(|o| format!("o{}", o + 1))
                    .collect::<Vec<_>>()
                    .join("+")
            };
            let counts = match &e.counts {
                Some(c) => c
                    .iter()
                    .zip(&self.group_sizes)
                    .map(|(t, s)| format!("{t}/{s}"))
                    .collect::<Vec<_>>()
                    .join(","),
                None => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                e.step,
                e.phase.name(),
                opt_id("G", e.group),
                opt_id("a", e.agent),
                opt_id("b", e.slot),
                items,
                counts
            );
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Trace> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::input("empty trace"))?;
        let sizes = header
            .strip_prefix(TRACE_HEADER)
            .and_then(|rest| rest.trim().strip_prefix("sizes="))
            .ok_or_else(|| Error::input("missing trace header"))?;
        let group_sizes = if sizes.is_empty() {
            Vec::new()
        } else {
            sizes
                .split(',')
                .map(|s| s.parse::<usize>().map_err(|_| Error::input("bad group size")))
                .collect::<Result<_>>()?
        };
        let mut trace = Trace::new(group_sizes);
        for (lineno, line) in lines.enumerate() {
            let bad = |what: &str| Error::input(format!("trace line {}: bad {what}", lineno + 2));
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 7 {
                return Err(bad("field count"));
            }
            let step = fields[0].parse::<usize>().map_err(|_| bad("step"))?;
            let phase = Phase::parse(fields[1]).ok_or_else(|| bad("phase"))?;
            let group = parse_id("G", fields[2]).ok_or_else(|| bad("group"))?;
            let agent = parse_id("a", fields[3]).ok_or_else(|| bad("agent"))?;
            let slot = parse_id("b", fields[4]).ok_or_else(|| bad("slot"))?;
            let items = if fields[5] == "-" {
                Vec::new()
            } else {
                fields[5]
                    .split('+')
                    .map(|t| parse_id("o", t).flatten().ok_or_else(|| bad("items")))
                    .collect::<Result<_>>()?
            };
            let counts = if fields[6] == "-" {
                None
            } else {
                Some(
                    fields[6]
                        .split(',')
                        .map(|c| {
                            c.split_once('/')
                                .and_then(|(t, _)| t.parse::<usize>().ok())
                                .ok_or_else(|| bad("counts"))
                        })
                        .collect::<Result<_>>()?,
                )
            };
            trace.events.push(TraceEvent {
                step,
                phase,
                group,
                agent,
                slot,
                items,
                counts,
            });
        }
        Ok(trace)
    }
}

fn opt_id(prefix: &str, id: Option<usize>) -> String {
    match id {
        Some(i) => format!("{prefix}{}", i + 1),
        None => "-".to_string(),
    }
}

/// `Some(None)` for `-`, `Some(Some(id))` for a well-formed 1-based id.
fn parse_id(prefix: &str, s: &str) -> Option<Option<usize>> {
    if s == "-" {
        return Some(None);
    }
    let n: usize = s.strip_prefix(prefix)?.parse().ok()?;
    n.checked_sub(1).map(Some)
}
