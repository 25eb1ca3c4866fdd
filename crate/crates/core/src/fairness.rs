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

//! Exact fairness predicates: EF, EF1, CGEQ and CGEQ1.
//!
//! Each predicate returns a [`Verdict`]; a failing verdict carries the
//! lexicographically first violating pair together with both sides of the
//! violated inequality, so the violation can be re-checked independently.
//!
//! For additive non-negative valuations "up to one item" reduces to removing
//! the single most valuable item, which is what every predicate does. An empty
//! envied bundle (or empty group union) never causes a violation.
//! Group averages are compared by cross-multiplication; no division happens.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{bundle_value, Allocation, Instance};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Notion {
    Ef,
    Ef1,
    Cgeq,
    Cgeq1,
}

impl Notion {
    pub fn name(self) -> &'static str {
        match self {
            Notion::Ef => "EF",
            Notion::Ef1 => "EF1",
            Notion::Cgeq => "CGEQ",
            Notion::Cgeq1 => "CGEQ1",
        }
    }

    fn is_group_level(self) -> bool {
        matches!(self, Notion::Cgeq | Notion::Cgeq1)
    }
}

/// Concrete violation of one fairness inequality.
///
/// For agent notions `first` envies `second` and the violated inequality is
/// `lhs >= rhs` with `lhs = v_first(A_first)` and
/// `rhs = v_first(A_second)` (minus the removed item for EF1).
/// For group notions `lhs = u_first * |G_second|` and
/// `rhs = (u_second - removed) * |G_first|`; CGEQ is violated when they differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub notion: Notion,
    pub first: usize,
    pub second: usize,
    pub removed_item: Option<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Witness {
    /// Recomputes both sides from scratch and reports whether the violation
    /// is reproduced exactly.
    pub fn reproduces(&self, inst: &Instance, alloc: &Allocation) -> bool {
        let (lhs, rhs) = if self.notion.is_group_level() {
            let up = group_union_value(inst, alloc, self.first);
            let uq = group_union_value(inst, alloc, self.second);
            let removed = self
                .removed_item
                .map(|o| inst.allocator_values()[o].clone())
                .unwrap_or_default();
            (
                up.scale(inst.group(self.second).len()),
                uq.saturating_sub(&removed).scale(inst.group(self.first).len()),
            )
        } else {
            let row = inst.agent_row(self.first);
            let removed = self
                .removed_item
                .map(|o| row[o].clone())
                .unwrap_or_default();
            (
                bundle_value(row, alloc.bundle(self.first)),
                bundle_value(row, alloc.bundle(self.second)).saturating_sub(&removed),
            )
        };
        let violated = match self.notion {
            Notion::Cgeq => lhs != rhs,
            _ => lhs < rhs,
        };
        violated && lhs == self.lhs && rhs == self.rhs
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let removed = self
            .removed_item
            .map(|o| format!(" after removing o{}", o + 1))
            .unwrap_or_default();
        match self.notion {
            Notion::Ef | Notion::Ef1 => write!(
                f,
                "agent a{} envies agent a{}{}: {} < {}",
                self.first + 1,
                self.second + 1,
                removed,
                self.lhs,
                self.rhs
            ),
            Notion::Cgeq => write!(
                f,
                "groups G{} and G{} differ: {} != {} (cross-multiplied)",
                self.first + 1,
                self.second + 1,
                self.lhs,
                self.rhs
            ),
            Notion::Cgeq1 => write!(
                f,
                "group G{} falls behind group G{}{}: {} < {} (cross-multiplied)",
                self.first + 1,
                self.second + 1,
                removed,
                self.lhs,
                self.rhs
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// All four verdicts plus the allocator's view of each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairnessReport {
    pub ef: Verdict,
    pub ef1: Verdict,
    pub cgeq: Verdict,
    pub cgeq1: Verdict,
    pub group_sizes: Vec<usize>,
    pub group_utilities: Vec<Rational>,
    pub group_averages: Vec<Rational>,
}

impl FairnessReport {
    pub fn verdict(&self, notion: Notion) -> &Verdict {
        match notion {
            Notion::Ef => &self.ef,
            Notion::Ef1 => &self.ef1,
            Notion::Cgeq => &self.cgeq,
            Notion::Cgeq1 => &self.cgeq1,
        }
    }
}

/// Most valuable item of `items` under `values`, lowest id on ties.
fn best_item(values: &[Rational], items: impl IntoIterator<Item = usize>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for o in items {
        match best {
            Some(b) if values[o] <= values[b] => {}
            _ => best = Some(o),
        }
    }
    best
}

fn group_items<'a>(
    inst: &'a Instance,
    alloc: &'a Allocation,
    p: usize,
) -> impl Iterator<Item = usize> + 'a {
    inst.group(p)
        .iter()
        .flat_map(move |&i| alloc.bundle(i).iter().copied())
}

fn group_union_value(inst: &Instance, alloc: &Allocation, p: usize) -> Rational {
    let u = inst.allocator_values();
    group_items(inst, alloc, p).map(|o| &u[o]).sum()
}

/// Allocator's value of the union of the bundles held by group `p`.
pub fn group_utility(inst: &Instance, alloc: &Allocation, p: usize) -> Result<Rational> {
    if p >= inst.k() {
        return Err(Error::input(format!(
            "group index {p} out of range ({} groups)",
            inst.k()
        )));
    }
    Ok(group_union_value(inst, alloc, p))
}

pub fn is_ef(inst: &Instance, alloc: &Allocation) -> Verdict {
    agent_check(inst, alloc, false, 0..inst.n())
}

pub fn is_ef1(inst: &Instance, alloc: &Allocation) -> Verdict {
    agent_check(inst, alloc, true, 0..inst.n())
}

/// EF restricted to the envy of one agent towards the others.
pub fn is_ef_for(inst: &Instance, alloc: &Allocation, agent: usize) -> Verdict {
    agent_check(inst, alloc, false, agent..agent + 1)
}

/// EF1 restricted to the envy of one agent towards the others.
pub fn is_ef1_for(inst: &Instance, alloc: &Allocation, agent: usize) -> Verdict {
    agent_check(inst, alloc, true, agent..agent + 1)
}

fn agent_check(
    inst: &Instance,
    alloc: &Allocation,
    up_to_one: bool,
    agents: std::ops::Range<usize>,
) -> Verdict {
    let n = inst.n();
    for i in agents {
        let row = inst.agent_row(i);
        let own = bundle_value(row, alloc.bundle(i));
        for j in (0..n).filter(|&j| j != i) {
            let other = alloc.bundle(j);
            let mut theirs = bundle_value(row, other);
            let mut removed = None;
            if up_to_one {
                if let Some(o) = best_item(row, other.iter().copied()) {
                    theirs = theirs.saturating_sub(&row[o]);
                    removed = Some(o);
                }
            }
            if own < theirs {
                return Verdict::fail(Witness {
                    notion: if up_to_one { Notion::Ef1 } else { Notion::Ef },
                    first: i,
                    second: j,
                    removed_item: removed,
                    lhs: own,
                    rhs: theirs,
                });
            }
        }
    }
    Verdict::pass()
}

pub fn is_cgeq(inst: &Instance, alloc: &Allocation) -> Verdict {
    let utilities: Vec<Rational> = (0..inst.k())
        .map(|p| group_union_value(inst, alloc, p))
        .collect();
    let sizes = inst.group_sizes();
    for p in 0..inst.k() {
        for q in (0..inst.k()).filter(|&q| q != p) {
            let lhs = utilities[p].scale(sizes[q]);
            let rhs = utilities[q].scale(sizes[p]);
            if lhs != rhs {
                return Verdict::fail(Witness {
                    notion: Notion::Cgeq,
                    first: p,
                    second: q,
                    removed_item: None,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Verdict::pass()
}

pub fn is_cgeq1(inst: &Instance, alloc: &Allocation) -> Verdict {
    let u = inst.allocator_values();
    let k = inst.k();
    let utilities: Vec<Rational> = (0..k).map(|p| group_union_value(inst, alloc, p)).collect();
    let best: Vec<Option<usize>> = (0..k)
        .map(|q| best_item(u, group_items(inst, alloc, q)))
        .collect();
    let sizes = inst.group_sizes();
    for p in 0..k {
        for q in (0..k).filter(|&q| q != p) {
            let residual = match best[q] {
                Some(o) => utilities[q].saturating_sub(&u[o]),
                None => Rational::zero(),
            };
            let lhs = utilities[p].scale(sizes[q]);
            let rhs = residual.scale(sizes[p]);
            if lhs < rhs {
                return Verdict::fail(Witness {
                    notion: Notion::Cgeq1,
                    first: p,
                    second: q,
                    removed_item: best[q],
                    lhs,
                    rhs,
                });
            }
        }
    }
    Verdict::pass()
}

pub fn evaluate(inst: &Instance, alloc: &Allocation) -> FairnessReport {
    let group_sizes = inst.group_sizes();
    let group_utilities: Vec<Rational> = (0..inst.k())
        .map(|p| group_union_value(inst, alloc, p))
        .collect();
    let group_averages = group_utilities
        .iter()
        .zip(&group_sizes)
        .map(|(u, &s)| u / &Rational::from_integer(s as u64))
        .collect();
    FairnessReport {
        ef: is_ef(inst, alloc),
        ef1: is_ef1(inst, alloc),
        cgeq: is_cgeq(inst, alloc),
        cgeq1: is_cgeq1(inst, alloc),
        group_sizes,
        group_utilities,
        group_averages,
    }
}

/// `min_p u(G_p) / |G_p|`, the share the worst-off group receives.
pub fn min_group_average(inst: &Instance, alloc: &Allocation) -> Rational {
    (0..inst.k())
        .map(|p| {
            &group_union_value(inst, alloc, p) / &Rational::from_integer(inst.group(p).len() as u64)
        })
        .min()
        .unwrap_or_default()
}
