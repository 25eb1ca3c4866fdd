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

//! Clustering-Based Dual-Flow Picking for binary allocator valuations.
//!
//! Items the allocator values are picked round-robin in label order, where
//! the labels come from the min-ratio selector during the first round. Items
//! the allocator ignores are then picked round-robin in reverse label order.
//! If the valued items run out before every agent has a label, the remaining
//! first-round turns only hand out labels.

use crate::algorithms::selector::SelectorState;
use crate::algorithms::trace::{Phase, Trace};
use crate::algorithms::{dual_flow, Outcome};
use crate::error::{Error, Result};
use crate::model::{binary_level, Instance};

/// Agent holding each label, as chosen by the selector, plus the pick counts
/// seen at each choice.
fn assign_labels(inst: &Instance) -> (Vec<usize>, Vec<(usize, Vec<usize>)>) {
    let mut selector = SelectorState::new(&inst.group_sizes());
    let mut next_member = vec![0usize; inst.k()];
    let mut agents = Vec::with_capacity(inst.n());
    let mut choices = Vec::with_capacity(inst.n());
    for _ in 0..inst.n() {
        let p = selector.select();
        choices.push((p, selector.pick_counts().to_vec()));
        agents.push(inst.group(p)[next_member[p]]);
        next_member[p] += 1;
        selector.commit(p);
    }
    (agents, choices)
}

pub fn cd2p_allocate(inst: &Instance) -> Result<Outcome> {
    binary_level(inst).ok_or(Error::Precondition {
        algorithm: "Clustering-Based Dual-Flow Picking",
        required: "binary allocator",
    })?;
    let (valued, ignored): (Vec<usize>, Vec<usize>) =
        (0..inst.m()).partition(|&o| !inst.allocator_values()[o].is_zero());
    let (label_order, choices) = assign_labels(inst);
    let (allocation, forward, reverse) = dual_flow(inst, &label_order, &valued, &ignored);

    let mut trace = Trace::new(inst.group_sizes());
    let turns = forward.len().max(inst.n());
    for turn in 0..turns {
        let label = turn % inst.n();
        let agent = label_order[label];
        let (group, counts) = match choices.get(turn) {
            Some((p, c)) if turn < inst.n() => (*p, Some(c.clone())),
            _ => (inst.group_of(agent), None),
        };
        match forward.get(turn) {
            Some(&(a, item)) => {
                debug_assert_eq!(a, agent);
                trace.push(Phase::Forward, Some(group), Some(agent), None, vec![item], counts);
            }
            None => trace.push(Phase::Label, Some(group), Some(agent), None, Vec::new(), counts),
        }
    }
    for (agent, item) in reverse {
        trace.push(
            Phase::Reverse,
            Some(inst.group_of(agent)),
            Some(agent),
            None,
            vec![item],
            None,
        );
    }
    Ok(Outcome { allocation, trace })
}
