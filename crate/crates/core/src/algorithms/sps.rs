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

//! Synchronous Picking Sequence for ordered instances.
//!
//! Items are walked in the common order, `n` at a time (padded with dummies).
//! Each item goes to the group chosen by the min-ratio selector; inside the
//! group the first `|G_p|` items label the members in arrival order, and
//! later items cycle through the members by label.

use crate::algorithms::selector::SelectorState;
use crate::algorithms::trace::{Phase, Trace};
use crate::algorithms::Outcome;
use crate::error::{Error, Result};
use crate::model::{common_order, Allocation, Instance};

pub fn sps_allocate(inst: &Instance) -> Result<Outcome> {
    let order = common_order(inst).ok_or(Error::Precondition {
        algorithm: "Synchronous Picking Sequence",
        required: "ordered",
    })?;
    let n = inst.n();
    let m = inst.m();
    let pad = if m.is_multiple_of(n) { 0 } else { n - m % n };
    // dummies (ids >= m) trail the real items; the common order already puts
    // the allocator's favourite first, ties by position
    let sequence: Vec<usize> = order.into_iter().chain(m..m + pad).collect();

    let mut selector = SelectorState::new(&inst.group_sizes());
    let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); inst.k()];
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut trace = Trace::new(inst.group_sizes());

    for &item in &sequence {
        let p = selector.select();
        let counts = selector.pick_counts().to_vec();
        let t = counts[p];
        let size = inst.group(p).len();
        let agent = if t < size {
            // members without an item yet, lowest id first; label = t
            let agent = inst.group(p)[t];
            by_label[p].push(agent);
            agent
        } else {
            by_label[p][t % size]
        };
        selector.commit(p);
        let real = if item < m { vec![item] } else { Vec::new() };
        bundles[agent].extend(real.iter().copied());
        trace.push(Phase::Pick, Some(p), Some(agent), None, real, Some(counts));
    }

    for b in bundles.iter_mut() {
        b.sort_unstable();
    }
    Ok(Outcome {
        allocation: Allocation::from_sorted_bundles(bundles),
        trace,
    })
}
