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

//! Draft-and-Match for instances where every agent has the same valuation.
//!
//! Phase 1 drafts `n` provisional bundles: items are padded with zero-valued
//! dummies to a multiple of `n`, sorted by allocator value, and each batch of
//! `n` is dealt so that the most valuable remaining batch item goes to the
//! poorest provisional bundle that has not yet received an item in this
//! batch. Phase 2 hands the provisional bundles out, richest (by allocator
//! value) first, to the groups chosen by the min-ratio selector.

use crate::algorithms::selector::SelectorState;
use crate::algorithms::trace::{Phase, Trace};
use crate::algorithms::Outcome;
use crate::error::{Error, Result};
use crate::model::{has_identical_agents, Allocation, Instance};
use crate::rational::Rational;

const NAME: &str = "Draft-and-Match";

fn check(inst: &Instance) -> Result<()> {
    if has_identical_agents(inst) {
        Ok(())
    } else {
        Err(Error::Precondition {
            algorithm: NAME,
            required: "identical agent",
        })
    }
}

/// Provisional bundles, including dummy ids `>= m`.
fn draft(inst: &Instance, trace: &mut Trace) -> Vec<Vec<usize>> {
    let n = inst.n();
    let m = inst.m();
    let pad = if m.is_multiple_of(n) { 0 } else { n - m % n };
    let total = m + pad;
    let zero = Rational::zero();
    let v = |o: usize| if o < m { inst.value(0, o) } else { &zero };
    let u = |o: usize| if o < m { &inst.allocator_values()[o] } else { &zero };

    let mut sorted: Vec<usize> = (0..total).collect();
    sorted.sort_by(|&a, &b| u(b).cmp(u(a)));

    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut bundle_v: Vec<Rational> = vec![Rational::zero(); n];
    for batch in sorted.chunks(n) {
        let mut items: Vec<usize> = batch.to_vec();
        let mut open = vec![true; n];
        while !items.is_empty() {
            let mut pos = 0;
            for (idx, &o) in items.iter().enumerate().skip(1) {
                let best = items[pos];
                if v(o) > v(best) || (v(o) == v(best) && o < best) {
                    pos = idx;
                }
            }
            let item = items.swap_remove(pos);
            let agent = (0..n)
                .filter(|&i| open[i])
                .min_by(|&a, &b| bundle_v[a].cmp(&bundle_v[b]).then(a.cmp(&b)))
                .expect("a batch never has more items than agents");
            open[agent] = false;
            bundle_v[agent] += v(item);
            bundles[agent].push(item);
            let real = if item < m { vec![item] } else { Vec::new() };
            trace.push(Phase::Draft, None, None, Some(agent), real, None);
        }
    }
    bundles
}

fn strip_dummies(bundle: &[usize], m: usize) -> Vec<usize> {
    let mut out: Vec<usize> = bundle.iter().copied().filter(|&o| o < m).collect();
    out.sort_unstable();
    out
}

/// The provisional allocation of phase 1, dummies removed.
pub fn draft_allocation(inst: &Instance) -> Result<Allocation> {
    check(inst)?;
    let mut scratch = Trace::new(inst.group_sizes());
    let bundles = draft(inst, &mut scratch);
    Ok(Allocation::from_sorted_bundles(
        bundles.iter().map(|b| strip_dummies(b, inst.m())).collect(),
    ))
}

pub fn dm_allocate(inst: &Instance) -> Result<Outcome> {
    check(inst)?;
    let n = inst.n();
    let m = inst.m();
    let mut trace = Trace::new(inst.group_sizes());
    let provisional: Vec<Vec<usize>> = draft(inst, &mut trace)
        .iter()
        .map(|b| strip_dummies(b, m))
        .collect();
    if m == 0 {
        return Ok(Outcome {
            allocation: Allocation::empty(n),
            trace,
        });
    }

    let u = inst.allocator_values();
    let slot_u: Vec<Rational> = provisional
        .iter()
        .map(|b| b.iter().map(|&o| &u[o]).sum())
        .collect();
    let mut slot_open = vec![true; n];
    let mut served = vec![false; n];
    let mut selector = SelectorState::new(&inst.group_sizes());
    let mut bundles = vec![Vec::new(); n];

    for _ in 0..n {
        let p = selector.select();
        let counts = selector.pick_counts().to_vec();
        let agent = *inst
            .group(p)
            .iter()
            .find(|&&a| !served[a])
            .expect("selector never picks a group beyond its size within one round");
        let slot = (0..n)
            .filter(|&s| slot_open[s])
            .max_by(|&a, &b| slot_u[a].cmp(&slot_u[b]).then(b.cmp(&a)))
            .expect("one open slot per unserved agent");
        selector.commit(p);
        served[agent] = true;
        slot_open[slot] = false;
        bundles[agent] = provisional[slot].clone();
        trace.push(
            Phase::Match,
            Some(p),
            Some(agent),
            Some(slot),
            provisional[slot].clone(),
            Some(counts),
        );
    }

    Ok(Outcome {
        allocation: Allocation::from_sorted_bundles(bundles),
        trace,
    })
}
