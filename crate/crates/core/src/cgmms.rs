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

//! Centralized group maximin share for binary allocator valuations.
//!
//! With allocator values in `{0, c}` a group's share only depends on how
//! many valued items it holds, so the maximin share is the largest candidate
//! `x = j / |G_p|` for which every group can be given `ceil(x |G_p|)` valued
//! items. An EF1 allocation attaining it is a dual-flow round-robin whose
//! label order puts the agents that receive one extra valued item first.

use num_traits::ToPrimitive;

use crate::algorithms::dual_flow;
use crate::error::{Error, Result};
use crate::model::{binary_level, Allocation, Instance};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgmmsCertificate {
    /// The maximin share, in the allocator's units.
    pub value: Rational,
    /// Non-zero allocator level `c` the counts are measured in.
    pub level: Rational,
    /// Valued items per group.
    pub counts: Vec<usize>,
    /// `floor(value / level)`: valued items every agent receives.
    pub floor: usize,
    /// Agents per group that receive `floor + 1` valued items.
    pub extras: Vec<usize>,
}

impl CgmmsCertificate {
    /// Recomputes `level * min_p counts[p] / |G_p|`.
    pub fn attained(&self, sizes: &[usize]) -> Rational {
        let min = self
            .counts
            .iter()
            .zip(sizes)
            .map(|(&c, &s)| Rational::new(c as u64, s as u64).expect("groups are non-empty"))
            .min()
            .unwrap_or_default();
        &min * &self.level
    }
}

fn precondition() -> Error {
    Error::Precondition {
        algorithm: "binary CGMMS",
        required: "binary allocator",
    }
}

fn ceil_usize(x: &Rational) -> usize {
    x.ceil().to_usize().expect("count fits in usize")
}

pub fn cgmms_value_binary(inst: &Instance) -> Result<CgmmsCertificate> {
    let level = binary_level(inst).ok_or_else(precondition)?;
    let valued = inst
        .allocator_values()
        .iter()
        .filter(|v| !v.is_zero())
        .count();
    let sizes = inst.group_sizes();

    let feasible = |x: &Rational| -> bool {
        sizes.iter().map(|&s| ceil_usize(&x.scale(s))).sum::<usize>() <= valued
    };
    let mut best = Rational::zero();
    for &s in &sizes {
        for j in 0..=valued {
            let x = Rational::new(j as u64, s as u64).expect("groups are non-empty");
            if x > best && feasible(&x) {
                best = x;
            }
        }
    }

    let floor = best.floor().to_usize().expect("floor fits in usize");
    let mut counts: Vec<usize> = sizes.iter().map(|&s| ceil_usize(&best.scale(s))).collect();
    let mut leftover = valued - counts.iter().sum::<usize>();
    for (p, &s) in sizes.iter().enumerate() {
        let room = (floor + 1) * s - counts[p];
        let add = room.min(leftover);
        counts[p] += add;
        leftover -= add;
    }
    debug_assert_eq!(leftover, 0, "capacity (floor + 1) * n always covers the valued items");
    let extras = counts
        .iter()
        .zip(&sizes)
        .map(|(&c, &s)| c - floor * s)
        .collect();
    Ok(CgmmsCertificate {
        value: &best * &level,
        level,
        counts,
        floor,
        extras,
    })
}

/// An EF1 allocation whose worst group share equals the maximin share.
pub fn cgmms_ef1_allocate_binary(inst: &Instance) -> Result<(Allocation, CgmmsCertificate)> {
    let cert = cgmms_value_binary(inst)?;
    let mut label_order = Vec::with_capacity(inst.n());
    for (p, &e) in cert.extras.iter().enumerate() {
        label_order.extend_from_slice(&inst.group(p)[..e]);
    }
    for (p, &e) in cert.extras.iter().enumerate() {
        label_order.extend_from_slice(&inst.group(p)[e..]);
    }
    let (valued, ignored): (Vec<usize>, Vec<usize>) =
        (0..inst.m()).partition(|&o| !inst.allocator_values()[o].is_zero());
    let (allocation, _, _) = dual_flow(inst, &label_order, &valued, &ignored);
    Ok((allocation, cert))
}
