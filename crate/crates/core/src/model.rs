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

//! Instance and allocation data model, additive valuations and class detection.
//!
//! Ids are 0-based everywhere in the library. Display code adds one so that
//! output reads `o1`, `a1`, `G1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A fair allocation instance: items, agents partitioned into groups, one
/// additive valuation per agent and the allocator's additive valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    agent_values: Vec<Vec<Rational>>,
    allocator_values: Vec<Rational>,
    groups: Vec<Vec<usize>>,
    group_of: Vec<usize>,
    item_labels: Option<Vec<String>>,
    agent_labels: Option<Vec<String>>,
}

impl Instance {
    /// Validates dimensions and that `groups` is an exact partition of the
    /// agents. Agent lists inside a group are stored sorted; group order is kept.
    pub fn new(
        groups: Vec<Vec<usize>>,
        agent_values: Vec<Vec<Rational>>,
        allocator_values: Vec<Rational>,
    ) -> Result<Self> {
        let n = agent_values.len();
        let m = allocator_values.len();
        if n == 0 {
            return Err(Error::input("an instance needs at least one agent"));
        }
        for (i, row) in agent_values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::input(format!(
                    "agent_values[{i}] has {} entries, expected {m}",
                    row.len()
                )));
            }
        }
        let mut group_of = vec![usize::MAX; n];
        let mut groups = groups;
        for (p, group) in groups.iter_mut().enumerate() {
            if group.is_empty() {
                return Err(Error::input(format!("group {p} is empty")));
            }
            group.sort_unstable();
            for &agent in group.iter() {
                if agent >= n {
                    return Err(Error::input(format!(
                        "group {p} names agent {agent}, but there are only {n} agents"
                    )));
                }
                if group_of[agent] != usize::MAX {
                    return Err(Error::input(format!(
                        "agent {agent} appears in more than one group (or twice in one)"
                    )));
                }
                group_of[agent] = p;
            }
        }
        if let Some(missing) = group_of.iter().position(|&g| g == usize::MAX) {
            return Err(Error::input(format!("agent {missing} belongs to no group")));
        }
        Ok(Instance {
            agent_values,
            allocator_values,
            groups,
            group_of,
            item_labels: None,
            agent_labels: None,
        })
    }

    pub fn with_item_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m() {
            return Err(Error::input(format!(
                "{} item labels for {} items",
                labels.len(),
                self.m()
            )));
        }
        self.item_labels = Some(labels);
        Ok(self)
    }

    pub fn with_agent_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::input(format!(
                "{} agent labels for {} agents",
                labels.len(),
                self.n()
            )));
        }
        self.agent_labels = Some(labels);
        Ok(self)
    }

    /// Number of items.
    pub fn m(&self) -> usize {
        self.allocator_values.len()
    }

    /// Number of agents.
    pub fn n(&self) -> usize {
        self.agent_values.len()
    }

    /// Number of groups.
    pub fn k(&self) -> usize {
        self.groups.len()
    }

    pub fn value(&self, agent: usize, item: usize) -> &Rational {
        &self.agent_values[agent][item]
    }

    pub fn agent_values(&self) -> &[Vec<Rational>] {
        &self.agent_values
    }

    pub fn agent_row(&self, agent: usize) -> &[Rational] {
        &self.agent_values[agent]
    }

    pub fn allocator_values(&self) -> &[Rational] {
        &self.allocator_values
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group(&self, p: usize) -> &[usize] {
        &self.groups[p]
    }

    pub fn group_of(&self, agent: usize) -> usize {
        self.group_of[agent]
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn item_labels(&self) -> Option<&[String]> {
        self.item_labels.as_deref()
    }

    pub fn agent_labels(&self) -> Option<&[String]> {
        self.agent_labels.as_deref()
    }

    /// Same instance with every agent valuation replaced by the allocator's.
    pub fn with_allocator_as_agents(&self) -> Instance {
        let mut out = self.clone();
        out.agent_values = vec![self.allocator_values.clone(); self.n()];
        out
    }

    /// Same instance with different valuations; shapes must match.
    pub fn with_values(
        &self,
        agent_values: Vec<Vec<Rational>>,
        allocator_values: Vec<Rational>,
    ) -> Result<Instance> {
        let mut out = Instance::new(self.groups.clone(), agent_values, allocator_values)?;
        if out.n() != self.n() || out.m() != self.m() {
            return Err(Error::input("valuation shape differs from the instance"));
        }
        out.item_labels = self.item_labels.clone();
        out.agent_labels = self.agent_labels.clone();
        Ok(out)
    }

    /// Membership test for a class, independent of detection priority.
    pub fn belongs_to(&self, kind: ClassKind) -> bool {
        match kind {
            ClassKind::IdenticalAgents => has_identical_agents(self),
            ClassKind::Ordered => common_order(self).is_some(),
            ClassKind::BinaryAllocator => binary_level(self).is_some(),
            ClassKind::General => true,
        }
    }
}

/// An assignment of every item to exactly one agent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
}

impl Allocation {
    /// Validates that `bundles` partitions the items `0..m`.
    pub fn new(m: usize, bundles: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m];
        let mut bundles = bundles;
        for (i, bundle) in bundles.iter_mut().enumerate() {
            bundle.sort_unstable();
            for &item in bundle.iter() {
                if item >= m {
                    return Err(Error::input(format!(
                        "bundle {i} holds item {item}, but there are only {m} items"
                    )));
                }
                if seen[item] {
                    return Err(Error::input(format!("item {item} is allocated twice")));
                }
                seen[item] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::input(format!("item {missing} is not allocated")));
        }
        Ok(Allocation { bundles })
    }

    /// `owner[j]` is the agent receiving item `j`.
    pub fn from_assignment(n: usize, owner: &[usize]) -> Self {
        let mut bundles = vec![Vec::new(); n];
        for (item, &agent) in owner.iter().enumerate() {
            bundles[agent].push(item);
        }
        Allocation { bundles }
    }

    /// Allocation with `n` empty bundles (valid only when there are no items).
    pub fn empty(n: usize) -> Self {
        Allocation {
            bundles: vec![Vec::new(); n],
        }
    }

    pub(crate) fn from_sorted_bundles(bundles: Vec<Vec<usize>>) -> Self {
        debug_assert!(bundles.iter().all(|b| b.windows(2).all(|w| w[0] < w[1])));
        Allocation { bundles }
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> &[usize] {
        &self.bundles[agent]
    }

    pub fn item_count(&self) -> usize {
        self.bundles.iter().map(Vec::len).sum()
    }

    /// Inverse of [`Allocation::from_assignment`].
    pub fn assignment(&self) -> Vec<usize> {
        let mut owner = vec![0; self.item_count()];
        for (agent, bundle) in self.bundles.iter().enumerate() {
            for &item in bundle {
                owner[item] = agent;
            }
        }
        owner
    }

    /// Checks that this allocation has the shape of `inst`.
    pub fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.n() != inst.n() {
            return Err(Error::input(format!(
                "allocation has {} bundles, instance has {} agents",
                self.n(),
                inst.n()
            )));
        }
        if self.item_count() != inst.m() {
            return Err(Error::input(format!(
                "allocation covers {} items, instance has {}",
                self.item_count(),
                inst.m()
            )));
        }
        Allocation::new(inst.m(), self.bundles.clone()).map(|_| ())
    }
}

/// Sum of `values` over `bundle`. The empty bundle is worth zero.
pub fn additive_value(values: &[Rational], bundle: &[usize]) -> Result<Rational> {
    let mut total = Rational::zero();
    for &item in bundle {
        let v = values.get(item).ok_or_else(|| {
            Error::input(format!(
                "item {item} out of range for {} values",
                values.len()
            ))
        })?;
        total += v;
    }
    Ok(total)
}

/// Unchecked variant for bundles already validated against the instance.
pub(crate) fn bundle_value(values: &[Rational], bundle: &[usize]) -> Rational {
    bundle.iter().map(|&o| &values[o]).sum()
}

/// Valuation class without detection metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    IdenticalAgents,
    Ordered,
    BinaryAllocator,
    General,
}

impl ClassKind {
    pub const ALL: [ClassKind; 4] = [
        ClassKind::IdenticalAgents,
        ClassKind::Ordered,
        ClassKind::BinaryAllocator,
        ClassKind::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::IdenticalAgents => "identical",
            ClassKind::Ordered => "ordered",
            ClassKind::BinaryAllocator => "binary",
            ClassKind::General => "general",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identical" | "identicalagents" | "identical-agents" => Ok(ClassKind::IdenticalAgents),
            "ordered" => Ok(ClassKind::Ordered),
            "binary" | "binaryallocator" | "binary-allocator" => Ok(ClassKind::BinaryAllocator),
            "general" => Ok(ClassKind::General),
            _ => Err(Error::input(format!(
                "unknown class {s:?} (expected identical, ordered, binary or general)"
            ))),
        }
    }
}

/// Most specific valuation class of an instance, with the data that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceClass {
    IdenticalAgents,
    /// `order` lists item ids so that every valuation is non-increasing along it.
    Ordered { order: Vec<usize> },
    /// Allocator values all lie in `{0, level}`.
    BinaryAllocator { level: Rational },
    General,
}

impl InstanceClass {
    pub fn kind(&self) -> ClassKind {
        match self {
            InstanceClass::IdenticalAgents => ClassKind::IdenticalAgents,
            InstanceClass::Ordered { .. } => ClassKind::Ordered,
            InstanceClass::BinaryAllocator { .. } => ClassKind::BinaryAllocator,
            InstanceClass::General => ClassKind::General,
        }
    }
}

/// Priority: identical agents, then ordered, then binary allocator.
pub fn detect_class(inst: &Instance) -> InstanceClass {
    if has_identical_agents(inst) {
        return InstanceClass::IdenticalAgents;
    }
    if let Some(order) = common_order(inst) {
        return InstanceClass::Ordered { order };
    }
    if let Some(level) = binary_level(inst) {
        return InstanceClass::BinaryAllocator { level };
    }
    InstanceClass::General
}

pub fn has_identical_agents(inst: &Instance) -> bool {
    let rows = inst.agent_values();
    rows.iter().all(|row| row == &rows[0])
}

/// Lexicographic comparison of the item columns, allocator first, descending.
fn column_cmp(inst: &Instance, a: usize, b: usize) -> Ordering {
    let u = inst.allocator_values();
    u[b].cmp(&u[a]).then_with(|| {
        for row in inst.agent_values() {
            match row[b].cmp(&row[a]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

/// A single item order under which the allocator's and every agent's values
/// are non-increasing, ties broken by item index; `None` if no such order exists.
///
/// When such an order exists the pairwise weak-dominance relation is a total
/// preorder, and the lexicographic column order is one of its linear
/// extensions, so checking monotonicity along it decides the question in
/// `O(n m log m)`.
pub fn common_order(inst: &Instance) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..inst.m()).collect();
    order.sort_by(|&a, &b| column_cmp(inst, a, b));
    let non_increasing = |values: &[Rational]| {
        order
            .windows(2)
            .all(|w| values[w[0]] >= values[w[1]])
    };
    if non_increasing(inst.allocator_values())
        && inst.agent_values().iter().all(|row| non_increasing(row))
    {
        Some(order)
    } else {
        None
    }
}

/// `Some(c)` when the allocator's values are exactly `{0, c}` with `c > 0`,
/// or just `{0}`. A constant non-zero allocator is not binary. An all-zero
/// allocator reports level 1.
pub fn binary_level(inst: &Instance) -> Option<Rational> {
    let mut level: Option<&Rational> = None;
    let mut has_zero = inst.m() == 0;
    for v in inst.allocator_values() {
        if v.is_zero() {
            has_zero = true;
            continue;
        }
        match level {
            None => level = Some(v),
            Some(c) if c == v => {}
            Some(_) => return None,
        }
    }
    if !has_zero {
        return None;
    }
    Some(level.cloned().unwrap_or_else(Rational::one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: u64) -> Rational {
        Rational::from_integer(v)
    }

    fn row(vals: &[u64]) -> Vec<Rational> {
        vals.iter().map(|&v| q(v)).collect()
    }

    fn inst(groups: Vec<Vec<usize>>, rows: &[&[u64]], u: &[u64]) -> Instance {
        Instance::new(groups, rows.iter().map(|r| row(r)).collect(), row(u)).unwrap()
    }

    #[test]
    fn additive_value_examples() {
        assert_eq!(additive_value(&row(&[1, 2, 3]), &[0, 2]).unwrap(), q(4));
        assert_eq!(additive_value(&row(&[1, 2, 3]), &[]).unwrap(), q(0));
        let halves = vec![Rational::new(1, 2).unwrap(), Rational::new(1, 3).unwrap()];
        assert_eq!(
            additive_value(&halves, &[0, 1]).unwrap(),
            Rational::new(5, 6).unwrap()
        );
        assert!(additive_value(&row(&[1]), &[1]).is_err());
    }

    #[test]
    fn instance_rejects_bad_partitions() {
        let rows = vec![row(&[1]), row(&[1])];
        assert!(Instance::new(vec![vec![0], vec![0, 1]], rows.clone(), row(&[1])).is_err());
        assert!(Instance::new(vec![vec![0]], rows.clone(), row(&[1])).is_err());
        assert!(Instance::new(vec![vec![0, 1], vec![]], rows.clone(), row(&[1])).is_err());
        assert!(Instance::new(vec![vec![0, 2]], rows.clone(), row(&[1])).is_err());
        assert!(Instance::new(vec![vec![0, 1]], rows, row(&[1, 2])).is_err());
        assert!(Instance::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn allocation_must_partition_items() {
        assert!(Allocation::new(3, vec![vec![0, 2], vec![1]]).is_ok());
        assert!(Allocation::new(3, vec![vec![0, 2], vec![]]).is_err());
        assert!(Allocation::new(3, vec![vec![0, 2], vec![2, 1]]).is_err());
        assert!(Allocation::new(2, vec![vec![0, 2], vec![1]]).is_err());
        let a = Allocation::from_assignment(2, &[1, 0, 1]);
        assert_eq!(a.bundles(), &[vec![1], vec![0, 2]]);
        assert_eq!(a.assignment(), vec![1, 0, 1]);
    }

    #[test]
    fn detects_identical_agents() {
        let i = inst(vec![vec![0, 1]], &[&[3, 1], &[3, 1]], &[0, 7]);
        assert_eq!(detect_class(&i), InstanceClass::IdenticalAgents);
    }

    #[test]
    fn detects_ordered_with_witness() {
        let i = inst(vec![vec![0], vec![1]], &[&[3, 2, 1], &[5, 5, 2]], &[9, 4, 4]);
        assert_eq!(
            detect_class(&i),
            InstanceClass::Ordered {
                order: vec![0, 1, 2]
            }
        );
        let j = inst(vec![vec![0], vec![1]], &[&[1, 3, 2], &[2, 5, 5]], &[4, 9, 4]);
        assert_eq!(
            detect_class(&j),
            InstanceClass::Ordered {
                order: vec![1, 2, 0]
            }
        );
    }

    #[test]
    fn incomparable_pair_is_general() {
        let i = inst(vec![vec![0], vec![1]], &[&[3, 1], &[1, 3]], &[1, 1]);
        assert_eq!(detect_class(&i), InstanceClass::General);
        let j = inst(vec![vec![0], vec![1]], &[&[3, 1], &[1, 3]], &[1, 2]);
        assert_eq!(detect_class(&j), InstanceClass::General);
    }

    #[test]
    fn binary_level_normalizes() {
        let i = inst(vec![vec![0], vec![1]], &[&[3, 1, 2], &[1, 3, 2]], &[5, 0, 5]);
        assert_eq!(binary_level(&i), Some(q(5)));
        let z = inst(vec![vec![0], vec![1]], &[&[3, 1], &[1, 3]], &[0, 0]);
        assert_eq!(binary_level(&z), Some(q(1)));
        let g = inst(vec![vec![0], vec![1]], &[&[3, 1], &[1, 3]], &[1, 2]);
        assert_eq!(binary_level(&g), None);
        let c = inst(vec![vec![0], vec![1]], &[&[3, 1], &[1, 3]], &[2, 2]);
        assert_eq!(binary_level(&c), None);
    }

    /// Brute-force pairwise weak-dominance test.
    fn pairwise_ordered(inst: &Instance) -> bool {
        let mut rows: Vec<&[Rational]> = vec![inst.allocator_values()];
        rows.extend(inst.agent_values().iter().map(|r| r.as_slice()));
        (0..inst.m()).all(|a| {
            (0..inst.m()).all(|b| {
                rows.iter().all(|r| r[a] >= r[b]) || rows.iter().all(|r| r[a] <= r[b])
            })
        })
    }

    fn small_instance() -> impl Strategy<Value = Instance> {
        (1usize..4, 0usize..6).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::vec(0u64..3, m), n),
                proptest::collection::vec(0u64..3, m),
            )
                .prop_map(move |(rows, u)| {
                    Instance::new(
                        vec![(0..n).collect()],
                        rows.iter().map(|r| row(r)).collect(),
                        row(&u),
                    )
                    .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn fast_order_check_matches_pairwise(i in small_instance()) {
            let fast = common_order(&i);
            prop_assert_eq!(fast.is_some(), pairwise_ordered(&i));
            if let Some(order) = fast {
                let mut rows: Vec<&[Rational]> = vec![i.allocator_values()];
                rows.extend(i.agent_values().iter().map(|r| r.as_slice()));
                for r in rows {
                    prop_assert!(order.windows(2).all(|w| r[w[0]] >= r[w[1]]));
                }
                // fully tied columns keep index order
                for w in order.windows(2) {
                    if column_cmp(&i, w[0], w[1]) == Ordering::Equal {
                        prop_assert!(w[0] < w[1]);
                    }
                }
            }
        }

        #[test]
        fn additive_over_disjoint_bundles(vals in proptest::collection::vec(0u64..50, 0..12), mask in any::<u16>()) {
            let values = row(&vals);
            let (s, t): (Vec<usize>, Vec<usize>) = (0..vals.len()).partition(|j| mask >> j & 1 == 1);
            let all: Vec<usize> = (0..vals.len()).collect();
            prop_assert_eq!(
                additive_value(&values, &all).unwrap(),
                additive_value(&values, &s).unwrap() + additive_value(&values, &t).unwrap()
            );
        }

        #[test]
        fn detection_priority(i in small_instance()) {
            let class = detect_class(&i);
            match class.kind() {
                ClassKind::IdenticalAgents => prop_assert!(has_identical_agents(&i)),
                ClassKind::Ordered => prop_assert!(!has_identical_agents(&i)),
                ClassKind::BinaryAllocator => prop_assert!(!i.belongs_to(ClassKind::Ordered)),
                ClassKind::General => {
                    prop_assert!(!i.belongs_to(ClassKind::BinaryAllocator));
                }
            }
        }
    }
}
