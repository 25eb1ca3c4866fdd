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

//! Weighted min-ratio group selector shared by all three algorithms.
//!
//! Groups are visited in non-decreasing size order (stable on the original
//! index). A group that has never been picked wins outright; otherwise the
//! group with the smallest `picks / size` wins, ties going to the group whose
//! last pick is most recent, then to the earlier group in size order.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectorState {
    sizes: Vec<usize>,
    order: Vec<usize>,
    pick_counts: Vec<usize>,
    last_pick_step: Vec<Option<usize>>,
    global_step: usize,
}

impl SelectorState {
    /// `sizes[p]` is the size of group `p`; every size must be positive.
    pub fn new(sizes: &[usize]) -> Self {
        assert!(sizes.iter().all(|&s| s > 0), "groups must be non-empty");
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by_key(|&p| sizes[p]);
        SelectorState {
            sizes: sizes.to_vec(),
            order,
            pick_counts: vec![0; sizes.len()],
            last_pick_step: vec![None; sizes.len()],
            global_step: 0,
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Original group indices in the order the selector scans them.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn pick_counts(&self) -> &[usize] {
        &self.pick_counts
    }

    pub fn last_pick_step(&self) -> &[Option<usize>] {
        &self.last_pick_step
    }

    pub fn global_step(&self) -> usize {
        self.global_step
    }

    fn cmp_ratio(&self, p: usize, q: usize) -> Ordering {
        (self.pick_counts[p] * self.sizes[q]).cmp(&(self.pick_counts[q] * self.sizes[p]))
    }

    /// Group that should receive the next pick. Does not change the state.
    pub fn select(&self) -> usize {
        assert!(!self.sizes.is_empty(), "selector has no groups");
        if let Some(&p) = self.order.iter().find(|&&p| self.pick_counts[p] == 0) {
            return p;
        }
        let mut best = self.order[0];
        for &p in &self.order[1..] {
            let better = match self.cmp_ratio(p, best) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.last_pick_step[p] > self.last_pick_step[best],
            };
            if better {
                best = p;
            }
        }
        best
    }

    pub fn commit(&mut self, group: usize) {
        self.pick_counts[group] += 1;
        self.last_pick_step[group] = Some(self.global_step);
        self.global_step += 1;
    }

    /// Selects and commits in one go.
    pub fn advance(&mut self) -> usize {
        let p = self.select();
        self.commit(p);
        p
    }
}

/// A pair of groups `(small, large)` with `|small| <= |large|` whose pick
/// sequence breaks `(picks of large before small's (k+1)-th pick) * |small|
/// <= k * |large| + |small|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotaViolation {
    pub small: usize,
    pub large: usize,
    pub k: usize,
    pub large_picks: usize,
}

/// Checks the quota inequality on a sequence of selected groups for every
/// ordered pair of distinct groups with `|G_p| <= |G_q|`.
pub fn quota_violations(sequence: &[usize], sizes: &[usize]) -> Vec<QuotaViolation> {
    let mut out = Vec::new();
    for p in 0..sizes.len() {
        for q in 0..sizes.len() {
            if p == q || sizes[p] > sizes[q] {
                continue;
            }
            // q-picks seen before each p-pick, then the total
            let mut before_each = Vec::new();
            let mut q_seen = 0;
            for &g in sequence {
                if g == p {
                    before_each.push(q_seen);
                } else if g == q {
                    q_seen += 1;
                }
            }
            before_each.push(q_seen);
            for (k, &large_picks) in before_each.iter().enumerate() {
                if large_picks * sizes[p] > k * sizes[q] + sizes[p] {
                    out.push(QuotaViolation {
                        small: p,
                        large: q,
                        k,
                        large_picks,
                    });
                }
            }
        }
    }
    out
}
