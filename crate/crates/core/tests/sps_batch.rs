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

//! Golden trace: one batch of twelve items over groups of sizes 3, 4 and 5.

use groupfair::algorithms::{sps_allocate, Phase, Trace};
use groupfair::fairness::{is_cgeq1, is_ef1};
use groupfair::{Instance, Rational};

/// Groups interleave so that agent `i` ends up with item `o_i`.
fn batch_instance() -> Instance {
    let groups = vec![vec![0, 5, 9], vec![1, 4, 7, 10], vec![2, 3, 6, 8, 11]];
    let row = |scale: u64| -> Vec<Rational> {
        (0..12u64).map(|j| Rational::from_integer(scale * (12 - j))).collect()
    };
    let agents = (1..=12).map(row).collect();
    Instance::new(groups, agents, row(1)).unwrap()
}

const SEQUENCE: [usize; 12] = [0, 1, 2, 2, 1, 0, 2, 1, 2, 0, 1, 2];

#[test]
fn group_sequence_and_labels() {
    let inst = batch_instance();
    let out = sps_allocate(&inst).unwrap();
    assert_eq!(out.trace.group_sequence(Phase::Pick), SEQUENCE);
    for (step, e) in out.trace.events.iter().enumerate() {
        assert_eq!(e.items, vec![step], "step {step} item");
        assert_eq!(e.agent, Some(step), "item o{} goes to agent {}", step + 1, step + 1);
    }
    for (agent, bundle) in out.allocation.bundles().iter().enumerate() {
        assert_eq!(bundle, &vec![agent]);
    }
    assert!(is_ef1(&inst, &out.allocation).holds);
    assert!(is_cgeq1(&inst, &out.allocation).holds);
}

#[test]
fn recorded_ratios_precede_each_pick() {
    let out = sps_allocate(&batch_instance()).unwrap();
    let first = &out.trace.events[0];
    assert_eq!(first.counts.as_deref(), Some(&[0, 0, 0][..]));
    let last = &out.trace.events[11];
    assert_eq!(last.counts.as_deref(), Some(&[3, 4, 4][..]));
}

#[test]
fn trace_text_is_stable() {
    let out = sps_allocate(&batch_instance()).unwrap();
    let text = out.trace.to_text();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# groupfair-trace/1 sizes=3,4,5"));
    assert_eq!(lines.next(), Some("0\tpick\tG1\ta1\t-\to1\t0/3,0/4,0/5"));
    assert_eq!(lines.next(), Some("1\tpick\tG2\ta2\t-\to2\t1/3,0/4,0/5"));
    assert_eq!(Trace::from_text(&text).unwrap(), out.trace);
}

#[test]
fn second_batch_gives_everyone_one_more_item() {
    let groups = vec![vec![0, 5, 9], vec![1, 4, 7, 10], vec![2, 3, 6, 8, 11]];
    let row: Vec<Rational> = (0..24u64).map(|j| Rational::from_integer(24 - j)).collect();
    let inst = Instance::new(groups, vec![row.clone(); 12], row).unwrap();
    let out = sps_allocate(&inst).unwrap();
    let seq = out.trace.group_sequence(Phase::Pick);
    assert_eq!(&seq[..12], &SEQUENCE);
    for p in 0..3 {
        let second = seq[12..].iter().filter(|&&g| g == p).count();
        assert_eq!(second, inst.group(p).len());
    }
    for agent in 0..12 {
        let b = out.allocation.bundle(agent);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], agent);
        assert!(b[1] >= 12);
    }
    assert!(groupfair::algorithms::quota_violations(&seq, &inst.group_sizes()).is_empty());
}
