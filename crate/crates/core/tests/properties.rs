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

use std::ops::ControlFlow;

use groupfair::algorithms::{solve, Phase};
use groupfair::fairness::{is_cgeq1, is_ef1, min_group_average};
use groupfair::instances::generate;
use groupfair::oracle::{
    cgmms_value_bruteforce, enumerate_allocations, oracle_accepts, ExistenceQuery, Predicate,
    DEFAULT_ENUM_CAP,
};
use groupfair::suites::algorithm_for;
use groupfair::{cgmms_ef1_allocate_binary, Allocation, ClassKind};
use proptest::prelude::*;

const NAMED: [ClassKind; 3] = [
    ClassKind::IdenticalAgents,
    ClassKind::Ordered,
    ClassKind::BinaryAllocator,
];

fn shape() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..=6, 0usize..=14, any::<u64>()).prop_flat_map(|(n, m, seed)| {
        (Just(n), Just(m), 1..=n, Just(seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constructions_meet_both_notions((n, m, k, seed) in shape(), class_ix in 0usize..3) {
        let class = NAMED[class_ix];
        let inst = generate(class, n, m, k, 10, seed).unwrap();
        let (_, out) = solve(&inst, algorithm_for(class).unwrap()).unwrap();
        prop_assert!(is_ef1(&inst, &out.allocation).holds);
        prop_assert!(is_cgeq1(&inst, &out.allocation).holds);
        prop_assert_eq!(out.trace.replay(n, m).unwrap(), out.allocation);
    }

    #[test]
    fn every_batch_serves_each_agent_once((n, m, k, seed) in shape()) {
        let inst = generate(ClassKind::Ordered, n, m, k, 10, seed).unwrap();
        let (_, out) = solve(&inst, algorithm_for(ClassKind::Ordered).unwrap()).unwrap();
        let picks: Vec<_> = out.trace.events.iter().filter(|e| e.phase == Phase::Pick).collect();
        prop_assert_eq!(picks.len() % n, 0);
        for batch in picks.chunks(n) {
            let mut agents: Vec<usize> = batch.iter().map(|e| e.agent.unwrap()).collect();
            agents.sort_unstable();
            prop_assert_eq!(agents, (0..n).collect::<Vec<_>>());
            for p in 0..k {
                let got = batch.iter().filter(|e| e.group == Some(p)).count();
                prop_assert_eq!(got, inst.group(p).len());
            }
        }
    }

    #[test]
    fn maximin_bounds_every_allocation(n in 1usize..=3, m in 0usize..=5, seed: u64) {
        let k = 1 + (seed as usize) % n;
        let class = if n >= 2 && m >= 2 { ClassKind::General } else { ClassKind::IdenticalAgents };
        let inst = generate(class, n, m, k, 4, seed).unwrap();
        let best = cgmms_value_bruteforce(&inst, DEFAULT_ENUM_CAP).unwrap();
        let mut attained_max = None;
        enumerate_allocations(&inst, DEFAULT_ENUM_CAP, |owner| {
            let a = Allocation::from_assignment(n, owner);
            let v = min_group_average(&inst, &a);
            assert!(v <= best);
            if attained_max.as_ref().is_none_or(|x| &v > x) {
                attained_max = Some(v);
            }
            ControlFlow::Continue(())
        }).unwrap();
        prop_assert_eq!(attained_max.unwrap(), best);
    }

    #[test]
    fn oracle_accepts_binary_construction(n in 1usize..=4, m in 0usize..=7, seed: u64) {
        let k = 1 + (seed as usize) % n;
        let inst = generate(ClassKind::BinaryAllocator, n, m, k, 10, seed).unwrap();
        let (alloc, _) = cgmms_ef1_allocate_binary(&inst).unwrap();
        let query = ExistenceQuery::new(&inst, &[Predicate::Ef1, Predicate::CgmmsAttaining]).unwrap();
        prop_assert!(oracle_accepts(&query, &alloc).unwrap());
    }
}
