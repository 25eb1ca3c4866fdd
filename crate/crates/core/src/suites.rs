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

//! Seeded randomized suites that run each constructive algorithm on its own
//! class and check the output.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{quota_violations, solve, Algorithm, Phase};
use crate::algorithms::draft_allocation;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fairness::{is_cgeq1, is_ef1};
use crate::instances::generate;
use crate::model::{ClassKind, Instance};

/// Shape bounds for suite instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteShape {
    pub max_n: usize,
    pub max_m: usize,
    pub max_k: usize,
    pub vmax: u64,
}

impl Default for SuiteShape {
    fn default() -> Self {
        SuiteShape {
            max_n: 8,
            max_m: 20,
            max_k: 4,
            vmax: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCase {
    pub class: ClassKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub vmax: u64,
    pub seed: u64,
}

impl SuiteCase {
    pub fn instance(&self) -> Result<Instance> {
        generate(self.class, self.n, self.m, self.k, self.vmax, self.seed)
    }
}

/// `count` cases drawn from a master stream seeded by `seed`.
pub fn suite_cases(class: ClassKind, shape: &SuiteShape, count: usize, seed: u64) -> Vec<SuiteCase> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = master.gen_range(1..=shape.max_n);
            let m = master.gen_range(0..=shape.max_m);
            let k = master.gen_range(1..=shape.max_k.min(n));
            SuiteCase {
                class,
                n,
                m,
                k,
                vmax: shape.vmax,
                seed: master.next_u64(),
            }
        })
        .collect()
}

/// The algorithm whose guarantee covers `class`.
pub fn algorithm_for(class: ClassKind) -> Result<Algorithm> {
    match class {
        ClassKind::IdenticalAgents => Ok(Algorithm::Dm),
        ClassKind::Ordered => Ok(Algorithm::Sps),
        ClassKind::BinaryAllocator => Ok(Algorithm::Cd2p),
        ClassKind::General => Err(Error::NoGuaranteedAlgorithm),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteFailure {
    pub case: SuiteCase,
    pub what: String,
}

/// Problems found on one case; empty when every check passes.
pub fn check_case(case: &SuiteCase) -> Result<Vec<String>> {
    let inst = case.instance()?;
    let algo = algorithm_for(case.class)?;
    let (_, out) = solve(&inst, algo)?;
    let mut problems = Vec::new();
    let ef1 = is_ef1(&inst, &out.allocation);
    if let Some(w) = ef1.witness {
        problems.push(format!("{algo} output not EF1: {w}"));
    }
    let cgeq1 = is_cgeq1(&inst, &out.allocation);
    if let Some(w) = cgeq1.witness {
        problems.push(format!("{algo} output not CGEQ1: {w}"));
    }
    if out.trace.replay(inst.n(), inst.m())? != out.allocation {
        problems.push("trace replay differs from the allocation".into());
    }
    let phase = match algo {
        Algorithm::Dm => Some(Phase::Match),
        Algorithm::Sps => Some(Phase::Pick),
        _ => None,
    };
    if let Some(phase) = phase {
        let seq = out.trace.group_sequence(phase);
        if !quota_violations(&seq, &inst.group_sizes()).is_empty() {
            problems.push(format!("{phase:?} selector sequence breaks the quota bound"));
        }
    }
    if algo == Algorithm::Dm {
        let draft = draft_allocation(&inst)?;
        if let Some(w) = is_ef1(&inst, &draft).witness {
            problems.push(format!("draft not EF1 under agent values: {w}"));
        }
        if let Some(w) = is_ef1(&inst.with_allocator_as_agents(), &draft).witness {
            problems.push(format!("draft not EF1 under allocator values: {w}"));
        }
    }
    Ok(problems)
}

/// Runs every case and collects the failures in case order.
pub fn run_suite(cases: &[SuiteCase], execution: Execution) -> Result<Vec<SuiteFailure>> {
    let results = execution.map_ordered(cases, check_case);
    let mut failures = Vec::new();
    for (case, r) in cases.iter().zip(results) {
        for what in r? {
            failures.push(SuiteFailure {
                case: case.clone(),
                what,
            });
        }
    }
    Ok(failures)
}
