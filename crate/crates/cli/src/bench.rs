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

//! Built-in timing workloads for `groupfair bench`.

use std::fmt::Write as _;
use std::time::Instant;

use groupfair::algorithms::{cd2p_allocate, dm_allocate, sps_allocate};
use groupfair::instances::generate;
use groupfair::oracle::{
    cgmms_value_bruteforce, exists_allocation, search_counterexample, ExistenceQuery, Predicate,
    SearchConfig, DEFAULT_ENUM_CAP,
};
use groupfair::{ClassKind, Error, Execution};

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Suite {
    /// Constructive algorithms at growing sizes.
    Poly,
    /// Counterexample search, sequential against parallel.
    Search,
    /// Exhaustive existence and maximin queries.
    Oracle,
}

fn row(out: &mut String, case: &str, start: Instant) {
    let _ = writeln!(out, "{case:<44} {:>10.3}", start.elapsed().as_secs_f64() * 1e3);
}

pub fn run(suite: Suite) -> Result<String, Error> {
    let mut out = format!("{:<44} {:>10}\n", "case", "ms");
    match suite {
        Suite::Poly => {
            for (n, m) in [(10, 1_000), (100, 1_000), (100, 10_000)] {
                for (name, class) in [
                    ("dm", ClassKind::IdenticalAgents),
                    ("sps", ClassKind::Ordered),
                    ("cd2p", ClassKind::BinaryAllocator),
                ] {
                    let inst = generate(class, n, m, 4.min(n), 1_000, 1)?;
                    let start = Instant::now();
                    match class {
                        ClassKind::IdenticalAgents => dm_allocate(&inst)?,
                        ClassKind::Ordered => sps_allocate(&inst)?,
                        _ => cd2p_allocate(&inst)?,
                    };
                    row(&mut out, &format!("{name} n={n} m={m}"), start);
                }
            }
        }
        Suite::Search => {
            for execution in [Execution::Sequential, Execution::Parallel] {
                let cfg = SearchConfig {
                    budget: 5_000,
                    seed: 1,
                    execution,
                    ..SearchConfig::default()
                };
                let start = Instant::now();
                search_counterexample(&cfg)?;
                row(&mut out, &format!("search general budget=5000 {execution}"), start);
            }
        }
        Suite::Oracle => {
            for (n, m) in [(3, 6), (3, 8), (4, 8)] {
                let inst = generate(ClassKind::General, n, m, 2, 10, 3)?;
                let query = ExistenceQuery::new(&inst, &[Predicate::Ef1, Predicate::Cgeq1])?;
                let start = Instant::now();
                exists_allocation(&query)?;
                row(&mut out, &format!("exists EF1+CGEQ1 n={n} m={m}"), start);
                let start = Instant::now();
                cgmms_value_bruteforce(&inst, DEFAULT_ENUM_CAP)?;
                row(&mut out, &format!("maximin share n={n} m={m} k=2"), start);
            }
        }
    }
    Ok(out)
}
