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

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use groupfair::algorithms::{cd2p_allocate, dm_allocate, sps_allocate};
use groupfair::instances::generate;
use groupfair::oracle::{search_counterexample, SearchConfig};
use groupfair::suites::{run_suite, suite_cases, SuiteShape};
use groupfair::{ClassKind, Execution};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for execution in MODES {
        let cfg = SearchConfig {
            budget: 2_000,
            seed: 1,
            timing: false,
            execution,
            ..SearchConfig::default()
        };
        group.bench_with_input(BenchmarkId::new("general", execution), &cfg, |b, cfg| {
            b.iter(|| search_counterexample(black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for class in [ClassKind::IdenticalAgents, ClassKind::Ordered, ClassKind::BinaryAllocator] {
        let cases = suite_cases(class, &SuiteShape::default(), 500, 7);
        for execution in MODES {
            let id = BenchmarkId::new(class.to_string(), execution);
            group.bench_with_input(id, &cases, |b, cases| {
                b.iter(|| run_suite(black_box(cases), execution).unwrap())
            });
        }
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    group.sample_size(20);
    for m in [1_000, 10_000] {
        let dm = generate(ClassKind::IdenticalAgents, 100, m, 4, 1_000, 1).unwrap();
        let sps = generate(ClassKind::Ordered, 100, m, 4, 1_000, 1).unwrap();
        let cd2p = generate(ClassKind::BinaryAllocator, 100, m, 4, 1_000, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("dm", m), &dm, |b, i| b.iter(|| dm_allocate(i).unwrap()));
        group.bench_with_input(BenchmarkId::new("sps", m), &sps, |b, i| b.iter(|| sps_allocate(i).unwrap()));
        group.bench_with_input(BenchmarkId::new("cd2p", m), &cd2p, |b, i| b.iter(|| cd2p_allocate(i).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, search, suites, constructions);
criterion_main!(benches);
