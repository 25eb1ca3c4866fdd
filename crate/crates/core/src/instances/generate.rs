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

//! Seeded random instances for each valuation class.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{detect_class, ClassKind, Instance};
use crate::rational::Rational;

/// Rejection attempts before giving up on a general instance.
const GENERAL_ATTEMPTS: usize = 10_000;

/// Contiguous groups whose sizes form a uniformly random composition of `n`
/// into `k` positive parts.
pub fn random_composition(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut cuts = sample(rng, n - 1, k - 1).into_vec();
    cuts.sort_unstable();
    let mut groups = Vec::with_capacity(k);
    let mut start = 0;
    for c in cuts.into_iter().map(|c| c + 1).chain(std::iter::once(n)) {
        groups.push((start..c).collect());
        start = c;
    }
    groups
}

fn row(rng: &mut impl Rng, m: usize, vmax: u64) -> Vec<Rational> {
    (0..m)
        .map(|_| Rational::from_integer(rng.gen_range(0..=vmax)))
        .collect()
}

/// Draws an instance of class `kind` with integer values on `[0, vmax]`.
///
/// The result always belongs to `kind`. Detection may still report a more
/// specific class (an ordered draw can have identical agents), except for
/// `General`, which is resampled until no named class applies.
pub fn generate(
    kind: ClassKind,
    n: usize,
    m: usize,
    k: usize,
    vmax: u64,
    seed: u64,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    if k == 0 || k > n {
        return Err(Error::input(format!("k must lie in 1..={n}, got {k}")));
    }
    if kind == ClassKind::General && (n < 2 || m < 2 || vmax < 1) {
        return Err(Error::input(
            "general instances need n >= 2, m >= 2 and vmax >= 1",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = random_composition(&mut rng, n, k);

    let (agents, alloc) = match kind {
        ClassKind::IdenticalAgents => {
            let shared = row(&mut rng, m, vmax);
            (vec![shared; n], row(&mut rng, m, vmax))
        }
        ClassKind::Ordered => {
            let mut rows: Vec<Vec<Rational>> = (0..=n).map(|_| row(&mut rng, m, vmax)).collect();
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(&mut rng);
            for r in rows.iter_mut() {
                r.sort_unstable_by(|a, b| b.cmp(a));
                let mut bound = vec![Rational::zero(); m];
                for (rank, &item) in order.iter().enumerate() {
                    bound[item] = r[rank].clone();
                }
                *r = bound;
            }
            let alloc = rows.pop().expect("n + 1 rows");
            (rows, alloc)
        }
        ClassKind::BinaryAllocator => {
            let agents = (0..n).map(|_| row(&mut rng, m, vmax)).collect();
            let alloc = loop {
                let u: Vec<Rational> = (0..m)
                    .map(|_| Rational::from_integer(rng.gen_range(0..=1)))
                    .collect();
                if m == 0 || u.iter().any(Rational::is_zero) {
                    break u;
                }
            };
            (agents, alloc)
        }
        ClassKind::General => {
            for _ in 0..GENERAL_ATTEMPTS {
                let agents = (0..n).map(|_| row(&mut rng, m, vmax)).collect();
                let inst = Instance::new(groups.clone(), agents, row(&mut rng, m, vmax))?;
                if detect_class(&inst).kind() == ClassKind::General {
                    return Ok(inst);
                }
            }
            return Err(Error::input(format!(
                "no general instance found in {GENERAL_ATTEMPTS} draws"
            )));
        }
    };
    Instance::new(groups, agents, alloc)
}
