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

//! Integer view of an instance for exhaustive search.
//!
//! Each valuation is multiplied by the common denominator of its entries.
//! Every predicate compares values of a single valuation only, so per-row
//! positive scaling leaves all verdicts unchanged while the inner loops run
//! on machine integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::oracle::Predicate;
use crate::rational::{common_denominator, Rational};

/// Scaled entries stay below this bound so sums and cross products fit in i128.
const ENTRY_LIMIT: i128 = 1 << 62;

#[derive(Clone, Debug)]
pub(crate) struct IntegerView {
    pub n: usize,
    pub m: usize,
    pub agent: Vec<Vec<i128>>,
    pub alloc: Vec<i128>,
    /// Common denominator the allocator row was multiplied by.
    pub alloc_scale: BigInt,
    pub group_of: Vec<usize>,
    pub sizes: Vec<i128>,
}

fn scale_row(values: &[Rational]) -> Result<(Vec<i128>, BigInt)> {
    let scale = common_denominator(values);
    let row = values
        .iter()
        .map(|v| {
            let scaled = v.numer() * (&scale / v.denom());
            scaled
                .to_i128()
                .filter(|&x| x < ENTRY_LIMIT)
                .ok_or_else(|| Error::input("values too large for exhaustive search"))
        })
        .collect::<Result<_>>()?;
    Ok((row, scale))
}

impl IntegerView {
    pub fn new(inst: &Instance) -> Result<Self> {
        let agent = inst
            .agent_values()
            .iter()
            .map(|r| scale_row(r).map(|(row, _)| row))
            .collect::<Result<_>>()?;
        let (alloc, alloc_scale) = scale_row(inst.allocator_values())?;
        Ok(IntegerView {
            n: inst.n(),
            m: inst.m(),
            agent,
            alloc,
            alloc_scale,
            group_of: (0..inst.n()).map(|i| inst.group_of(i)).collect(),
            sizes: inst.group_sizes().iter().map(|&s| s as i128).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    /// Converts a share `num / den` in scaled allocator units back to a rational.
    pub fn share_to_rational(&self, num: i128, den: i128) -> Rational {
        Rational::from_big(BigInt::from(num), BigInt::from(den) * &self.alloc_scale)
            .expect("shares are non-negative with positive denominators")
    }
}

/// `a_num / a_den` vs `b_num / b_den` for positive denominators.
pub(crate) fn cmp_fraction(a: (i128, i128), b: (i128, i128)) -> Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

/// Reusable buffers for predicate checks.
pub(crate) struct Scratch {
    worth: Vec<i128>,
    best: Vec<i128>,
    group_value: Vec<i128>,
    group_best: Vec<i128>,
}

impl Scratch {
    pub fn new(view: &IntegerView) -> Self {
        Scratch {
            worth: vec![0; view.n * view.n],
            best: vec![0; view.n * view.n],
            group_value: vec![0; view.k()],
            group_best: vec![0; view.k()],
        }
    }
}

impl IntegerView {
    /// Allocator value per group for an item-to-group assignment, and the
    /// worst `(value, size)` share among them.
    pub fn min_share_of_groups(&self, group_owner: &[usize], buf: &mut [i128]) -> (i128, i128) {
        buf.iter_mut().for_each(|x| *x = 0);
        for (o, &p) in group_owner.iter().enumerate() {
            buf[p] += self.alloc[o];
        }
        let mut worst = (buf[0], self.sizes[0]);
        for (&u, &size) in buf.iter().zip(&self.sizes).skip(1) {
            let cand = (u, size);
            if cmp_fraction(cand, worst) == Ordering::Less {
                worst = cand;
            }
        }
        worst
    }

    /// Whether the allocation `owner` (item -> agent) meets every predicate.
    /// `cgmms` is the maximin share as a scaled fraction, required when the
    /// predicate set asks for it.
    pub fn satisfies(
        &self,
        owner: &[usize],
        predicates: &[Predicate],
        cgmms: Option<(i128, i128)>,
        s: &mut Scratch,
    ) -> bool {
        let n = self.n;
        let needs_agents = predicates
            .iter()
            .any(|p| matches!(p, Predicate::Ef | Predicate::Ef1));
        let needs_groups = predicates
            .iter()
            .any(|p| !matches!(p, Predicate::Ef | Predicate::Ef1));

        if needs_agents {
            s.worth.iter_mut().for_each(|x| *x = 0);
            s.best.iter_mut().for_each(|x| *x = 0);
            for (o, &j) in owner.iter().enumerate() {
                for i in 0..n {
                    let v = self.agent[i][o];
                    s.worth[i * n + j] += v;
                    if v > s.best[i * n + j] {
                        s.best[i * n + j] = v;
                    }
                }
            }
        }
        if needs_groups {
            s.group_value.iter_mut().for_each(|x| *x = 0);
            s.group_best.iter_mut().for_each(|x| *x = 0);
            for (o, &j) in owner.iter().enumerate() {
                let p = self.group_of[j];
                let v = self.alloc[o];
                s.group_value[p] += v;
                if v > s.group_best[p] {
                    s.group_best[p] = v;
                }
            }
        }

        predicates.iter().all(|pred| match pred {
            Predicate::Ef | Predicate::Ef1 => {
                let up_to_one = *pred == Predicate::Ef1;
                (0..n).all(|i| {
                    let own = s.worth[i * n + i];
                    (0..n).filter(|&j| j != i).all(|j| {
                        let mut theirs = s.worth[i * n + j];
                        if up_to_one {
                            theirs -= s.best[i * n + j];
                        }
                        own >= theirs
                    })
                })
            }
            Predicate::Cgeq | Predicate::Cgeq1 => {
                let up_to_one = *pred == Predicate::Cgeq1;
                let k = self.k();
                (0..k).all(|p| {
                    (0..k).filter(|&q| q != p).all(|q| {
                        let lhs = s.group_value[p] * self.sizes[q];
                        if up_to_one {
                            lhs >= (s.group_value[q] - s.group_best[q]) * self.sizes[p]
                        } else {
                            lhs == s.group_value[q] * self.sizes[p]
                        }
                    })
                })
            }
            Predicate::CgmmsAttaining => {
                let target = cgmms.expect("maximin share computed before the search");
                let worst = (0..self.k())
                    .map(|p| (s.group_value[p], self.sizes[p]))
                    .min_by(|&a, &b| cmp_fraction(a, b))
                    .expect("at least one group");
                cmp_fraction(worst, target) == Ordering::Equal
            }
        })
    }
}
