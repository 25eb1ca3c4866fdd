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

//! Brute-force ground truth for small instances.
//!
//! Everything here enumerates assignments exhaustively and refuses, rather
//! than subsamples, when the enumeration would exceed its cap.

mod kernel;
pub mod search;

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};
use crate::rational::Rational;

use kernel::{cmp_fraction, IntegerView, Scratch};

pub use search::{search_counterexample, LogLine, SearchConfig, SearchOutcome, SearchVerdict};

/// Default limit on visited assignments.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Ef,
    Ef1,
    Cgeq,
    Cgeq1,
    CgmmsAttaining,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::Ef => "EF",
            Predicate::Ef1 => "EF1",
            Predicate::Cgeq => "CGEQ",
            Predicate::Cgeq1 => "CGEQ1",
            Predicate::CgmmsAttaining => "CGMMS",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "EF" => Ok(Predicate::Ef),
            "EF1" => Ok(Predicate::Ef1),
            "CGEQ" => Ok(Predicate::Cgeq),
            "CGEQ1" => Ok(Predicate::Cgeq1),
            "CGMMS" => Ok(Predicate::CgmmsAttaining),
            other => Err(Error::input(format!(
                "unknown predicate {other:?} (expected EF, EF1, CGEQ, CGEQ1 or CGMMS)"
            ))),
        }
    }
}

/// Which allocations to look for, and how far to search.
#[derive(Clone, Debug)]
pub struct ExistenceQuery<'a> {
    pub instance: &'a Instance,
    pub predicates: Vec<Predicate>,
    pub cap: u64,
}

impl<'a> ExistenceQuery<'a> {
    pub fn new(instance: &'a Instance, predicates: &[Predicate]) -> Result<Self> {
        if predicates.is_empty() {
            return Err(Error::input("an existence query needs at least one predicate"));
        }
        let mut predicates = predicates.to_vec();
        predicates.sort_unstable();
        predicates.dedup();
        Ok(ExistenceQuery {
            instance,
            predicates,
            cap: DEFAULT_ENUM_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub visited: u64,
    pub stopped_early: bool,
}

fn check_cap(base: usize, exponent: usize, cap: u64) -> Result<()> {
    let required = u32::try_from(exponent)
        .ok()
        .and_then(|e| (base as u128).checked_pow(e));
    match required {
        Some(r) if r <= cap as u128 => Ok(()),
        _ => Err(Error::CapExceeded { required, cap }),
    }
}

/// Visits every vector in `{0..base}^len` in lexicographic order.
fn odometer(
    base: usize,
    len: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> EnumerationSummary {
    let mut digits = vec![0usize; len];
    let mut visited = 0u64;
    loop {
        visited += 1;
        if visit(&digits).is_break() {
            return EnumerationSummary {
                visited,
                stopped_early: true,
            };
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return EnumerationSummary {
                    visited,
                    stopped_early: false,
                };
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < base {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Visits all `n^m` item-to-agent assignments in lexicographic order
/// (item 0 most significant). The visitor may stop early.
pub fn enumerate_allocations(
    inst: &Instance,
    cap: u64,
    visitor: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<EnumerationSummary> {
    check_cap(inst.n(), inst.m(), cap)?;
    Ok(odometer(inst.n(), inst.m(), visitor))
}

/// Maximin share in scaled allocator units, as `(value, group size)`.
fn cgmms_scaled(view: &IntegerView, cap: u64) -> Result<(i128, i128)> {
    check_cap(view.k(), view.m, cap)?;
    let mut buf = vec![0i128; view.k()];
    let mut best: Option<(i128, i128)> = None;
    odometer(view.k(), view.m, |owner| {
        let share = view.min_share_of_groups(owner, &mut buf);
        if best.is_none_or(|b| cmp_fraction(share, b) == Ordering::Greater) {
            best = Some(share);
        }
        ControlFlow::Continue(())
    });
    Ok(best.expect("at least one assignment"))
}

/// Exact maximin share over all allocations. Group shares only depend on
/// the union each group holds, so item-to-group assignments (`k^m`) suffice.
pub fn cgmms_value_bruteforce(inst: &Instance, cap: u64) -> Result<Rational> {
    let view = IntegerView::new(inst)?;
    let (num, den) = cgmms_scaled(&view, cap)?;
    Ok(view.share_to_rational(num, den))
}

struct Prepared {
    view: IntegerView,
    cgmms: Option<(i128, i128)>,
}

fn prepare(query: &ExistenceQuery<'_>) -> Result<Prepared> {
    let inst = query.instance;
    check_cap(inst.n(), inst.m(), query.cap)?;
    let view = IntegerView::new(inst)?;
    let cgmms = if query.predicates.contains(&Predicate::CgmmsAttaining) {
        Some(cgmms_scaled(&view, query.cap)?)
    } else {
        None
    };
    Ok(Prepared { view, cgmms })
}

/// First allocation, in lexicographic assignment order, meeting every
/// predicate of the query.
pub fn exists_allocation(query: &ExistenceQuery<'_>) -> Result<Option<Allocation>> {
    let prep = prepare(query)?;
    let mut scratch = Scratch::new(&prep.view);
    let mut found = None;
    odometer(prep.view.n, prep.view.m, |owner| {
        if prep
            .view
            .satisfies(owner, &query.predicates, prep.cgmms, &mut scratch)
        {
            found = Some(owner.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found.map(|owner| Allocation::from_assignment(query.instance.n(), &owner)))
}

/// Every assignment (item -> agent) meeting the query.
pub fn satisfying_assignments(query: &ExistenceQuery<'_>) -> Result<Vec<Vec<usize>>> {
    let prep = prepare(query)?;
    let mut scratch = Scratch::new(&prep.view);
    let mut out = Vec::new();
    odometer(prep.view.n, prep.view.m, |owner| {
        if prep
            .view
            .satisfies(owner, &query.predicates, prep.cgmms, &mut scratch)
        {
            out.push(owner.to_vec());
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Checks one allocation against the query with the oracle's own arithmetic.
pub fn oracle_accepts(query: &ExistenceQuery<'_>, alloc: &Allocation) -> Result<bool> {
    alloc.check_against(query.instance)?;
    let view = IntegerView::new(query.instance)?;
    let cgmms = if query.predicates.contains(&Predicate::CgmmsAttaining) {
        Some(cgmms_scaled(&view, query.cap)?)
    } else {
        None
    };
    let mut scratch = Scratch::new(&view);
    Ok(view.satisfies(&alloc.assignment(), &query.predicates, cgmms, &mut scratch))
}
