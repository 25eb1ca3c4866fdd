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

//! Fair allocation of indivisible items to agents organised in groups.
//!
//! Agents hold additive valuations over the items and a centralized
//! allocator holds one more. The crate checks envy-freeness up to one item
//! (EF1) between agents and equitability up to one item (CGEQ1) between
//! groups under the allocator's valuation, builds allocations meeting both
//! for three valuation classes, computes the group maximin share for binary
//! allocators, and offers exhaustive oracles for small instances.
//!
//! All arithmetic is exact.

pub mod algorithms;
pub mod cgmms;
pub mod error;
pub mod exec;
pub mod fairness;
pub mod instances;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod suites;

pub use algorithms::{solve, Algorithm, Outcome, Trace};
pub use cgmms::{cgmms_ef1_allocate_binary, cgmms_value_binary, CgmmsCertificate};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fairness::{evaluate, FairnessReport, Notion, Verdict, Witness};
pub use model::{detect_class, Allocation, ClassKind, Instance, InstanceClass};
pub use rational::Rational;
