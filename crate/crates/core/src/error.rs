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

//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),

    /// An algorithm was run on an instance outside the class it is defined for.
    #[error("{algorithm} requires {required} valuations")]
    Precondition {
        algorithm: &'static str,
        required: &'static str,
    },

    /// Automatic algorithm selection found nothing with a guarantee.
    #[error(
        "no guaranteed algorithm for this class: EF1+CGEQ1 existence for general \
         valuations is an open question (use the `oracle` command for small instances)"
    )]
    NoGuaranteedAlgorithm,

    /// Exhaustive enumeration would exceed the configured cap.
    #[error("enumeration needs {} assignments, cap is {cap}", display_required(.required))]
    CapExceeded { required: Option<u128>, cap: u64 },
}

fn display_required(required: &Option<u128>) -> String {
    match required {
        Some(r) => r.to_string(),
        None => "more than 2^128".to_string(),
    }
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
