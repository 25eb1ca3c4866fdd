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

//! Plain-text reports. The first line carries the format version; fields
//! are `key: value`, exact fractions first with a decimal alongside.

use std::fmt::Write as _;

use groupfair::fairness::FairnessReport;
use groupfair::{CgmmsCertificate, Instance, Notion, Rational, Verdict};

pub const REPORT_VERSION: &str = "report-version: 1";

fn exact_and_decimal(r: &Rational) -> String {
    format!("{r} ({:.6})", r.to_f64())
}

fn verdict_line(out: &mut String, notion: Notion, v: &Verdict) {
    match &v.witness {
        None => {
            let _ = writeln!(out, "{}: {}", notion.name(), v.holds);
        }
        Some(w) => {
            let _ = writeln!(out, "{}: {}  witness: {w}", notion.name(), v.holds);
        }
    }
}

pub fn header(out: &mut String, inst: &Instance) {
    let _ = writeln!(out, "{REPORT_VERSION}");
    let _ = writeln!(
        out,
        "size: n={} m={} k={}",
        inst.n(),
        inst.m(),
        inst.k()
    );
}

pub fn fairness(out: &mut String, report: &FairnessReport) {
    for notion in [Notion::Ef, Notion::Ef1, Notion::Cgeq, Notion::Cgeq1] {
        verdict_line(out, notion, report.verdict(notion));
    }
    for (p, ((size, util), avg)) in report
        .group_sizes
        .iter()
        .zip(&report.group_utilities)
        .zip(&report.group_averages)
        .enumerate()
    {
        let _ = writeln!(
            out,
            "group G{}: size={size} utility={} average={}",
            p + 1,
            exact_and_decimal(util),
            exact_and_decimal(avg)
        );
    }
}

pub fn certificate(out: &mut String, c: &CgmmsCertificate) {
    let list = |xs: &[usize]| {
        xs.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(out, "cgmms: {}", exact_and_decimal(&c.value));
    let _ = writeln!(out, "level: {}", c.level);
    let _ = writeln!(out, "valued-counts: {}", list(&c.counts));
    let _ = writeln!(out, "floor: {}", c.floor);
    let _ = writeln!(out, "extras: {}", list(&c.extras));
}

pub fn value(out: &mut String, key: &str, r: &Rational) {
    let _ = writeln!(out, "{key}: {}", exact_and_decimal(r));
}
