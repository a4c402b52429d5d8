// Copyright 2026 The sqisw-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use crate::matcore::{CMatrix, C64};

/// Bit offsets of each target's basis bit inside a full index.
fn offsets(targets: &[usize], n: usize) -> Vec<usize> {
    let k = targets.len();
    (0..1usize << k)
        .map(|a| {
            targets
                .iter()
                .enumerate()
                .filter(|(t, _)| (a >> (k - 1 - t)) & 1 == 1)
                .map(|(_, &q)| 1usize << (n - 1 - q))
                .sum()
        })
        .collect()
}

/// Indices with all target bits clear.
fn bases(targets: &[usize], n: usize) -> impl Iterator<Item = usize> {
    let mask: usize = targets.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    (0..1usize << n).filter(move |i| i & mask == 0)
}

/// `m <- embed(g) * m`.
pub fn apply_left(m: &mut CMatrix, g: &CMatrix, targets: &[usize], n: usize) {
    let off = offsets(targets, n);
    let k = off.len();
    let mut buf = vec![C64::new(0.0, 0.0); k];
    let base: Vec<usize> = bases(targets, n).collect();
    for col in 0..m.ncols() {
        for &b in &base {
            for (a, o) in off.iter().enumerate() {
                buf[a] = m[(b + o, col)];
            }
            for (r, o) in off.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (a, v) in buf.iter().enumerate() {
                    acc += g[(r, a)] * v;
                }
                m[(b + o, col)] = acc;
            }
        }
    }
}

/// `m <- m * embed(g)`.
pub fn apply_right(m: &mut CMatrix, g: &CMatrix, targets: &[usize], n: usize) {
    let off = offsets(targets, n);
    let k = off.len();
    let mut buf = vec![C64::new(0.0, 0.0); k];
    let base: Vec<usize> = bases(targets, n).collect();
    for row in 0..m.nrows() {
        for &b in &base {
            for (a, o) in off.iter().enumerate() {
                buf[a] = m[(row, b + o)];
            }
            for (cidx, o) in off.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (a, v) in buf.iter().enumerate() {
                    acc += v * g[(a, cidx)];
                }
                m[(row, b + o)] = acc;
            }
        }
    }
}

/// Full `2^n` matrix of `g` acting on `targets`.
pub fn embed(g: &CMatrix, targets: &[usize], n: usize) -> CMatrix {
    let d = 1usize << n;
    let mut m = CMatrix::identity(d, d);
    apply_left(&mut m, g, targets, n);
    m
}
