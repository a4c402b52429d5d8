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

//! Equivalence closures of three-qubit circuit structures.
//!
//! Two structures are equivalent when one is obtained from the other by
//! relabelling qubits and/or reversing the gate order. Each closure is
//! represented by its lexicographically least member.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::circuit::CircuitStructure;
use crate::error::{Error, Result};

/// Largest gate count accepted by the exhaustive routines (`3^15` structures).
pub const MAX_ENUM_GATES: usize = 15;

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// A permutation of the three qubit labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RelabelOp {
    pub perm: [usize; 3],
}

impl RelabelOp {
    /// All six relabellings, identity first.
    pub const ALL: [RelabelOp; 6] = [
        RelabelOp { perm: [0, 1, 2] },
        RelabelOp { perm: [1, 2, 0] },
        RelabelOp { perm: [2, 0, 1] },
        RelabelOp { perm: [1, 0, 2] },
        RelabelOp { perm: [2, 1, 0] },
        RelabelOp { perm: [0, 2, 1] },
    ];

    pub fn apply_pair(&self, (i, j): (usize, usize)) -> (usize, usize) {
        let (a, b) = (self.perm[i], self.perm[j]);
        (a.min(b), a.max(b))
    }

    pub fn apply(&self, c: &CircuitStructure) -> CircuitStructure {
        CircuitStructure::new_unchecked(3, c.positions.iter().map(|&p| self.apply_pair(p)).collect())
    }

    // Action on pair codes 0, 1, 2.
    fn code_map(&self) -> [u8; 3] {
        PAIRS.map(|p| pair_code(self.apply_pair(p)))
    }
}

fn pair_code(p: (usize, usize)) -> u8 {
    PAIRS.iter().position(|&q| q == p).expect("three-qubit pair") as u8
}

fn check_three(c: &CircuitStructure) -> Result<()> {
    if c.n_qubits != 3 {
        return Err(Error::InvalidArgument(format!(
            "pruning works on 3-qubit structures, got {} qubits",
            c.n_qubits
        )));
    }
    Ok(())
}

/// The orbit of `c` under the six relabellings.
pub fn rearrangements(c: &CircuitStructure) -> Result<BTreeSet<CircuitStructure>> {
    check_three(c)?;
    Ok(RelabelOp::ALL.iter().map(|op| op.apply(c)).collect())
}

pub fn reverse(c: &CircuitStructure) -> CircuitStructure {
    let mut positions = c.positions.clone();
    positions.reverse();
    CircuitStructure::new_unchecked(c.n_qubits, positions)
}

/// The full closure: relabellings, each with and without reversal.
pub fn closure(c: &CircuitStructure) -> Result<BTreeSet<CircuitStructure>> {
    let mut out = rearrangements(c)?;
    let rev = reverse(c);
    out.extend(RelabelOp::ALL.iter().map(|op| op.apply(&rev)));
    Ok(out)
}

pub fn canonical_representative(c: &CircuitStructure) -> Result<CircuitStructure> {
    Ok(closure(c)?.into_iter().next().expect("closure contains c"))
}

fn check_gates(n: usize) -> Result<()> {
    if n > MAX_ENUM_GATES {
        return Err(Error::TooLarge(n));
    }
    Ok(())
}

// Structures as base-3 digit strings, first gate most significant, so that
// numeric order is lexicographic order.
struct Codec {
    n: usize,
    maps: [[u8; 3]; 6],
}

impl Codec {
    fn new(n: usize) -> Self {
        Codec {
            n,
            maps: RelabelOp::ALL.map(|op| op.code_map()),
        }
    }

    fn digits(&self, mut code: u64, out: &mut [u8]) {
        for k in (0..self.n).rev() {
            out[k] = (code % 3) as u8;
            code /= 3;
        }
    }

    fn encode<I: Iterator<Item = u8>>(it: I) -> u64 {
        it.fold(0u64, |acc, d| acc * 3 + d as u64)
    }

    // Codes of all twelve images (with repetition).
    fn images(&self, code: u64, buf: &mut [u8]) -> [u64; 12] {
        self.digits(code, buf);
        let mut out = [0u64; 12];
        for (r, map) in self.maps.iter().enumerate() {
            out[2 * r] = Self::encode(buf.iter().map(|&d| map[d as usize]));
            out[2 * r + 1] = Self::encode(buf.iter().rev().map(|&d| map[d as usize]));
        }
        out
    }

    fn structure(&self, code: u64) -> CircuitStructure {
        let mut buf = vec![0u8; self.n];
        self.digits(code, &mut buf);
        CircuitStructure::new_unchecked(3, buf.iter().map(|&d| PAIRS[d as usize]).collect())
    }
}

fn space_size(n: usize) -> u64 {
    3u64.pow(n as u32)
}

/// One representative per closure, sorted lexicographically.
pub fn enumerate_pruned(n: usize) -> Result<Vec<CircuitStructure>> {
    check_gates(n)?;
    let codec = Codec::new(n);
    let mut buf = vec![0u8; n];
    let mut out = Vec::new();
    for code in 0..space_size(n) {
        if codec.images(code, &mut buf).iter().all(|&v| v >= code) {
            out.push(codec.structure(code));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCensus {
    pub n: usize,
    pub count3: u64,
    pub count6: u64,
    pub count12: u64,
}

impl ClosureCensus {
    pub fn closures(&self) -> u64 {
        self.count3 + self.count6 + self.count12
    }

    pub fn covered(&self) -> u64 {
        3 * self.count3 + 6 * self.count6 + 12 * self.count12
    }

    fn add(&mut self, size: u64) -> Result<()> {
        match size {
            3 => self.count3 += 1,
            6 => self.count6 += 1,
            12 => self.count12 += 1,
            other => {
                return Err(Error::Numerical(format!(
                    "closure of size {other} at N = {}",
                    self.n
                )))
            }
        }
        Ok(())
    }
}

fn check_census(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("census needs at least one gate".into()));
    }
    check_gates(n)
}

/// Census from the canonical representatives and their orbit sizes.
pub fn closure_census(n: usize) -> Result<ClosureCensus> {
    check_census(n)?;
    let codec = Codec::new(n);
    let mut buf = vec![0u8; n];
    let mut census = ClosureCensus { n, count3: 0, count6: 0, count12: 0 };
    for code in 0..space_size(n) {
        let mut imgs = codec.images(code, &mut buf);
        if imgs.iter().all(|&v| v >= code) {
            imgs.sort_unstable();
            let mut distinct = 1;
            for w in imgs.windows(2) {
                if w[0] != w[1] {
                    distinct += 1;
                }
            }
            census.add(distinct)?;
        }
    }
    Ok(census)
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Largest gate count accepted by [`closure_census_union_find`].
pub const MAX_UNION_FIND_GATES: usize = 12;

/// Census by union-find over the whole space, joining each structure with
/// its images under the generators. Independent of [`closure_census`].
pub fn closure_census_union_find(n: usize) -> Result<ClosureCensus> {
    check_census(n)?;
    if n > MAX_UNION_FIND_GATES {
        return Err(Error::TooLarge(n));
    }
    let size = space_size(n) as usize;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    let swap01 = RelabelOp { perm: [1, 0, 2] }.code_map();
    let swap12 = RelabelOp { perm: [0, 2, 1] }.code_map();
    let mut buf = vec![0u8; n];
    let codec = Codec::new(n);
    for code in 0..size as u64 {
        codec.digits(code, &mut buf);
        let images = [
            Codec::encode(buf.iter().map(|&d| swap01[d as usize])),
            Codec::encode(buf.iter().map(|&d| swap12[d as usize])),
            Codec::encode(buf.iter().rev().copied()),
        ];
        for img in images {
            let (a, b) = (find(&mut parent, code as u32), find(&mut parent, img as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut counts = vec![0u64; size];
    for x in 0..size as u32 {
        let r = find(&mut parent, x);
        counts[r as usize] += 1;
    }
    let mut census = ClosureCensus { n, count3: 0, count6: 0, count12: 0 };
    for &c in counts.iter().filter(|&&c| c > 0) {
        census.add(c)?;
    }
    Ok(census)
}

/// Which closed form of the pruned-space size to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaVariant {
    /// `3^N/12 + 3^floor((N-1)/2) + 1/4`. Exact for even N only.
    FloorTerm,
    /// `3^N/12 + 3^(N/2-1) + 1/4` for even N, `3^N/12 + 3^floor(N/2)/2 + 1/4` for odd N.
    HalfTerm,
}

/// Closed form for the number of equivalence closures of N-gate structures.
pub fn closure_count_formula(n: usize, variant: FormulaVariant) -> Result<Ratio<i128>> {
    if n == 0 {
        return Err(Error::InvalidArgument("formula needs N >= 1".into()));
    }
    if n > 60 {
        return Err(Error::TooLarge(n));
    }
    let p3 = |e: usize| Ratio::from_integer(3i128.pow(e as u32));
    let base = p3(n) / 12 + Ratio::new(1, 4);
    let middle = match variant {
        FormulaVariant::FloorTerm => p3((n - 1) / 2),
        FormulaVariant::HalfTerm if n % 2 == 0 => p3(n / 2 - 1),
        FormulaVariant::HalfTerm => p3(n / 2) / 2,
    };
    Ok(base + middle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: &[(usize, usize)]) -> CircuitStructure {
        CircuitStructure::three(p).unwrap()
    }

    #[test]
    fn rearrangement_examples() {
        let r = rearrangements(&s(&[(0, 1), (0, 1)])).unwrap();
        let want: BTreeSet<_> = [
            s(&[(0, 1), (0, 1)]),
            s(&[(0, 2), (0, 2)]),
            s(&[(1, 2), (1, 2)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(r, want);
        assert_eq!(rearrangements(&s(&[(0, 1), (0, 2)])).unwrap().len(), 6);
        assert_eq!(rearrangements(&s(&[])).unwrap().len(), 1);
        assert!(rearrangements(&CircuitStructure::new(4, vec![]).unwrap()).is_err());
    }

    #[test]
    fn relabellings_are_distinct_bijections() {
        let set: BTreeSet<[usize; 3]> = RelabelOp::ALL.iter().map(|o| o.perm).collect();
        assert_eq!(set.len(), 6);
        for op in RelabelOp::ALL {
            let mut p = op.perm;
            p.sort_unstable();
            assert_eq!(p, [0, 1, 2]);
        }
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(
            reverse(&s(&[(0, 1), (1, 2), (0, 2)])),
            s(&[(0, 2), (1, 2), (0, 1)])
        );
        let pal = s(&[(0, 1), (0, 2), (0, 1)]);
        assert_eq!(reverse(&pal), pal);
    }

    #[test]
    fn representative_examples() {
        for m in [s(&[(0, 1), (0, 1)]), s(&[(0, 2), (0, 2)]), s(&[(1, 2), (1, 2)])] {
            assert_eq!(canonical_representative(&m).unwrap(), s(&[(0, 1), (0, 1)]));
        }
    }

    #[test]
    fn pruned_sizes() {
        let sizes: Vec<usize> = (1..=4).map(|n| enumerate_pruned(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 10]);
        assert_eq!(enumerate_pruned(0).unwrap(), vec![s(&[])]);
        assert!(matches!(enumerate_pruned(16), Err(Error::TooLarge(16))));
    }

    #[test]
    fn pruned_list_is_sorted_and_canonical() {
        let list = enumerate_pruned(5).unwrap();
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        for c in &list {
            assert_eq!(&canonical_representative(c).unwrap(), c);
        }
    }

    #[test]
    fn census_small() {
        let got: Vec<(u64, u64, u64)> = (2..=4)
            .map(|n| {
                let c = closure_census(n).unwrap();
                (c.count3, c.count6, c.count12)
            })
            .collect();
        assert_eq!(got, vec![(1, 1, 0), (1, 2, 1), (1, 5, 4)]);
    }

    #[test]
    fn census_routes_agree() {
        for n in 1..=9 {
            let a = closure_census(n).unwrap();
            let b = closure_census_union_find(n).unwrap();
            assert_eq!(a, b, "N = {n}");
            assert_eq!(a.covered(), 3u64.pow(n as u32));
            assert_eq!(a.closures() as usize, enumerate_pruned(n).unwrap().len());
        }
    }

    #[test]
    fn formula_values() {
        let st = |n| closure_count_formula(n, FormulaVariant::FloorTerm).unwrap();
        let pr = |n| closure_count_formula(n, FormulaVariant::HalfTerm).unwrap();
        assert_eq!(st(2), Ratio::from_integer(2));
        assert_eq!(pr(2), Ratio::from_integer(2));
        assert_eq!(pr(3), Ratio::from_integer(4));
        assert_eq!(st(3), Ratio::new(11, 2));
        assert_eq!(pr(1), Ratio::from_integer(1));
        assert_eq!(st(1), Ratio::new(3, 2));
        assert_eq!(st(4), Ratio::from_integer(10));
    }

    #[test]
    fn half_term_formula_matches_brute_force() {
        for n in 1..=10 {
            let size = enumerate_pruned(n).unwrap().len() as i128;
            assert_eq!(
                closure_count_formula(n, FormulaVariant::HalfTerm).unwrap(),
                Ratio::from_integer(size),
                "N = {n}"
            );
        }
    }

    #[test]
    fn pruned_fraction_bounds() {
        for n in 1..=12usize {
            let size = enumerate_pruned(n).unwrap().len() as f64;
            let frac = size / 3f64.powi(n as i32);
            let upper = 1.0 / 12.0 + 3f64.powi(2 - n.div_ceil(2) as i32);
            assert!(frac >= 1.0 / 12.0 && frac <= upper, "N = {n}: {frac}");
        }
    }

    use proptest::prelude::*;

    fn structure_strategy() -> impl Strategy<Value = CircuitStructure> {
        prop::collection::vec(0usize..3, 0..10)
            .prop_map(|v| CircuitStructure::new_unchecked(3, v.into_iter().map(|d| PAIRS[d]).collect()))
    }

    proptest! {
        #[test]
        fn reverse_is_involution(c in structure_strategy()) {
            prop_assert_eq!(reverse(&reverse(&c)), c);
        }

        #[test]
        fn representative_is_closure_invariant(c in structure_strategy(), k in 0usize..6) {
            let rep = canonical_representative(&c).unwrap();
            prop_assert_eq!(&canonical_representative(&rep).unwrap(), &rep);
            prop_assert_eq!(&canonical_representative(&reverse(&c)).unwrap(), &rep);
            prop_assert_eq!(&canonical_representative(&RelabelOp::ALL[k].apply(&c)).unwrap(), &rep);
            let size = closure(&c).unwrap().len();
            prop_assert!(c.is_empty() || [3, 6, 12].contains(&size));
        }
    }
}
