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

//! Synthesis of quantum circuits over the SQiSW gate (the square root of
//! iSWAP) plus arbitrary single-qubit gates.
//!
//! The crate is organised bottom-up:
//!
//! * [`matcore`]: dense complex matrices, named gates, the trace error
//!   metric and Haar sampling.
//! * [`circuit`]: the circuit IR, structures, slot layouts, JSON and
//!   OpenQASM 3 emission.
//! * [`weyl`]: KAK decomposition, Weyl-chamber canonicalisation and the
//!   SQiSW cost classification of two-qubit gates.
//! * [`synth2q`]: exact two-qubit synthesis with at most three SQiSW gates,
//!   and the two-SQiSW-plus-diagonal variant.
//! * [`qsd`]: cosine-sine decomposition, demultiplexing, Gray-code
//!   multiplexed rotations and the recursive Shannon decomposition.
//! * [`toffoli`]: the exact eight-SQiSW Toffoli scheme.
//! * [`numopt`]: parameter fitting and circuit-structure search.
//! * [`prune`]: equivalence closures of circuit structures under qubit
//!   relabelling and reversal.

pub mod circuit;
pub mod error;
pub mod matcore;
pub mod numopt;
pub mod prune;
pub mod qsd;
pub mod synth2q;
pub mod toffoli;
pub mod weyl;

pub use error::{Error, Result};
pub use matcore::{error_metric, haar_random_unitary, CMatrix, UnitaryMatrix, C64};
