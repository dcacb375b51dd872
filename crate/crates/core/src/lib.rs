// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

pub mod canonical;
pub mod gz;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod orbit;
pub mod potential;
pub mod report;
pub mod tolerances;
pub mod wick;
