// Copyright 2026 The lrsynth authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "lrsynth/bench.hpp"
#include "lrsynth/bit_matrix.hpp"
#include "lrsynth/circuit.hpp"
#include "lrsynth/lu.hpp"
#include "lrsynth/oracle.hpp"
#include "lrsynth/portfolio.hpp"
#include "lrsynth/prng.hpp"
#include "lrsynth/random_operator.hpp"
#include "lrsynth/synth_baseline.hpp"
#include "lrsynth/synth_cost.hpp"
#include "lrsynth/synth_greedyge.hpp"
