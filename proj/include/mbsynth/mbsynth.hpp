// Copyright 2026 The mbsynth Authors
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

#include "mbsynth/analysis.hpp"
#include "mbsynth/bwc.hpp"
#include "mbsynth/circuit.hpp"
#include "mbsynth/decomp.hpp"
#include "mbsynth/errors.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/mbs3.hpp"
#include "mbsynth/primitives.hpp"
#include "mbsynth/serialization.hpp"
#include "mbsynth/usd.hpp"
