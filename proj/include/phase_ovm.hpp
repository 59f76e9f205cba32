// Copyright 2026 The phase-ovm Authors
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

// Umbrella header.

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"
#include "phase_ovm/kraus.hpp"
#include "phase_ovm/oracle.hpp"
#include "phase_ovm/parallel.hpp"
#include "phase_ovm/quadrature.hpp"
#include "phase_ovm/quasiprob.hpp"
#include "phase_ovm/random.hpp"
#include "phase_ovm/region_types.hpp"
#include "phase_ovm/regions1d.hpp"
#include "phase_ovm/regions2d.hpp"
#include "phase_ovm/serialize.hpp"
#include "phase_ovm/verify.hpp"
