// Copyright 2026 The gamebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Umbrella header.

#ifndef GAMEBOUND_GAMEBOUND_HPP
#define GAMEBOUND_GAMEBOUND_HPP

#include "gamebound/errors.hpp"
#include "gamebound/linalg.hpp"
#include "gamebound/eigen_solver.hpp"
#include "gamebound/format.hpp"
#include "gamebound/game.hpp"
#include "gamebound/game_io.hpp"
#include "gamebound/spectral.hpp"
#include "gamebound/optimizers.hpp"
#include "gamebound/hard_instances.hpp"
#include "gamebound/rate_lab.hpp"

#endif  // GAMEBOUND_GAMEBOUND_HPP
