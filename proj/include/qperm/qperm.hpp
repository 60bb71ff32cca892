// Copyright 2026 The qperm Authors
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

#pragma once

#include "qperm/bv.hpp"
#include "qperm/errors.hpp"
#include "qperm/finite_group.hpp"
#include "qperm/fixed_point.hpp"
#include "qperm/grover.hpp"
#include "qperm/modular.hpp"
#include "qperm/permutation.hpp"
#include "qperm/program_search.hpp"
#include "qperm/rng.hpp"
#include "qperm/state_vector.hpp"
