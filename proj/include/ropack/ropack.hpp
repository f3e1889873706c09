// Copyright 2026 The ropack Authors.
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

#ifndef ROPACK_ROPACK_HPP_
#define ROPACK_ROPACK_HPP_

#include "ropack/core.hpp"
#include "ropack/hardgen.hpp"
#include "ropack/harness.hpp"
#include "ropack/io.hpp"
#include "ropack/lp.hpp"
#include "ropack/matching.hpp"
#include "ropack/online.hpp"
#include "ropack/oracle.hpp"
#include "ropack/rational.hpp"
#include "ropack/rng.hpp"

#endif  // ROPACK_ROPACK_HPP_
