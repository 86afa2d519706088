// Copyright 2026 The rgan Authors
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

#ifndef RGAN_RGAN_HPP
#define RGAN_RGAN_HPP

// Umbrella header for the library (the CLI layer is included separately).

#include "rgan/bounds.hpp"
#include "rgan/bspline.hpp"
#include "rgan/density.hpp"
#include "rgan/divergence.hpp"
#include "rgan/error.hpp"
#include "rgan/families.hpp"
#include "rgan/holder.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/learning.hpp"
#include "rgan/parallel.hpp"
#include "rgan/quadrature.hpp"
#include "rgan/random.hpp"
#include "rgan/rosenblatt.hpp"
#include "rgan/triangular_map.hpp"

#endif // RGAN_RGAN_HPP
