/*
Copyright 2026 The CQNV Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cqnv/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cqnv/errors.hpp"

namespace cqnv {
namespace {
constexpr double kPitchScale = 4000.0 / 50.0;
}

double transform_pitch(double wo) {
  if (!(wo > 0.0)) throw InvalidArgument("transform_pitch: wo must be positive");
  return std::log2(wo / std::numbers::pi * kPitchScale);
}

double inverse_transform_pitch(double x_p) {
  return std::exp2(x_p) * std::numbers::pi / kPitchScale;
}

double transform_energy(double e) {
  if (!(e >= 0.0)) throw InvalidArgument("transform_energy: energy must be non-negative");
  return 10.0 * std::log10(e + kEnergyFloor);
}

double inverse_transform_energy(double x_e) {
  return std::max(0.0, std::pow(10.0, x_e / 10.0) - kEnergyFloor);
}

}  // namespace cqnv
