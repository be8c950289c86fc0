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

// Scalar transforms applied to pitch and energy before joint quantization.

#pragma once

namespace cqnv {

inline constexpr double kEnergyFloor = 1e-4;

// x_p = log2((wo / pi) * (4000 / 50)): octaves above 50 Hz at 8 kHz.
// Throws InvalidArgument for wo <= 0.
double transform_pitch(double wo);
double inverse_transform_pitch(double x_p);

// x_e = 10 log10(e + 1e-4). Throws InvalidArgument for e < 0.
double transform_energy(double e);
// max(0, 10^(x_e / 10) - 1e-4)
double inverse_transform_energy(double x_e);

struct PitchEnergyVector {
  double x_p = 0.0;
  double x_e = 0.0;

  bool operator==(const PitchEnergyVector&) const = default;
};

}  // namespace cqnv
