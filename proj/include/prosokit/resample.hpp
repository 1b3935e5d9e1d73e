// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "prosokit/audio.hpp"

namespace prosokit {

/// Band-limited sample rate conversion (windowed-sinc interpolation).
/// Identity (bit-exact copy) when target_rate equals the buffer rate.
/// Output length is round(n * target / source), so duration is preserved
/// within one sample.
AudioBuffer resample(const AudioBuffer& buf, int target_rate);

} // namespace prosokit
