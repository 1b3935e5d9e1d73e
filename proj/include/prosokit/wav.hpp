// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prosokit/audio.hpp"

namespace prosokit {

/// Decode a RIFF/WAVE container holding PCM 16-bit samples.
/// Multi-channel input is downmixed by the arithmetic mean of the channels;
/// samples are scaled by 1/32768 into [-1, 1).
/// Throws MalformedHeader on truncated/invalid RIFF, UnsupportedEncoding on
/// non-PCM-16 content.
AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes);

/// Encode a mono buffer as RIFF/WAVE PCM-16. Samples are clamped to
/// [-1, 32767/32768] and rounded to the nearest integer, so
/// decode_wav(encode_wav(x)) round-trips PCM-16 data exactly.
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf);

AudioBuffer read_wav_file(const std::string& path);
void write_wav_file(const std::string& path, const AudioBuffer& buf);

} // namespace prosokit
