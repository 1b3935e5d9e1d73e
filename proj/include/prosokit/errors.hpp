// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace prosokit {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// audio_io
struct MalformedHeader : Error {
    using Error::Error;
};
struct UnsupportedEncoding : Error {
    using Error::Error;
};
struct EmptySignal : Error {
    using Error::Error;
};

// prosody_features
struct NoValues : Error {
    using Error::Error;
};
struct KindMismatch : Error {
    using Error::Error;
};
struct DurationMismatch : Error {
    using Error::Error;
};
struct NegativeDuration : Error {
    using Error::Error;
};

// alignment_ingest
struct SchemaError : Error {
    using Error::Error;
};
struct SpanOverlap : Error {
    using Error::Error;
};
struct DurationCountMismatch : Error {
    using Error::Error;
};
struct TokenError : Error {
    using Error::Error;
};
struct NegativeInterval : Error {
    using Error::Error;
};

// sfv_core
struct LengthMismatch : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct VocabMiss : Error {
    using Error::Error;
};

// prosody_eval
struct InsufficientData : Error {
    using Error::Error;
};
struct EmptySequence : Error {
    using Error::Error;
};
struct MissingUtterance : Error {
    using Error::Error;
};
struct EmptySystem : Error {
    using Error::Error;
};

// corpus_tools
struct OutOfRange : Error {
    using Error::Error;
};
struct MissingTranscript : Error {
    using Error::Error;
};
struct BadSpec : Error {
    using Error::Error;
};

} // namespace prosokit
