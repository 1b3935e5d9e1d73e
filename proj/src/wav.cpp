// Copyright 2026 prosokit authors
// SPDX-License-Identifier: Apache-2.0

#include "prosokit/wav.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "prosokit/errors.hpp"

namespace prosokit {

namespace {

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

} // namespace

AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw MalformedHeader("not a RIFF/WAVE container");
    }

    bool have_fmt = false;
    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    const std::uint8_t* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* hdr = bytes.data() + pos;
        std::uint32_t chunk_size = read_u32(hdr + 4);
        pos += 8;
        if (pos + chunk_size > bytes.size()) {
            throw MalformedHeader("chunk extends past end of file");
        }
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw MalformedHeader("fmt chunk too small");
            const std::uint8_t* f = bytes.data() + pos;
            format = read_u16(f);
            channels = read_u16(f + 2);
            sample_rate = read_u32(f + 4);
            bits = read_u16(f + 14);
            have_fmt = true;
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            data = bytes.data() + pos;
            data_size = chunk_size;
        }
        pos += chunk_size + (chunk_size & 1); // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr) throw MalformedHeader("missing fmt or data chunk");
    if (format != 1 || bits != 16) {
        throw UnsupportedEncoding("only PCM 16-bit is supported (format=" +
                                  std::to_string(format) + ", bits=" + std::to_string(bits) + ")");
    }
    if (channels == 0) throw MalformedHeader("zero channels");
    if (sample_rate == 0) throw MalformedHeader("zero sample rate");

    std::size_t bytes_per_frame = static_cast<std::size_t>(channels) * 2;
    std::size_t num_frames = data_size / bytes_per_frame;

    AudioBuffer buf;
    buf.sample_rate = static_cast<int>(sample_rate);
    buf.samples.resize(num_frames);
    for (std::size_t i = 0; i < num_frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            const std::uint8_t* s = data + i * bytes_per_frame + c * 2;
            auto v = static_cast<std::int16_t>(s[0] | (s[1] << 8));
            acc += v;
        }
        buf.samples[i] = acc / channels / 32768.0;
    }
    return buf;
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf) {
    std::vector<std::uint8_t> out;
    std::size_t data_size = buf.samples.size() * 2;
    out.reserve(44 + data_size);

    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    append_u32(out, static_cast<std::uint32_t>(36 + data_size));
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    append_u32(out, 16);
    append_u16(out, 1); // PCM
    append_u16(out, 1); // mono
    append_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
    append_u32(out, static_cast<std::uint32_t>(buf.sample_rate) * 2);
    append_u16(out, 2);  // block align
    append_u16(out, 16); // bits per sample
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    append_u32(out, static_cast<std::uint32_t>(data_size));

    for (double s : buf.samples) {
        long v = std::lround(s * 32768.0);
        if (v > 32767) v = 32767;
        if (v < -32768) v = -32768;
        append_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
    return out;
}

AudioBuffer read_wav_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

void write_wav_file(const std::string& path, const AudioBuffer& buf) {
    auto bytes = encode_wav(buf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

} // namespace prosokit
