#include "vortexlab/output.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "vortexlab/version.hpp"

namespace vortexlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// Compact SHA-256 (FIPS 180-4).
struct Sha256 {
    std::array<std::uint32_t, 8> h{0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                                   0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
    std::array<std::uint8_t, 64> block{};
    std::size_t block_len = 0;
    std::uint64_t total = 0;

    static constexpr std::array<std::uint32_t, 64> k{
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};

    static std::uint32_t rotr(std::uint32_t x, int r) { return (x >> r) | (x << (32 - r)); }

    void compress() {
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = std::uint32_t(block[4 * i]) << 24 | std::uint32_t(block[4 * i + 1]) << 16 |
                   std::uint32_t(block[4 * i + 2]) << 8 | std::uint32_t(block[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, hh] = h;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + maj;
            hh = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d;
        h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }

    void update(const std::uint8_t* data, std::size_t len) {
        total += len;
        while (len > 0) {
            const std::size_t take = std::min(len, block.size() - block_len);
            std::memcpy(block.data() + block_len, data, take);
            block_len += take;
            data += take;
            len -= take;
            if (block_len == block.size()) {
                compress();
                block_len = 0;
            }
        }
    }

    std::array<std::uint8_t, 32> finish() {
        const std::uint64_t bits = total * 8;
        const std::uint8_t one = 0x80;
        update(&one, 1);
        const std::uint8_t zero = 0x00;
        while (block_len != 56) update(&zero, 1);
        std::uint8_t len_be[8];
        for (int i = 0; i < 8; ++i) len_be[i] = std::uint8_t(bits >> (56 - 8 * i));
        update(len_be, 8);
        std::array<std::uint8_t, 32> out{};
        for (int i = 0; i < 8; ++i)
            for (int b = 0; b < 4; ++b) out[4 * i + b] = std::uint8_t(h[i] >> (24 - 8 * b));
        return out;
    }
};

} // namespace

std::string sha256_hex(const std::string& bytes) {
    Sha256 hasher;
    hasher.update(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
    const auto digest = hasher.finish();
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint8_t b : digest) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xf]);
    }
    return out;
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    if (columns_ == 0) throw std::invalid_argument("CsvBuilder: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

CsvBuilder& CsvBuilder::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CsvBuilder: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
    return *this;
}

std::string write_outputs(const RunConfig& cfg, const CommandResult& result,
                          double duration_s) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("write_outputs: cannot create '" + cfg.out_dir + "'");

    std::vector<fs::path> written;
    const auto cleanup = [&] {
        for (const auto& p : written) {
            std::error_code rm;
            fs::remove(p, rm);
        }
    };

    nlohmann::ordered_json manifest;
    manifest["command"] = cfg.command;
    nlohmann::ordered_json echo;
    echo["system.n"] = cfg.n;
    echo["system.a"] = cfg.a;
    echo["system.nu"] = cfg.nu;
    echo["system.variant"] = cfg.variant;
    echo["sim.dt"] = cfg.dt;
    echo["sim.horizon"] = cfg.horizon;
    echo["sim.eps"] = cfg.eps;
    echo["sim.replicas"] = cfg.replicas;
    echo["sim.t_trunc"] = cfg.t_trunc;
    echo["est.k"] = cfg.k;
    echo["est.n_permutations"] = cfg.n_permutations;
    echo["est.n_samples"] = cfg.n_samples;
    echo["run.out_dir"] = cfg.out_dir;
    manifest["config"] = echo;
    manifest["seed"] = cfg.master_seed;
    manifest["version"] = kVersion;
    manifest["duration_s"] = duration_s;
    manifest["outputs"] = nlohmann::ordered_json::array();

    try {
        for (const auto& [name, content] : result.files) {
            const fs::path p = dir / name;
            {
                std::ofstream out(p, std::ios::binary | std::ios::trunc);
                if (!out) throw std::runtime_error("write_outputs: cannot write '" + p.string() + "'");
                out << content;
                if (!out) throw std::runtime_error("write_outputs: short write on '" + p.string() + "'");
            }
            written.push_back(p);
            manifest["outputs"].push_back({{"file", name}, {"sha256", sha256_hex(content)}});
        }
        const std::string text = manifest.dump(2) + "\n";
        const fs::path mp = dir / "manifest.json";
        std::ofstream out(mp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_outputs: cannot write manifest");
        out << text;
        if (!out) throw std::runtime_error("write_outputs: short write on manifest");
        return text;
    } catch (...) {
        cleanup();
        throw;
    }
}

} // namespace vortexlab
