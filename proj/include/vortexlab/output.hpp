#ifndef VORTEXLAB_OUTPUT_HPP
#define VORTEXLAB_OUTPUT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vortexlab/config.hpp"

namespace vortexlab {

/// Shortest-lossless float formatting used in every CSV (17 significant
/// digits, '.' decimal separator); reproducible byte-for-byte.
std::string format_g17(double v);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Row-by-row CSV assembly with a mandatory header.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);
    CsvBuilder& add_row(const std::vector<std::string>& cells);
    const std::string& str() const { return text_; }
    static std::string cell(double v) { return format_g17(v); }

private:
    std::size_t columns_;
    std::string text_;
};

/// Files produced by one command, plus its statistical gate outcome.
struct CommandResult {
    std::vector<std::pair<std::string, std::string>> files; // name -> content
    bool gate_pass = true;
};

/// Writes every file plus manifest.json into cfg.out_dir; removes anything
/// already written if a write fails. Returns the manifest text.
std::string write_outputs(const RunConfig& cfg, const CommandResult& result,
                          double duration_s);

} // namespace vortexlab

#endif
