#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stpnet::cli {

enum class Command { Assr, Attractors, Convert, Reach, Quotient, Robust, SearchFeedback, ExportDot, Check };
enum class Format { Json, Text, Dot };

struct RunConfig {
    Command command = Command::Assr;
    std::vector<std::string> inputPaths;
    std::optional<std::string> nominalPath;
    std::optional<std::string> disturbedPath;
    std::optional<std::size_t> sMax;
    std::optional<std::size_t> maxLength;
    std::optional<std::size_t> horizon;
    std::size_t cap = 1'000'000;
    bool allowTruncation = false;
    unsigned threads = 0;
    Format format = Format::Json;
    std::string mode = "undistinguished";
    std::string model = "full";       // assr: full | nominal
    std::string graph = "ts";         // export-dot: ts | condensation | quotient
    std::optional<std::string> sets;  // reach: "1,2;3"
    std::optional<std::size_t> from;
    std::optional<std::size_t> to;
    std::optional<std::string> feedback;  // robust: delta indices of G
    std::optional<unsigned long long> seed;
    std::size_t trials = 50;
};

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitConfig = 2;

/// Default cap for enumerations; STPNET_CAP overrides it.
std::size_t default_cap();

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace stpnet::cli
