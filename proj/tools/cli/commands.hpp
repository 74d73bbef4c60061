#pragma once

#include "pcamix/mixed_table.hpp"
#include "pcamix/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pcamix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitParameter = 3;

struct RunConfig {
  std::filesystem::path input;
  std::optional<std::filesystem::path> types;  ///< sidecar listing qualitative columns
  std::vector<std::string> qualitative;        ///< --qual names
  Index k = 2;
  double tol = 1e-8;
  Index max_sweeps = 100;
  std::filesystem::path out = ".";
};

struct SimulateConfig {
  Index n = 100;
  Index p = 10;
  std::uint64_t seed = 1;
  std::filesystem::path out = ".";
};

struct BenchConfig {
  std::string grid = "50,100,200/10,50";
  bool paper_grid = false;
  Index reps = 20;
  std::uint64_t seed = 1;
  std::size_t max_oracle_mb = 4096;
  std::filesystem::path out = ".";
};

/// Reads the qualitative column names of a types sidecar: one name per line,
/// blank lines and lines starting with '#' ignored.
std::vector<std::string> read_types_file(const std::filesystem::path& path);

/// Builds a table from CSV. A column is qualitative when it is named in
/// `qualitative` or any of its cells is not a number. Empty cells are rejected.
MixedTable load_table(const std::filesystem::path& input,
                      const std::vector<std::string>& qualitative);

/// Parses "n1,n2,.../p1,p2,...". Throws std::invalid_argument on malformed input.
std::pair<std::vector<Index>, std::vector<Index>> parse_grid(const std::string& grid);

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_rotate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point; returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pcamix::cli
