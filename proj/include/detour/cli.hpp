#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "detour/problem.hpp"

namespace detour::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitValidation = 3;

struct RepairFlags {
  std::optional<std::filesystem::path> svg;
  std::optional<int> samples;
  std::optional<double> delta_fraction;
  std::optional<SpliceExtent> splice_extent;
  std::optional<PunctureMode> mode;
};

int cmd_repair(const std::filesystem::path& input, const std::filesystem::path& output,
               const RepairFlags& flags, std::ostream& err);

int cmd_check(const std::filesystem::path& input, const std::filesystem::path& result,
              std::ostream& err);

int cmd_demo(const std::string& name, const std::filesystem::path& dir, std::ostream& err);

}  // namespace detour::cli
