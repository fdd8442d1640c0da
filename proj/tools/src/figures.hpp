#pragma once

// Data behind each published figure, one table per plotted series. Parameter
// sets default to the captions; any override replaces the whole set.

#include <optional>
#include <string>
#include <vector>

#include "table.hpp"

namespace sqbath::cli {

struct FigureOverrides {
  std::optional<double> n_bar;
  std::optional<double> epsilon;
  std::optional<double> psi;
  std::optional<double> gamma;
  std::optional<double> t_max;
  std::optional<double> sample_step;
  std::optional<std::vector<double>> grid;  // sweep axis (N or eps)
};

struct Series {
  std::string name;  // e.g. "eps_0.28"
  Table table;
};

inline constexpr int kFigureCount = 13;

/// Throws InvalidArgument for figure ids outside 1..13.
std::vector<Series> figure_series(int figure, const FigureOverrides& overrides = {},
                                  unsigned threads = 1);

}  // namespace sqbath::cli
