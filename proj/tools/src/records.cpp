#include "records.hpp"

#include <fstream>
#include <sstream>

#include "sqbath/entanglement.hpp"
#include "sqbath/error.hpp"

namespace sqbath::cli {

namespace {

std::string entry_name(const char* part, std::size_t i, std::size_t j) {
  return std::string(part) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

Method parse_method(const std::string& text) {
  for (Method m : {Method::RK4, Method::Exact, Method::ClosedForm}) {
    if (to_string(m) == text) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + text + "'");
}

double required_number(const Table& table, std::string_view key) {
  const std::string value = comment_value(table, key);
  if (value.empty()) {
    throw Error(ErrorCode::InvalidArgument, "missing '" + std::string(key) + "' comment");
  }
  return parse_number(value);
}

}  // namespace

Table trajectory_table(const Trajectory& traj) {
  Table table;
  table.comments = {"basis = dfs", "N = " + format_number(traj.bath.n_bar()),
                    "psi = " + format_number(traj.bath.psi()),
                    "gamma = " + format_number(traj.bath.gamma()),
                    "method = " + std::string(to_string(traj.method)),
                    "max_trace_drift = " + format_number(traj.max_trace_drift)};
  table.columns.push_back("t");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      table.columns.push_back(entry_name("re", i, j));
      table.columns.push_back(entry_name("im", i, j));
    }
  }
  table.columns.push_back("concurrence");
  table.columns.push_back("ppt_min_eig");

  const auto metrics = measure_trajectory(traj);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const DensityMatrix dfs = change_basis(traj.states[k], BasisTag::DFS, traj.bath);
    std::vector<std::string> row;
    row.reserve(table.columns.size());
    row.push_back(format_number(traj.times[k]));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        row.push_back(format_number(dfs(i, j).real()));
        row.push_back(format_number(dfs(i, j).imag()));
      }
    }
    row.push_back(format_number(metrics[k].concurrence));
    row.push_back(format_number(metrics[k].ppt_min_eigenvalue));
    table.add_row(std::move(row));
  }
  return table;
}

Trajectory trajectory_from_table(const Table& table) {
  if (comment_value(table, "basis") != "dfs") {
    throw Error(ErrorCode::InvalidArgument, "trajectory table must be in the DFS basis");
  }
  Trajectory traj{.times = {},
                  .states = {},
                  .bath = BathParams(required_number(table, "N"), required_number(table, "psi"),
                                     required_number(table, "gamma")),
                  .method = parse_method(comment_value(table, "method")),
                  .max_trace_drift = required_number(table, "max_trace_drift")};
  const std::size_t t_col = table.column_index("t");
  std::array<std::size_t, 16> re_col{};
  std::array<std::size_t, 16> im_col{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      re_col[4 * i + j] = table.column_index(entry_name("re", i, j));
      im_col[4 * i + j] = table.column_index(entry_name("im", i, j));
    }
  }
  for (const auto& row : table.rows) {
    traj.times.push_back(parse_number(row[t_col]));
    std::vector<cplx> data(16);
    for (std::size_t k = 0; k < 16; ++k) {
      data[k] = {parse_number(row[re_col[k]]), parse_number(row[im_col[k]])};
    }
    traj.states.emplace_back(ComplexMatrix(4, std::move(data)), BasisTag::DFS, 1e-6);
  }
  return traj;
}

Table events_table(const EventReport& report) {
  Table table;
  table.comments = {"asymptotic_value = " + format_number(report.asymptotic_value),
                    "initially_separable = " + std::string(report.initially_separable ? "1" : "0"),
                    "resolution_warning = " + std::string(report.resolution_warning ? "1" : "0")};
  table.columns = {"event", "time", "tolerance"};
  // Interleave in time order; a touching point lists its death first.
  std::size_t d = 0;
  std::size_t r = 0;
  const std::string tol = format_number(report.refined_tolerance);
  while (d < report.deaths.size() || r < report.revivals.size()) {
    const bool take_death =
        r == report.revivals.size() ||
        (d < report.deaths.size() && report.deaths[d] <= report.revivals[r]);
    if (take_death) {
      table.add_row({"death", format_number(report.deaths[d++]), tol});
    } else {
      table.add_row({"revival", format_number(report.revivals[r++]), tol});
    }
  }
  return table;
}

EventReport events_from_table(const Table& table) {
  EventReport report;
  report.asymptotic_value = required_number(table, "asymptotic_value");
  report.initially_separable = comment_value(table, "initially_separable") == "1";
  report.resolution_warning = comment_value(table, "resolution_warning") == "1";
  const std::size_t e_col = table.column_index("event");
  const std::size_t t_col = table.column_index("time");
  const std::size_t tol_col = table.column_index("tolerance");
  for (const auto& row : table.rows) {
    const double t = parse_number(row[t_col]);
    report.refined_tolerance = parse_number(row[tol_col]);
    if (row[e_col] == "death") {
      report.deaths.push_back(t);
    } else if (row[e_col] == "revival") {
      report.revivals.push_back(t);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown event type '" + row[e_col] + "'");
    }
  }
  return report;
}

DensityMatrix parse_custom_state(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::InvalidCustom, "empty state file");
  std::stringstream hs(header);
  std::string basis_word;
  hs >> basis_word;
  BasisTag basis = BasisTag::Standard;
  if (basis_word == "standard") {
    basis = BasisTag::Standard;
  } else if (basis_word == "dfs") {
    basis = BasisTag::DFS;
  } else {
    throw Error(ErrorCode::InvalidCustom,
                "first line must be 'standard' or 'dfs', got '" + basis_word + "'");
  }

  std::vector<cplx> data;
  std::string token;
  while (in >> token) {
    const auto comma = token.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::InvalidCustom, "entry '" + token + "' is not a re,im pair");
    }
    try {
      data.emplace_back(parse_number(std::string_view(token).substr(0, comma)),
                        parse_number(std::string_view(token).substr(comma + 1)));
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidCustom, "entry '" + token + "' is not a re,im pair");
    }
  }
  if (data.size() != 16) {
    throw Error(ErrorCode::InvalidCustom,
                "expected 16 entries, found " + std::to_string(data.size()));
  }
  try {
    return DensityMatrix(ComplexMatrix(4, std::move(data)), basis);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidCustom, e.what());
  }
}

DensityMatrix read_custom_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidCustom, "cannot open '" + path + "'");
  return parse_custom_state(in);
}

}  // namespace sqbath::cli
