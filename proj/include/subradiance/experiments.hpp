#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "subradiance/analytics.hpp"
#include "subradiance/hamiltonian.hpp"
#include "subradiance/io.hpp"
#include "subradiance/spectrum.hpp"

namespace subradiance {

/// Deterministic Cartesian sweep over (N, d, gamma, xi).
struct SweepSpec {
  std::vector<int> n_list;
  std::vector<double> d_list;
  std::vector<double> gamma_list;
  std::vector<int> xi_list;
  double eig_tol = default_eig_tol;
  int workers = 0;  // 0: env SUBRADIANCE_WORKERS, else hardware concurrency

  void validate() {
    if (n_list.empty() || d_list.empty() || gamma_list.empty() || xi_list.empty())
      throw std::invalid_argument("SweepSpec: all grids must be non-empty");
    auto sort_unique = [](auto& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    sort_unique(n_list);
    sort_unique(d_list);
    sort_unique(gamma_list);
    sort_unique(xi_list);
    for (int n : n_list)
      if (n < 1) throw std::invalid_argument("SweepSpec: N must be >= 1");
    for (double d : d_list)
      if (!(d > 0.0)) throw std::invalid_argument("SweepSpec: d/lambda must be > 0");
    for (double g : gamma_list)
      if (!(g >= 0.0)) throw std::invalid_argument("SweepSpec: gamma must be >= 0");
    for (int xi : xi_list) {
      if (xi < 1) throw std::invalid_argument("SweepSpec: xi must be >= 1");
      if (xi > n_list.front())
        throw std::invalid_argument("SweepSpec: xi exceeds the smallest N");
    }
  }
};

inline constexpr const char* comparison_csv_header =
    "N,d_over_lambda,gamma_over_Gamma,xi,parity,Gamma_num,Gamma_ana_total,"
    "Gamma_ana_1d,Gamma_ana_fs,J_num,J_ana_total,J_infty,C_d,overlap,residual,flags";

/// Paired numeric/analytic observables for one sweep point.
struct ComparisonRecord {
  int n = 0;
  double d_over_lambda = 0.0;
  double gamma_over_gamma = 0.0;
  int xi = 0;
  std::string parity;  // parity of N + xi, drives the oscillatory bracket
  double gamma_num = 0.0;
  double gamma_ana_total = 0.0;
  double gamma_ana_1d = 0.0;
  double gamma_ana_fs = 0.0;
  double j_num = 0.0;
  double j_ana_total = 0.0;
  double j_infty = 0.0;
  double c_d = 0.0;
  double overlap = 0.0;
  double residual = 0.0;
  std::string flags;

  bool failed() const { return flags.find("solver_error") != std::string::npos; }
  bool flagged() const { return !flags.empty(); }
};

/// Relative error with a floor guard against division by ~0.
inline double relative_error(double numeric, double analytic, double floor = 1e-300) {
  return std::abs(numeric - analytic) / std::max(std::abs(numeric), floor);
}

namespace detail {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SUBRADIANCE_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Analytic columns for one record. Rows with gamma = 0 carry the
/// ideal-waveguide closed forms; rows with gamma > 0 carry the
/// deep-subwavelength decomposition (see README for the column contract).
inline void fill_analytics(ComparisonRecord& rec, const ChainParams& p, int xi) {
  const RegimeFlags flags = regime_flags(p, xi);
  std::string tokens = flags.tokens();
  try {
    if (p.gamma_fs == 0.0) {
      rec.gamma_ana_1d = gamma_ideal(p, xi);
      rec.gamma_ana_fs = 0.0;
      rec.gamma_ana_total = rec.gamma_ana_1d;
      rec.j_ana_total = j_ideal(p, xi, /*open_boundary=*/false);
      const double half = 0.5 * p.beta();
      rec.j_infty = -0.5 * std::tan(half);
      rec.c_d = -0.125 * std::sin(half) / std::pow(std::cos(half), 3);
    } else {
      const AnalyticPrediction a = analytic_prediction(p, xi);
      rec.gamma_ana_1d = a.linewidth_guided;
      rec.gamma_ana_fs = a.linewidth_fs;
      rec.gamma_ana_total = a.linewidth_total;
      rec.j_ana_total = a.shift_total;
      rec.j_infty = a.shift_infty;
      rec.c_d = a.finite_size_coeff;
    }
  } catch (const std::domain_error&) {
    const double nan = std::nan("");
    rec.gamma_ana_1d = rec.gamma_ana_fs = rec.gamma_ana_total = nan;
    rec.j_ana_total = rec.j_infty = rec.c_d = nan;
    tokens += "analytic_domain_error;";
  }
  rec.flags += tokens;
}

}  // namespace detail

/// Run the full pipeline (build -> eigendecompose -> classify -> extract,
/// plus analytics) over the Cartesian grid. Points are independent tasks on
/// a bounded worker pool; output order is deterministic by (N, d, gamma, xi).
/// Per-point solver failures become flagged rows, not aborts.
inline std::vector<ComparisonRecord> run_sweep(SweepSpec spec) {
  spec.validate();
  struct Point {
    int n;
    double d, g;
  };
  std::vector<Point> points;
  for (int n : spec.n_list)
    for (double d : spec.d_list)
      for (double g : spec.gamma_list) points.push_back({n, d, g});

  const int xi_max = spec.xi_list.back();
  std::vector<std::vector<ComparisonRecord>> per_point(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      const Point& pt = points[i];
      auto& out = per_point[i];
      ChainParams params(pt.n, pt.d, pt.g, std::min(xi_max, pt.n));

      std::optional<SpectrumResult> spec_result;
      std::string solver_flag;
      try {
        auto spectrum = eigendecompose(build_total(params), spec.eig_tol);
        classify_branches(spectrum, std::min(xi_max, pt.n));
        spec_result = std::move(spectrum);
      } catch (const std::exception& e) {
        solver_flag = std::string("solver_error:") + e.what() + ";";
      }

      for (int xi : spec.xi_list) {
        ComparisonRecord rec;
        rec.n = pt.n;
        rec.d_over_lambda = pt.d;
        rec.gamma_over_gamma = pt.g;
        rec.xi = xi;
        rec.parity = ((pt.n + xi) % 2 == 0) ? "even" : "odd";
        if (xi > pt.n) {
          rec.flags = "branch_out_of_range;";
          rec.gamma_num = rec.j_num = rec.overlap = rec.residual = std::nan("");
          detail::fill_analytics(rec, params, std::min(xi, pt.n));
          out.push_back(std::move(rec));
          continue;
        }
        if (spec_result) {
          const CollectiveMode* mode = find_branch(*spec_result, xi);
          rec.gamma_num = mode->linewidth;
          rec.j_num = mode->shift;
          rec.overlap = mode->overlap;
          rec.residual = mode->residual;
          if (mode->low_confidence) rec.flags += "low_overlap;";
        } else {
          rec.flags += solver_flag;
          rec.gamma_num = rec.j_num = rec.overlap = rec.residual = std::nan("");
        }
        detail::fill_analytics(rec, params, xi);
        out.push_back(std::move(rec));
      }
    }
  };

  const int n_workers =
      std::min<std::size_t>(detail::resolve_workers(spec.workers), points.size());
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ComparisonRecord> records;
  for (auto& chunk : per_point)
    for (auto& rec : chunk) records.push_back(std::move(rec));
  std::stable_sort(records.begin(), records.end(),
                   [](const ComparisonRecord& a, const ComparisonRecord& b) {
                     return std::tie(a.n, a.d_over_lambda, a.gamma_over_gamma, a.xi) <
                            std::tie(b.n, b.d_over_lambda, b.gamma_over_gamma, b.xi);
                   });
  return records;
}

inline std::vector<std::string> record_row(const ComparisonRecord& r) {
  return {std::to_string(r.n),
          format_double(r.d_over_lambda),
          format_double(r.gamma_over_gamma),
          std::to_string(r.xi),
          r.parity,
          format_double(r.gamma_num),
          format_double(r.gamma_ana_total),
          format_double(r.gamma_ana_1d),
          format_double(r.gamma_ana_fs),
          format_double(r.j_num),
          format_double(r.j_ana_total),
          format_double(r.j_infty),
          format_double(r.c_d),
          format_double(r.overlap),
          format_double(r.residual),
          r.flags};
}

inline void write_records_csv(const std::filesystem::path& path,
                              const std::vector<ComparisonRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(record_row(r));
  write_csv(path, comparison_csv_header, rows);
}

inline nlohmann::json record_json(const ComparisonRecord& r) {
  return {{"N", r.n},
          {"d_over_lambda", r.d_over_lambda},
          {"gamma_over_Gamma", r.gamma_over_gamma},
          {"xi", r.xi},
          {"parity", r.parity},
          {"Gamma_num", r.gamma_num},
          {"Gamma_ana_total", r.gamma_ana_total},
          {"Gamma_ana_1d", r.gamma_ana_1d},
          {"Gamma_ana_fs", r.gamma_ana_fs},
          {"J_num", r.j_num},
          {"J_ana_total", r.j_ana_total},
          {"J_infty", r.j_infty},
          {"C_d", r.c_d},
          {"overlap", r.overlap},
          {"residual", r.residual},
          {"flags", r.flags}};
}

inline void write_records_json(const std::filesystem::path& path,
                               const std::vector<ComparisonRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  std::ofstream os = open_output(path);
  os << arr.dump(2) << '\n';
}

/// Per-(d, gamma, xi) error summary for acceptance gating. Flagged rows are
/// excluded from the statistics and counted separately.
struct GroupStats {
  double d = 0.0, gamma = 0.0;
  int xi = 0;
  int n_max = 0;
  int rows_used = 0, rows_flagged = 0, rows_failed = 0;
  double gamma_rel_max = 0.0, gamma_rel_median = 0.0, gamma_rel_at_nmax = 0.0;
  double jdev_rel_max = 0.0, jdev_rel_median = 0.0, jdev_rel_at_nmax = 0.0;
  double residual_max = 0.0;
};

inline std::vector<GroupStats> benchmark_compare(
    const std::vector<ComparisonRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("benchmark_compare: no records");
  std::map<std::tuple<double, double, int>, std::vector<const ComparisonRecord*>> groups;
  for (const auto& r : records)
    groups[{r.d_over_lambda, r.gamma_over_gamma, r.xi}].push_back(&r);

  auto median = [](std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };

  std::vector<GroupStats> out;
  for (auto& [key, rows] : groups) {
    GroupStats g;
    std::tie(g.d, g.gamma, g.xi) = key;
    std::vector<double> gerr, jerr;
    const ComparisonRecord* at_nmax = nullptr;
    for (const ComparisonRecord* r : rows) {
      if (r->failed()) {
        ++g.rows_failed;
        continue;
      }
      if (r->flagged()) {
        ++g.rows_flagged;
        continue;
      }
      ++g.rows_used;
      gerr.push_back(relative_error(r->gamma_num, r->gamma_ana_total));
      jerr.push_back(relative_error(r->j_num - r->j_infty, r->j_ana_total - r->j_infty));
      g.residual_max = std::max(g.residual_max, r->residual);
      if (r->n > g.n_max) {
        g.n_max = r->n;
        at_nmax = r;
      }
    }
    if (!gerr.empty()) {
      g.gamma_rel_max = *std::max_element(gerr.begin(), gerr.end());
      g.gamma_rel_median = median(gerr);
      g.jdev_rel_max = *std::max_element(jerr.begin(), jerr.end());
      g.jdev_rel_median = median(jerr);
      g.gamma_rel_at_nmax =
          relative_error(at_nmax->gamma_num, at_nmax->gamma_ana_total);
      g.jdev_rel_at_nmax = relative_error(at_nmax->j_num - at_nmax->j_infty,
                                          at_nmax->j_ana_total - at_nmax->j_infty);
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace subradiance
