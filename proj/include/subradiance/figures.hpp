#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "subradiance/experiments.hpp"
#include "subradiance/fitting.hpp"
#include "subradiance/svg.hpp"

namespace subradiance {

/// Grids used by the figure pipelines. The paper does not state its exact N
/// sampling; these defaults are documented in the README and can be shrunk
/// for quick runs.
struct FigureGrids {
  // fig2: ideal waveguide benchmark
  std::vector<int> fig2_n = [] {
    std::vector<int> v;
    for (int n = 20; n <= 200; n += 5) v.push_back(n);
    return v;
  }();
  std::vector<double> fig2_d{0.02, 0.1, 0.25};
  std::vector<double> fig2_d_sweep = [] {
    std::vector<double> v;
    for (int k = 1; k <= 24; ++k) v.push_back(0.02 * k);
    return v;
  }();
  int fig2_sweep_n = 100;

  // fig3: free-space prefactor (no diagonalization)
  int fig3_n_min = 20, fig3_n_max = 300;
  std::vector<double> fig3_d{0.01, 0.02, 0.03};
  double fig3_gamma = 0.1;

  // fig4: nonideal linewidth decomposition
  int fig4_n_min = 40, fig4_n_max = 200;
  double fig4_d = 0.02, fig4_gamma = 0.1;

  // fig5: collective energy shift
  std::vector<int> fig5a_n = [] {
    std::vector<int> v;
    for (int n = 40; n <= 300; n += 5) v.push_back(n);
    return v;
  }();
  std::vector<double> fig5b_d = [] {
    std::vector<double> v;
    for (int k = 1; k <= 16; ++k) v.push_back(0.005 * k);
    return v;
  }();
  int fig5b_n = 100;
  std::vector<int> fig5c_n = [] {
    std::vector<int> v;
    for (int n = 60; n <= 300; n += 20) v.push_back(n);
    return v;
  }();
  double fig5_d = 0.02, fig5_gamma = 0.1;

  int workers = 0;
};

struct FigureOutput {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notes;  // fitted slopes etc., for the manifest
};

namespace detail {

inline std::vector<ComparisonRecord> filter_records(
    const std::vector<ComparisonRecord>& records, int xi) {
  std::vector<ComparisonRecord> out;
  for (const auto& r : records)
    if (r.xi == xi) out.push_back(r);
  return out;
}

inline SvgSeries series_from(const std::vector<ComparisonRecord>& records,
                             double (*x)(const ComparisonRecord&),
                             double (*y)(const ComparisonRecord&), std::string label,
                             std::string color, bool markers) {
  SvgSeries s;
  s.label = std::move(label);
  s.color = std::move(color);
  s.markers = markers;
  for (const auto& r : records) s.points.emplace_back(x(r), y(r));
  return s;
}

inline const char* palette(int i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

}  // namespace detail

/// fig2: ideal-waveguide linewidths and shifts vs N and vs k0 d, numeric
/// eigenvalues against the closed-form asymptotics.
inline FigureOutput reproduce_fig2(const std::filesystem::path& outdir,
                                   const FigureGrids& grids = {}) {
  FigureOutput out;
  SweepSpec sweep;
  sweep.n_list = grids.fig2_n;
  sweep.d_list = grids.fig2_d;
  sweep.gamma_list = {0.0};
  sweep.xi_list = {1, 3};
  sweep.workers = grids.workers;
  const auto records = run_sweep(sweep);

  SweepSpec dsweep;
  dsweep.n_list = {grids.fig2_sweep_n};
  dsweep.d_list = grids.fig2_d_sweep;
  dsweep.gamma_list = {0.0};
  dsweep.xi_list = {1, 3};
  dsweep.workers = grids.workers;
  const auto drecords = run_sweep(dsweep);

  struct Panel {
    const char* name;
    std::vector<ComparisonRecord> rows;
    bool vs_spacing;
    bool linewidth;
  };
  std::vector<Panel> panels{
      {"fig2a", detail::filter_records(records, 1), false, true},
      {"fig2b", detail::filter_records(records, 3), false, true},
      {"fig2c", drecords, true, true},
      {"fig2d", detail::filter_records(records, 1), false, false},
      {"fig2e", detail::filter_records(records, 3), false, false},
      {"fig2f", drecords, true, false},
  };

  for (const auto& panel : panels) {
    const auto csv = outdir / (std::string(panel.name) + ".csv");
    write_records_csv(csv, panel.rows);
    out.files.push_back(csv);

    SvgPlotSpec spec;
    spec.log_y = panel.linewidth;
    spec.title = panel.linewidth ? "Subradiant linewidth, ideal waveguide"
                                 : "Collective shift, ideal waveguide";
    spec.x_label = panel.vs_spacing ? "k0 d / pi" : "N";
    spec.y_label = panel.linewidth ? "Gamma_xi / Gamma" : "J_xi / Gamma";
    std::vector<SvgSeries> series;
    int color = 0;
    auto add_pair = [&](const std::vector<ComparisonRecord>& rows, std::string tag) {
      SvgSeries num, ana;
      num.label = tag + " numeric";
      num.color = detail::palette(color);
      num.markers = true;
      ana.label = tag + " analytic";
      ana.color = detail::palette(color);
      ++color;
      for (const auto& r : rows) {
        const double x = panel.vs_spacing ? 2.0 * r.d_over_lambda : r.n;
        num.points.emplace_back(x, panel.linewidth ? r.gamma_num : r.j_num);
        ana.points.emplace_back(x, panel.linewidth ? r.gamma_ana_total : r.j_ana_total);
      }
      num.points.swap(num.points);
      series.push_back(std::move(ana));
      series.push_back(std::move(num));
    };
    if (panel.vs_spacing) {
      add_pair(detail::filter_records(panel.rows, 1), "xi=1");
      add_pair(detail::filter_records(panel.rows, 3), "xi=3");
    } else {
      for (double d : grids.fig2_d) {
        std::vector<ComparisonRecord> rows;
        for (const auto& r : panel.rows)
          if (r.d_over_lambda == d) rows.push_back(r);
        add_pair(rows, "d=" + format_double(d));
      }
    }
    const auto svg = outdir / (std::string(panel.name) + ".svg");
    write_svg_plot(svg, spec, series);
    out.files.push_back(svg);
  }
  return out;
}

inline constexpr const char* fig3_csv_header =
    "N,d_over_lambda,gamma_over_Gamma,xi,parity,F_discrete,F_analytic,"
    "Gamma_fs_discrete,Gamma_fs_analytic";

/// fig3: dimensionless free-space prefactor F_{N+1} and linewidth
/// Gamma_fs, discrete lag sum against the small-beta analytic form.
inline FigureOutput reproduce_fig3(const std::filesystem::path& outdir,
                                   const FigureGrids& grids = {}) {
  FigureOutput out;
  for (std::size_t p = 0; p < grids.fig3_d.size(); ++p) {
    const double d = grids.fig3_d[p];
    std::vector<std::vector<std::string>> rows;
    SvgSeries f_disc, f_ana, g_disc, g_ana;
    for (int n = grids.fig3_n_min; n <= grids.fig3_n_max; ++n) {
      ChainParams params(n, d, grids.fig3_gamma, 1);
      const double fd = fs_prefactor_discrete(params, 1);
      const double fa = fs_prefactor_analytic(params, 1);
      const double gd = gamma_fs_discrete(params, 1);
      const double ga = gamma_fs_analytic(params, 1);
      rows.push_back({std::to_string(n), format_double(d),
                      format_double(grids.fig3_gamma), "1",
                      (n + 1) % 2 == 0 ? "even" : "odd", format_double(fd),
                      format_double(fa), format_double(gd), format_double(ga)});
      f_disc.points.emplace_back(n, fd);
      f_ana.points.emplace_back(n, fa);
      g_disc.points.emplace_back(n, gd);
      g_ana.points.emplace_back(n, ga);
    }
    const char suffix = static_cast<char>('a' + p);
    const auto csv = outdir / ("fig3" + std::string(1, suffix) + ".csv");
    write_csv(csv, fig3_csv_header, rows);
    out.files.push_back(csv);

    f_disc.label = "F discrete";
    f_disc.color = detail::palette(0);
    f_disc.markers = true;
    f_ana.label = "F analytic";
    f_ana.color = detail::palette(1);
    SvgPlotSpec fspec;
    fspec.title = "Free-space prefactor, d=" + format_double(d);
    fspec.x_label = "N";
    fspec.y_label = "F_{N+1}";
    const auto fsvg = outdir / ("fig3" + std::string(1, suffix) + ".svg");
    write_svg_plot(fsvg, fspec, {f_ana, f_disc});
    out.files.push_back(fsvg);

    g_disc.label = "Gamma_fs discrete";
    g_disc.color = detail::palette(0);
    g_disc.markers = true;
    g_ana.label = "Gamma_fs analytic";
    g_ana.color = detail::palette(1);
    SvgPlotSpec gspec;
    gspec.title = "Free-space linewidth, d=" + format_double(d);
    gspec.x_label = "N";
    gspec.y_label = "Gamma_fs / Gamma";
    gspec.log_y = true;
    const char gsuffix = static_cast<char>('d' + p);
    const auto gsvg = outdir / ("fig3" + std::string(1, gsuffix) + ".svg");
    const auto gcsv = outdir / ("fig3" + std::string(1, gsuffix) + ".csv");
    write_csv(gcsv, fig3_csv_header, rows);
    write_svg_plot(gsvg, gspec, {g_ana, g_disc});
    out.files.push_back(gcsv);
    out.files.push_back(gsvg);
  }
  return out;
}

/// fig4: nonideal linewidth decomposition vs N at deep-subwavelength
/// spacing, with the parity-resolved even-odd oscillation.
inline FigureOutput reproduce_fig4(const std::filesystem::path& outdir,
                                   const FigureGrids& grids = {}) {
  FigureOutput out;
  SweepSpec sweep;
  for (int n = grids.fig4_n_min; n <= grids.fig4_n_max; ++n) sweep.n_list.push_back(n);
  sweep.d_list = {grids.fig4_d};
  sweep.gamma_list = {grids.fig4_gamma};
  sweep.xi_list = {1, 3};
  sweep.workers = grids.workers;
  const auto records = run_sweep(sweep);

  for (int xi : {1, 3}) {
    const auto rows = detail::filter_records(records, xi);
    const char suffix = (xi == 1) ? 'a' : 'b';
    const auto csv = outdir / ("fig4" + std::string(1, suffix) + ".csv");
    write_records_csv(csv, rows);
    out.files.push_back(csv);

    SvgPlotSpec spec;
    spec.title = "Nonideal linewidth decomposition, xi=" + std::to_string(xi);
    spec.x_label = "N";
    spec.y_label = "Gamma / Gamma";
    spec.log_y = true;
    std::vector<SvgSeries> series;
    series.push_back(detail::series_from(
        rows, [](const ComparisonRecord& r) { return double(r.n); },
        [](const ComparisonRecord& r) { return r.gamma_ana_1d; }, "guided analytic",
        detail::palette(0), false));
    series.push_back(detail::series_from(
        rows, [](const ComparisonRecord& r) { return double(r.n); },
        [](const ComparisonRecord& r) { return r.gamma_ana_fs; }, "free-space analytic",
        detail::palette(4), false));
    series.push_back(detail::series_from(
        rows, [](const ComparisonRecord& r) { return double(r.n); },
        [](const ComparisonRecord& r) { return r.gamma_ana_total; }, "total analytic",
        detail::palette(2), false));
    series.push_back(detail::series_from(
        rows, [](const ComparisonRecord& r) { return double(r.n); },
        [](const ComparisonRecord& r) { return r.gamma_num; }, "numeric",
        detail::palette(1), true));
    const auto svg = outdir / ("fig4" + std::string(1, suffix) + ".svg");
    write_svg_plot(svg, spec, series);
    out.files.push_back(svg);
  }
  return out;
}

inline constexpr const char* fig5c_csv_header =
    "N,d_over_lambda,gamma_over_Gamma,xi,J_num,J_infty,dev_num,dev_ana";

/// fig5: shift vs N, shift vs spacing against J_infty, and the log-log
/// finite-size deviation with its fitted slope.
inline FigureOutput reproduce_fig5(const std::filesystem::path& outdir,
                                   const FigureGrids& grids = {}) {
  FigureOutput out;

  SweepSpec a;
  a.n_list = grids.fig5a_n;
  a.d_list = {grids.fig5_d};
  a.gamma_list = {grids.fig5_gamma};
  a.xi_list = {1, 3};
  a.workers = grids.workers;
  const auto arecords = run_sweep(a);
  const auto acsv = outdir / "fig5a.csv";
  write_records_csv(acsv, arecords);
  out.files.push_back(acsv);
  {
    SvgPlotSpec spec;
    spec.title = "Collective shift vs N, d=" + format_double(grids.fig5_d);
    spec.x_label = "N";
    spec.y_label = "J / Gamma";
    std::vector<SvgSeries> series;
    int color = 0;
    for (int xi : {1, 3}) {
      const auto rows = detail::filter_records(arecords, xi);
      series.push_back(detail::series_from(
          rows, [](const ComparisonRecord& r) { return double(r.n); },
          [](const ComparisonRecord& r) { return r.j_ana_total; },
          "xi=" + std::to_string(xi) + " analytic", detail::palette(color), false));
      series.push_back(detail::series_from(
          rows, [](const ComparisonRecord& r) { return double(r.n); },
          [](const ComparisonRecord& r) { return r.j_num; },
          "xi=" + std::to_string(xi) + " numeric", detail::palette(color), true));
      ++color;
    }
    const auto svg = outdir / "fig5a.svg";
    write_svg_plot(svg, spec, series);
    out.files.push_back(svg);
  }

  SweepSpec b;
  b.n_list = {grids.fig5b_n};
  b.d_list = grids.fig5b_d;
  b.gamma_list = {grids.fig5_gamma};
  b.xi_list = {1, 3};
  b.workers = grids.workers;
  const auto brecords = run_sweep(b);
  const auto bcsv = outdir / "fig5b.csv";
  write_records_csv(bcsv, brecords);
  out.files.push_back(bcsv);
  {
    SvgPlotSpec spec;
    spec.title = "Collective shift vs spacing, N=" + std::to_string(grids.fig5b_n);
    spec.x_label = "k0 d / pi";
    spec.y_label = "J / Gamma";
    std::vector<SvgSeries> series;
    series.push_back(detail::series_from(
        detail::filter_records(brecords, 1),
        [](const ComparisonRecord& r) { return 2.0 * r.d_over_lambda; },
        [](const ComparisonRecord& r) { return r.j_infty; }, "J_infty",
        detail::palette(3), false));
    int color = 0;
    for (int xi : {1, 3}) {
      series.push_back(detail::series_from(
          detail::filter_records(brecords, xi),
          [](const ComparisonRecord& r) { return 2.0 * r.d_over_lambda; },
          [](const ComparisonRecord& r) { return r.j_num; },
          "xi=" + std::to_string(xi) + " numeric", detail::palette(color++), true));
    }
    const auto svg = outdir / "fig5b.svg";
    write_svg_plot(svg, spec, series);
    out.files.push_back(svg);
  }

  SweepSpec c;
  c.n_list = grids.fig5c_n;
  c.d_list = {grids.fig5_d};
  c.gamma_list = {grids.fig5_gamma};
  c.xi_list = {1, 3};
  c.workers = grids.workers;
  const auto crecords = run_sweep(c);
  std::vector<std::vector<std::string>> crows;
  std::vector<SvgSeries> cseries;
  int color = 0;
  for (int xi : {1, 3}) {
    SvgSeries dev_num, dev_ana;
    dev_num.label = "xi=" + std::to_string(xi) + " numeric";
    dev_num.color = detail::palette(color);
    dev_num.markers = true;
    dev_ana.label = "xi=" + std::to_string(xi) + " analytic";
    dev_ana.color = detail::palette(color);
    ++color;
    std::vector<std::pair<double, double>> points;
    for (const auto& r : detail::filter_records(crecords, xi)) {
      const double dn = r.j_num - r.j_infty;
      const double da = r.j_ana_total - r.j_infty;
      crows.push_back({std::to_string(r.n), format_double(r.d_over_lambda),
                       format_double(r.gamma_over_gamma), std::to_string(r.xi),
                       format_double(r.j_num), format_double(r.j_infty),
                       format_double(dn), format_double(da)});
      dev_num.points.emplace_back(r.n, dn);
      dev_ana.points.emplace_back(r.n, da);
      points.emplace_back(double(r.n), dn);
    }
    cseries.push_back(std::move(dev_ana));
    cseries.push_back(std::move(dev_num));
    try {
      const PowerLawFit fit = fit_power_law(points, points.front().first,
                                            points.back().first);
      out.notes.push_back("fig5c xi=" + std::to_string(xi) +
                          " slope=" + format_double(fit.slope) +
                          " r2=" + format_double(fit.r_squared));
    } catch (const std::exception& e) {
      out.notes.push_back("fig5c xi=" + std::to_string(xi) + " fit failed: " + e.what());
    }
  }
  const auto ccsv = outdir / "fig5c.csv";
  write_csv(ccsv, fig5c_csv_header, crows);
  out.files.push_back(ccsv);
  SvgPlotSpec cspec;
  cspec.title = "Finite-size shift deviation";
  cspec.x_label = "N";
  cspec.y_label = "(J - J_infty) / Gamma";
  cspec.log_x = true;
  cspec.log_y = true;
  const auto csvg = outdir / "fig5c.svg";
  write_svg_plot(csvg, cspec, cseries);
  out.files.push_back(csvg);
  return out;
}

/// Dispatch by figure id ("fig2".."fig5").
inline FigureOutput reproduce_figure(const std::string& id,
                                     const std::filesystem::path& outdir,
                                     const FigureGrids& grids = {}) {
  if (id == "fig2") return reproduce_fig2(outdir, grids);
  if (id == "fig3") return reproduce_fig3(outdir, grids);
  if (id == "fig4") return reproduce_fig4(outdir, grids);
  if (id == "fig5") return reproduce_fig5(outdir, grids);
  throw std::invalid_argument("reproduce_figure: unknown id '" + id +
                              "' (expected fig2|fig3|fig4|fig5)");
}

}  // namespace subradiance
