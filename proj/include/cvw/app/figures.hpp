#pragma once

// Figure datasets: each figure is one or more sweeps written as CSV, plus a
// matplotlib stub that plots them.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvw/app/sweep.hpp"

namespace cvw::app {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FigurePart {
  std::string stem;  // file name without extension
  SweepSpec spec;
  std::string x;                   // CSV column on the horizontal axis
  std::vector<std::string> y;      // CSV columns plotted
  std::string series;              // column separating curves, may be empty
};

struct Figure {
  std::string name;
  std::string title;
  std::vector<FigurePart> parts;
};

namespace detail {

inline SweepSpec sweep(const std::string& measure, std::vector<double> p, std::vector<double> lambda,
                       std::vector<double> mu = {0.0}) {
  SweepSpec s;
  s.measure = measure;
  s.p = std::move(p);
  s.lambda = std::move(lambda);
  s.mu = std::move(mu);
  return s;
}

}  // namespace detail

inline const std::vector<Figure>& figures() {
  static const std::vector<Figure> table = [] {
    const double mu = 0.8;
    const double mu4 = round12(std::pow(mu, 4));
    std::vector<Figure> f;
    f.push_back({"fig-surface",
                 "discord of the mu=0 Werner state over (p, lambda)",
                 {{"fig-surface", detail::sweep("discord0", parse_range("0:1:0.02"), parse_range("0:0.98:0.02")),
                   "p", {"discord[nats]"}, "lambda"}}});
    f.push_back({"fig-gaussian",
                 "Gaussian and exact discord versus p",
                 {{"fig-gaussian", detail::sweep("gaussian-discord", parse_range("0:1:0.05"), {0.1, 0.5, 0.9}), "p",
                   {"gaussian_discord[nats]", "discord[nats]"}, "lambda"}}});
    f.push_back({"fig-gap",
                 "normalized discord gap and non-Gaussianity",
                 {{"fig-gap-p", detail::sweep("gap", parse_range("0:1:0.05"), {0.2, 0.8}), "p",
                   {"gap_normalized[nats]", "delta0[nats]"}, "lambda"},
                  {"fig-gap-lambda", detail::sweep("gap", {0.5}, parse_range("0.05:0.95:0.05")), "lambda",
                   {"gap_normalized[nats]", "delta0[nats]"}, ""}}});
    f.push_back({"fig-bounds-eq",
                 "discord bounds for lambda = mu = 0.8",
                 {{"fig-bounds-eq", detail::sweep("bounds", parse_range("0:1:0.01"), {0.8}, {0.8}), "p",
                   {"U[nats]", "L_clipped[nats]"}, ""}}});
    f.push_back({"fig-bounds-mu4",
                 "discord bounds for lambda = mu^4, mu = 0.8",
                 {{"fig-bounds-mu4", detail::sweep("bounds", parse_range("0:1:0.01"), {mu4}, {mu}), "p",
                   {"U[nats]", "L_clipped[nats]"}, ""},
                  {"fig-bounds-mu4-regions", detail::sweep("region", {0.0}, {0.0}, {mu}), "mu", {"p_sep", "p_ppt"},
                   ""}}});
    f.push_back({"fig-ppt",
                 "bounds for the partially transposed Werner state",
                 {{"fig-ppt", detail::sweep("ppt-bounds", {0.0}, parse_range("0:0.99:0.01")), "lambda",
                   {"U[nats]", "L_clipped[nats]"}, ""}}});
    return f;
  }();
  return table;
}

inline const Figure& find_figure(const std::string& name) {
  for (const auto& f : figures())
    if (f.name == name) return f;
  throw unknown_measure("unknown figure '" + name + "'");
}

inline std::string plot_stub(const Figure& fig) {
  std::string s = "# Plot stub for " + fig.name + ": " + fig.title + "\n";
  s += "import csv\nimport matplotlib.pyplot as plt\n\n";
  s += "def load(path):\n    with open(path, newline='') as fh:\n        return list(csv.DictReader(fh))\n\n";
  s += "fig, axes = plt.subplots(1, " + std::to_string(fig.parts.size()) + ", squeeze=False)\n";
  for (std::size_t i = 0; i < fig.parts.size(); ++i) {
    const auto& part = fig.parts[i];
    s += "rows = [r for r in load('" + part.stem + ".csv') if not r['error']]\n";
    s += "ax = axes[0][" + std::to_string(i) + "]\n";
    s += "groups = {}\n";
    s += "for r in rows:\n    groups.setdefault(" + (part.series.empty() ? std::string("''") : "r['" + part.series + "']") +
         ", []).append(r)\n";
    s += "for key, g in groups.items():\n";
    for (const auto& y : part.y)
      s += "    ax.plot([float(r['" + part.x + "']) for r in g], [float(r['" + y + "']) for r in g], label='" + y +
           "' + (' ' + key if key else ''))\n";
    s += "ax.set_xlabel('" + part.x + "')\nax.legend()\n";
  }
  s += "plt.tight_layout()\nplt.savefig('" + fig.name + ".png')\n";
  return s;
}

struct FigureOutput {
  std::vector<std::filesystem::path> files;
  std::size_t failed_rows = 0;
};

/// Runs the figure's sweeps and writes <stem>.csv per part plus
/// <name>.py into outdir.
inline FigureOutput write_figure(const std::string& name, const std::filesystem::path& outdir,
                                 const PointParams& base = {}, std::size_t threads = 0) {
  const auto& fig = find_figure(name);
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw io_error("cannot create " + outdir.string() + ": " + ec.message());
  FigureOutput out;
  auto open = [&](const std::filesystem::path& path) {
    std::ofstream fh(path);
    if (!fh) throw io_error("cannot write " + path.string());
    out.files.push_back(path);
    return fh;
  };
  for (const auto& part : fig.parts) {
    auto spec = part.spec;
    spec.base = base;
    spec.threads = threads;
    const auto table = run_sweep(spec);
    out.failed_rows += table.failures();
    auto fh = open(outdir / (part.stem + ".csv"));
    write_csv(fh, table);
    if (!fh) throw io_error("write failed for " + part.stem + ".csv");
  }
  auto py = open(outdir / (fig.name + ".py"));
  py << plot_stub(fig);
  if (!py) throw io_error("write failed for " + fig.name + ".py");
  return out;
}

}  // namespace cvw::app
