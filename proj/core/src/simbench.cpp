#include "pcamix/simbench.hpp"

#include "pcamix/error.hpp"
#include "pcamix/format.hpp"
#include "pcamix/kiers.hpp"
#include "pcamix/pcamix.hpp"
#include "pcamix/recode.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <new>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pcamix::sim {

MixedTable simulate(const SimConfig& config) {
  const Index n = config.n;
  const Index p = config.p;
  if (p < 2 || p % 2 != 0) throw Error(ErrorCode::InvalidArgument, "p must be even and positive");
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "n must be at least 4");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.2, 0.4);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix Q(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) Q(i, j) = uniform(rng);

  // Rows x' = (Q' e)' = e' Q with e ~ N(0, I) have covariance Q'Q.
  Matrix E(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) E(i, j) = normal(rng);
  const Matrix data = E * Q;

  static const char* const kTerciles[] = {"low", "mid", "high"};
  std::vector<Column> columns;
  const Index half = p / 2;
  for (Index j = 0; j < half; ++j) {
    std::vector<double> v(data.col(j).data(), data.col(j).data() + n);
    columns.push_back(Column::quantitative("num" + std::to_string(j + 1), std::move(v)));
  }
  for (Index j = half; j < p; ++j) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return data(a, j) < data(b, j); });
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    for (Index rank = 0; rank < n; ++rank)
      labels[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] =
          kTerciles[(3 * rank) / n];
    columns.push_back(Column::qualitative("cat" + std::to_string(j - half + 1), std::move(labels)));
  }
  return MixedTable(std::move(columns));
}

std::uint64_t cell_seed(std::uint64_t base, Index n, Index p, Index rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(p),
                    static_cast<std::uint32_t>(rep)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::optional<double> BenchCell::ratio() const {
  if (!svd_median || !reformulation_median || *svd_median <= 0.0) return std::nullopt;
  return *reformulation_median / *svd_median;
}

const BenchCell& BenchReport::cell(Index n, Index p) const {
  for (const auto& c : cells)
    if (c.n == n && c.p == p) return c;
  throw std::out_of_range("no benchmark cell for n=" + std::to_string(n) +
                          ", p=" + std::to_string(p));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BenchReport bench(const BenchOptions& options) {
  if (options.reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be at least 1");
  if (options.ns.empty() || options.ps.empty())
    throw Error(ErrorCode::InvalidArgument, "benchmark grid is empty");

  BenchReport report;
  report.ns = options.ns;
  report.ps = options.ps;
  report.reps = options.reps;
  report.seed = options.seed;

  for (Index n : options.ns) {
    for (Index p : options.ps) {
      BenchCell cell;
      cell.n = n;
      cell.p = p;
      const bool fits_memory = kiers::quantification_bytes(n, p) <= options.max_quantification_bytes;
      if (!fits_memory) cell.reformulation_error = "error: quantification matrices exceed memory limit";

      std::vector<double> svd_times;
      std::vector<double> ref_times;
      for (Index rep = 0; rep < options.reps; ++rep) {
        const MixedTable table =
            simulate({n, p, cell_seed(options.seed, n, p, rep), options.reps});

        Matrix svd_c;
        try {
          const auto start = Clock::now();
          const PcamixModel model = fit(recode(table), options.k);
          const RotationResult rot = rotate(model, options.rotation);
          svd_times.push_back(seconds_since(start));
          svd_c = rot.C_rot;
        } catch (const Error& e) {
          cell.svd_error = std::string("error: ") + e.what();
          break;
        }

        if (!cell.reformulation_error.empty()) continue;
        try {
          const auto start = Clock::now();
          const auto qs = kiers::build_quantification(table);
          const auto original = kiers::fit_original(qs, options.k);
          const auto rot = kiers::rotate_reformulation(qs, original, options.rotation);
          ref_times.push_back(seconds_since(start));
          const double gap = (rot.C_rot - svd_c).cwiseAbs().maxCoeff();
          cell.max_discrepancy = std::max(cell.max_discrepancy, gap);
          if (!(gap <= options.agreement_tol)) {
            std::ostringstream msg;
            msg << "rotation paths disagree at n=" << n << ", p=" << p << ", rep=" << rep
                << ": max |dC| = " << gap;
            throw std::runtime_error(msg.str());
          }
        } catch (const std::bad_alloc&) {
          cell.reformulation_error = "error: allocation failure";
        } catch (const Error& e) {
          cell.reformulation_error = std::string("error: ") + e.what();
        }
      }
      if (cell.svd_error.empty()) cell.svd_median = median(svd_times);
      if (cell.reformulation_error.empty()) cell.reformulation_median = median(ref_times);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

namespace {

std::string cell_text(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string("error");
}

}  // namespace

void write_median_csv(const BenchReport& report, std::ostream& out) {
  out << "n,method";
  for (Index p : report.ps) out << ",p=" << p;
  out << '\n';
  for (Index n : report.ns) {
    out << n << ",reformulation";
    for (Index p : report.ps) out << ',' << cell_text(report.cell(n, p).reformulation_median);
    out << '\n' << n << ",svd";
    for (Index p : report.ps) out << ',' << cell_text(report.cell(n, p).svd_median);
    out << '\n';
  }
}

void write_ratio_csv(const BenchReport& report, std::ostream& out) {
  out << "n";
  for (Index p : report.ps) out << ",p=" << p;
  out << '\n';
  for (Index n : report.ns) {
    out << n;
    for (Index p : report.ps) out << ',' << cell_text(report.cell(n, p).ratio());
    out << '\n';
  }
}

void write_text_report(const BenchReport& report, std::ostream& out) {
  auto fixed = [](const std::optional<double>& v, int digits) {
    if (!v) return std::string("error");
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << *v;
    return s.str();
  };

  out << "Median computation time (seconds) over " << report.reps << " replications, k = 2\n";
  out << std::left << std::setw(8) << "n" << std::setw(16) << "method";
  for (Index p : report.ps) out << std::right << std::setw(12) << ("p=" + std::to_string(p));
  out << '\n';
  for (Index n : report.ns) {
    for (const char* method : {"reformulation", "svd"}) {
      out << std::left << std::setw(8) << n << std::setw(16) << method;
      for (Index p : report.ps) {
        const auto& c = report.cell(n, p);
        const auto& v = std::string_view(method) == "svd" ? c.svd_median : c.reformulation_median;
        out << std::right << std::setw(12) << fixed(v, 5);
      }
      out << '\n';
    }
  }

  out << "\nRatio of medians (reformulation / svd)\n";
  out << std::left << std::setw(8) << "n";
  for (Index p : report.ps) out << std::right << std::setw(12) << ("p=" + std::to_string(p));
  out << '\n';
  for (Index n : report.ns) {
    out << std::left << std::setw(8) << n;
    for (Index p : report.ps) out << std::right << std::setw(12) << fixed(report.cell(n, p).ratio(), 1);
    out << '\n';
  }
  out << "\ngenerator " << report.generator << ", seed " << report.seed << '\n';
}

}  // namespace pcamix::sim
