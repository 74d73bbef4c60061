#include "commands.hpp"

#include "csv.hpp"

#include "pcamix/error.hpp"
#include "pcamix/format.hpp"
#include "pcamix/pcamix.hpp"
#include "pcamix/recode.hpp"
#include "pcamix/simbench.hpp"
#include "pcamix/varimax.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pcamix::cli {

namespace {

/// Problems with the input files themselves; mapped to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::vector<std::string> dim_header(std::string first, Index k) {
  std::vector<std::string> h{std::move(first)};
  for (Index l = 1; l <= k; ++l) h.push_back("dim" + std::to_string(l));
  return h;
}

struct Labels {
  std::vector<std::vector<std::string>> observations;
  std::vector<std::vector<std::string>> quantitative;
  std::vector<std::vector<std::string>> categories;
  std::vector<std::vector<std::string>> variables;
};

Labels make_labels(const PcamixModel& model) {
  Labels l;
  for (Index i = 1; i <= model.n; ++i) l.observations.push_back({std::to_string(i)});
  for (const auto& v : model.variables) {
    l.variables.push_back({v.name});
    if (v.kind == VariableKind::Quantitative) l.quantitative.push_back({v.name});
  }
  for (const auto& block : model.categories.blocks)
    for (const auto& label : block.labels) l.categories.push_back({block.variable, label});
  return l;
}

void write_variances(const std::filesystem::path& path, const std::string& value_name,
                     const Vector& variances, double total) {
  auto out = open_output(path);
  out << "dim," << value_name << ",proportion,cumulative\n";
  double cumulative = 0.0;
  for (Index l = 0; l < variances.size(); ++l) {
    const double share = variances(l) / total;
    cumulative += share;
    out << (l + 1) << ',' << format_number(variances(l)) << ',' << format_number(share) << ','
        << format_number(cumulative) << '\n';
  }
}

void write_model_files(const std::filesystem::path& dir, const std::string& suffix,
                       const Labels& labels, Index k, const Matrix& X, const Matrix& A1,
                       const Matrix& categories, const Matrix& C) {
  auto scores = open_output(dir / ("scores" + suffix + ".csv"));
  write_matrix_csv(scores, dim_header("obs", k), labels.observations, X);

  auto quant = open_output(dir / ("loadings_quant" + suffix + ".csv"));
  write_matrix_csv(quant, dim_header("variable", k), labels.quantitative, A1);

  auto cats = open_output(dir / ("categories" + suffix + ".csv"));
  auto cat_header = dim_header("variable", k);
  cat_header.insert(cat_header.begin() + 1, "category");
  write_matrix_csv(cats, cat_header, labels.categories, categories);

  auto sq = open_output(dir / ("squared_loadings" + suffix + ".csv"));
  write_matrix_csv(sq, dim_header("variable", k), labels.variables, C);
}

PcamixModel load_and_fit(const RunConfig& config) {
  if (config.k < 1) throw Error(ErrorCode::InvalidArgument, "--k must be at least 1");
  if (!(config.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");

  std::vector<std::string> qualitative = config.qualitative;
  if (config.types) {
    const auto listed = read_types_file(*config.types);
    qualitative.insert(qualitative.end(), listed.begin(), listed.end());
  }
  const MixedTable table = load_table(config.input, qualitative);
  return fit(recode(table), config.k);
}

void write_fit(const RunConfig& config, const PcamixModel& model, const Labels& labels) {
  write_model_files(config.out, "", labels, model.k, model.X, model.A1(), model.category_coords,
                    model.C);
  write_variances(config.out / "eigenvalues.csv", "eigenvalue", variance_explained(model),
                  model.total_inertia);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "pcamix: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitParameter;
  } catch (const InputError& e) {
    err << "pcamix: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "pcamix: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::runtime_error& e) {
    err << "pcamix: " << e.what() << '\n';
    return kExitInput;
  }
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<std::string> read_types_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open types file " + path.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    names.push_back(line);
  }
  return names;
}

MixedTable load_table(const std::filesystem::path& input,
                      const std::vector<std::string>& qualitative) {
  CsvDocument doc;
  try {
    doc = read_csv(input);
  } catch (const std::runtime_error& e) {
    throw InputError(input.string() + ": " + e.what());
  }

  std::set<std::string> declared(qualitative.begin(), qualitative.end());
  for (const auto& name : declared)
    if (std::find(doc.header.begin(), doc.header.end(), name) == doc.header.end())
      throw InputError("column '" + name + "' declared qualitative but not present in " +
                       input.string());

  std::vector<Column> columns;
  for (std::size_t j = 0; j < doc.header.size(); ++j) {
    const std::string& name = doc.header[j];
    std::vector<std::string> cells;
    cells.reserve(doc.rows.size());
    for (const auto& row : doc.rows) {
      std::string cell = trim(row[j]);
      if (cell.empty())
        throw Error(ErrorCode::MissingValue, "empty cell on data row " +
                                                 std::to_string(cells.size() + 1), name);
      cells.push_back(std::move(cell));
    }

    std::vector<double> numbers;
    bool numeric = !declared.count(name);
    for (const auto& cell : cells) {
      if (!numeric) break;
      const auto value = parse_number(cell);
      if (!value) {
        numeric = false;
        break;
      }
      if (std::isnan(*value)) throw Error(ErrorCode::MissingValue, "NaN cell", name);
      numbers.push_back(*value);
    }
    if (numeric)
      columns.push_back(Column::quantitative(name, std::move(numbers)));
    else
      columns.push_back(Column::qualitative(name, std::move(cells)));
  }
  return MixedTable(std::move(columns));
}

std::pair<std::vector<Index>, std::vector<Index>> parse_grid(const std::string& grid) {
  const auto slash = grid.find('/');
  if (slash == std::string::npos || grid.find('/', slash + 1) != std::string::npos)
    throw std::invalid_argument("grid must look like n1,n2,.../p1,p2,...: '" + grid + "'");

  auto parse_list = [&](const std::string& text, const char* what) {
    std::vector<Index> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      Index v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || v <= 0)
        throw std::invalid_argument(std::string("bad ") + what + " value '" + item + "' in grid");
      values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument(std::string("grid has no ") + what + " values");
    return values;
  };

  auto ns = parse_list(grid.substr(0, slash), "n");
  auto ps = parse_list(grid.substr(slash + 1), "p");
  for (Index n : ns)
    if (n < 4) throw std::invalid_argument("grid n values must be at least 4");
  for (Index p : ps)
    if (p % 2 != 0) throw std::invalid_argument("grid p values must be even");
  return {ns, ps};
}

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PcamixModel model = load_and_fit(config);
    ensure_directory(config.out);
    write_fit(config, model, make_labels(model));
    out << "fit: n=" << model.n << " p1=" << model.p1 << " p2=" << model.p2
        << " m=" << model.categories.size() << " k=" << model.k << " rank=" << model.rank << '\n';
    return kExitOk;
  });
}

int cmd_rotate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.k < 2) throw Error(ErrorCode::KTooSmall, "rotation needs --k of at least 2");
    if (config.max_sweeps < 1)
      throw Error(ErrorCode::InvalidArgument, "--max-sweeps must be at least 1");
    const PcamixModel model = load_and_fit(config);
    const RotationResult rot = rotate(model, {config.tol, config.max_sweeps});

    ensure_directory(config.out);
    const Labels labels = make_labels(model);
    write_fit(config, model, labels);
    write_model_files(config.out, "_rot", labels, model.k, rot.X_rot, rot.A1_rot(model.p1),
                      rot.category_coords_rot, rot.C_rot);
    write_variances(config.out / "eigenvalues_rot.csv", "variance", rot.variance_rot,
                    model.total_inertia);

    auto tmat = open_output(config.out / "rotation_matrix.csv");
    std::vector<std::vector<std::string>> dims;
    for (Index l = 1; l <= model.k; ++l) dims.push_back({"dim" + std::to_string(l)});
    write_matrix_csv(tmat, dim_header("dim", model.k), dims, rot.T);

    auto trace = open_output(config.out / "sweep_trace.csv");
    trace << "sweep,first,second,theta,objective\n";
    for (const auto& step : rot.trace)
      trace << step.sweep << ',' << (step.first + 1) << ',' << (step.second + 1) << ','
            << format_number(step.theta) << ',' << format_number(step.objective) << '\n';
    trace << "# converged=" << (rot.converged ? "true" : "false") << " sweeps=" << rot.sweeps
          << " initial_objective=" << format_number(rot.initial_objective) << '\n';

    out << "rotate: k=" << model.k << " sweeps=" << rot.sweeps
        << " converged=" << (rot.converged ? "true" : "false")
        << " objective " << format_number(rot.initial_objective) << " -> "
        << format_number(rot.final_objective) << '\n';
    return kExitOk;
  });
}

int cmd_simulate(const SimulateConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MixedTable table = sim::simulate({config.n, config.p, config.seed, 1});
    ensure_directory(config.out);
    const auto path = config.out / "simulated.csv";
    auto file = open_output(path);
    for (std::size_t j = 0; j < table.cols(); ++j)
      file << (j ? "," : "") << csv_field(table.column(j).name);
    file << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
      for (std::size_t j = 0; j < table.cols(); ++j) {
        const auto& c = table.column(j);
        file << (j ? "," : "")
             << (c.is_quantitative() ? format_number(c.values()[i]) : csv_field(c.labels()[i]));
      }
      file << '\n';
    }
    out << "simulate: wrote " << path.string() << " (n=" << config.n << ", p=" << config.p
        << ", generator " << sim::kGenerator << ", seed " << config.seed << ")\n";
    return kExitOk;
  });
}

int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    sim::BenchOptions options;
    if (config.paper_grid) {
      options.ns = {50, 100, 200, 400, 800};
      options.ps = {10, 50, 100, 200};
    } else {
      std::tie(options.ns, options.ps) = parse_grid(config.grid);
    }
    if (config.reps < 1) throw std::invalid_argument("--reps must be at least 1");
    options.reps = config.reps;
    options.seed = config.seed;
    options.max_quantification_bytes = config.max_oracle_mb << 20;

    const sim::BenchReport report = sim::bench(options);
    ensure_directory(config.out);
    auto medians = open_output(config.out / "bench_median.csv");
    sim::write_median_csv(report, medians);
    auto ratios = open_output(config.out / "bench_ratio.csv");
    sim::write_ratio_csv(report, ratios);
    sim::write_text_report(report, out);
    return kExitOk;
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PCAMIX for mixed quantitative/qualitative data with varimax rotation"};
  app.require_subcommand(1);

  RunConfig fit_cfg;
  RunConfig rot_cfg;
  auto add_run_options = [](CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--input", cfg.input, "CSV file with a header row")->required();
    sub->add_option("--types", cfg.types, "file listing qualitative column names, one per line");
    sub->add_option("--qual", cfg.qualitative, "qualitative column names")->delimiter(',');
    sub->add_option("--k", cfg.k, "number of dimensions")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "rotation angle tolerance (radians)")->capture_default_str();
    sub->add_option("--max-sweeps", cfg.max_sweeps, "maximum rotation sweeps")->capture_default_str();
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
  };
  auto* fit_cmd = app.add_subcommand("fit", "fit PCAMIX and export scores, loadings and coordinates");
  add_run_options(fit_cmd, fit_cfg);
  auto* rot_cmd = app.add_subcommand("rotate", "fit, then varimax-rotate and export both solutions");
  add_run_options(rot_cmd, rot_cfg);

  SimulateConfig sim_cfg;
  auto* sim_cmd = app.add_subcommand("simulate", "draw a synthetic mixed data set");
  sim_cmd->add_option("--n", sim_cfg.n, "observations")->capture_default_str();
  sim_cmd->add_option("--p", sim_cfg.p, "variables (even; half qualitative)")->capture_default_str();
  sim_cmd->add_option("--seed", sim_cfg.seed, "random seed")->capture_default_str();
  sim_cmd->add_option("--out", sim_cfg.out, "output directory")->capture_default_str();

  BenchConfig bench_cfg;
  auto* bench_cmd = app.add_subcommand("bench", "time the SVD and reformulation rotation paths");
  bench_cmd->add_option("--grid", bench_cfg.grid, "n1,n2,.../p1,p2,...")->capture_default_str();
  bench_cmd->add_flag("--paper-grid", bench_cfg.paper_grid,
                      "use n in {50..800} and p in {10..200}; needs several GiB of memory");
  bench_cmd->add_option("--reps", bench_cfg.reps, "replications per cell")->capture_default_str();
  bench_cmd->add_option("--seed", bench_cfg.seed, "random seed")->capture_default_str();
  bench_cmd->add_option("--max-oracle-mb", bench_cfg.max_oracle_mb,
                        "memory limit for the quantification matrices")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_cfg.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pcamix: " << e.what() << '\n';
    return kExitParameter;
  }

  if (fit_cmd->parsed()) return cmd_fit(fit_cfg, out, err);
  if (rot_cmd->parsed()) return cmd_rotate(rot_cfg, out, err);
  if (sim_cmd->parsed()) return cmd_simulate(sim_cfg, out, err);
  return cmd_bench(bench_cfg, out, err);
}

}  // namespace pcamix::cli
