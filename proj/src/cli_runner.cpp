#include "qprop/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qprop/canonical.hpp"
#include "qprop/fock_oracle.hpp"
#include "qprop/model.hpp"
#include "qprop/osc_qnd.hpp"
#include "qprop/spin_bath.hpp"
#include "qprop/spin_bose.hpp"

namespace qprop::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
    columns_ = header.size();
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("csv column mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path.string());
    f << out_.str();
  }

 private:
  std::ostringstream out_;
  std::size_t columns_ = 0;
};

cplx parse_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(what) + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

CoherentVector parse_labels(const json& j, const char* what) {
  CoherentVector v;
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  for (const auto& e : j) v.push_back(parse_complex(e, what));
  return v;
}

struct Config {
  std::string task;
  std::string model;
  SystemSpec system;
  BathSpec bath;
  CoherentVector alpha_star, alpha_prime, bath_initial;
  cplx nu_star{0.0}, nu_prime{0.0};
  int sector = 1;
  std::vector<double> times;
  TruncationSpec trunc;
  std::vector<double> frequencies;  // equivalence-check
  std::filesystem::path output_path;
};

Config parse_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }

  Config c;
  try {
    c.task = j.at("task").get<std::string>();
    c.model = j.at("model").get<std::string>();
    if (j.contains("system")) {
      c.system.omega = j["system"].value("omega", 0.0);
      if (j["system"].contains("drive_omega"))
        c.system.drive_omega = j["system"]["drive_omega"].get<double>();
    }
    if (j.contains("bath")) {
      const auto& b = j["bath"];
      const std::string kind = b.value("kind", "oscillator");
      if (kind == "oscillator")
        c.bath.kind = BathKind::Oscillator;
      else if (kind == "spin")
        c.bath.kind = BathKind::Spin;
      else
        throw ConfigError("bath.kind must be 'oscillator' or 'spin'");
      for (const auto& m : b.value("modes", json::array()))
        c.bath.modes.push_back({m.at("omega").get<double>(),
                                m.at("coupling").get<double>()});
    }
    if (j.contains("labels")) {
      const auto& l = j["labels"];
      if (l.contains("alpha_star")) c.alpha_star = parse_labels(l["alpha_star"], "alpha_star");
      if (l.contains("alpha_prime")) c.alpha_prime = parse_labels(l["alpha_prime"], "alpha_prime");
      if (l.contains("bath_initial")) c.bath_initial = parse_labels(l["bath_initial"], "bath_initial");
      if (l.contains("nu_star")) c.nu_star = parse_complex(l["nu_star"], "nu_star");
      if (l.contains("nu_prime")) c.nu_prime = parse_complex(l["nu_prime"], "nu_prime");
      c.sector = l.value("sector", 1);
    }
    if (j.contains("time_grid")) {
      const auto& g = j["time_grid"];
      const double start = g.at("start").get<double>();
      const double stop = g.at("stop").get<double>();
      const int steps = g.at("steps").get<int>();
      if (steps < 1) throw ConfigError("time_grid.steps must be >= 1");
      for (int i = 0; i < steps; ++i)
        c.times.push_back(steps == 1 ? start
                                     : start + (stop - start) * i / (steps - 1));
    }
    if (j.contains("truncation")) {
      const auto& t = j["truncation"];
      c.trunc.fock_cutoff = t.value("fock_cutoff", c.trunc.fock_cutoff);
      c.trunc.series_order = t.value("series_order", c.trunc.series_order);
      c.trunc.quad_points = t.value("quad_points", c.trunc.quad_points);
      c.trunc.tol = t.value("tol", c.trunc.tol);
    }
    if (j.contains("frequencies"))
      for (const auto& w : j["frequencies"]) c.frequencies.push_back(w.get<double>());
    c.output_path = j.at("output").at("path").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return c;
}

std::vector<std::string> complex_cells(cplx z) { return {fmt(z.real()), fmt(z.imag())}; }

void append(std::vector<std::string>& row, const std::vector<std::string>& cells) {
  row.insert(row.end(), cells.begin(), cells.end());
}

ModelKind model_kind(const std::string& name) {
  if (name == "H1") return ModelKind::H1;
  if (name == "H2") return ModelKind::H2;
  if (name == "H3") return ModelKind::H3;
  if (name == "H4") return ModelKind::H4;
  throw ConfigError("unknown model '" + name + "'");
}

CoherentVector default_labels(const CoherentVector& v, std::size_t m) {
  return v.empty() ? CoherentVector(m, cplx(0.0)) : v;
}

// ---- tasks ----

CsvWriter task_propagator(const Config& c, const Model& model) {
  const std::size_t M = model.mode_count();
  const auto as = default_labels(c.alpha_star, M);
  const auto ap = default_labels(c.alpha_prime, M);

  if (c.model == "H1") {
    CsvWriter w({"t", "kernel_re", "kernel_im", "u00_re", "u00_im", "u01_re",
                 "u01_im", "u10_re", "u10_im", "u11_re", "u11_im"});
    for (double t : c.times) {
      auto p = propagator_qnd(model, t, as, ap);
      std::vector<std::string> row{fmt(t)};
      append(row, complex_cells(p.bath_kernel));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) append(row, complex_cells(p.amplitudes(i, j)));
      w.row(row);
    }
    return w;
  }
  if (c.model == "H2") {
    CsvWriter w({"t", "drive_kernel_re", "drive_kernel_im", "kernel_re",
                 "kernel_im", "u00_re", "u00_im", "u01_re", "u01_im", "u10_re",
                 "u10_im", "u11_re", "u11_im"});
    for (double t : c.times) {
      auto p = propagator_driven(model, t, as, ap, c.nu_star, c.nu_prime);
      std::vector<std::string> row{fmt(t)};
      append(row, complex_cells(p.drive_kernel));
      append(row, complex_cells(p.prop.bath_kernel));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) append(row, complex_cells(p.prop.amplitudes(i, j)));
      w.row(row);
    }
    return w;
  }
  if (c.model == "H3") {
    CsvWriter w({"t", "kernel_re", "kernel_im", "u00_re", "u00_im", "u01_re",
                 "u01_im", "u10_re", "u10_im", "u11_re", "u11_im",
                 "error_estimate"});
    for (double t : c.times) {
      auto p = propagator_nonqnd(model, t, as, ap, c.trunc);
      std::vector<std::string> row{fmt(t)};
      append(row, complex_cells(p.prop.bath_kernel));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) append(row, complex_cells(p.prop.amplitudes(i, j)));
      row.push_back(fmt(p.error_estimate));
      w.row(row);
    }
    return w;
  }
  if (c.model == "H4") {
    CsvWriter w({"t", "mode", "system_phase_re", "system_phase_im", "m00_re",
                 "m00_im", "m01_re", "m01_im", "m10_re", "m10_im", "m11_re",
                 "m11_im", "error_estimate"});
    for (double t : c.times) {
      const cplx phase = std::exp(cplx(0.0, 0.5 * model.omega() * c.sector * t));
      for (std::size_t k = 0; k < M; ++k) {
        auto p = mode_propagator_series(model, k, c.sector, t, c.trunc.series_order);
        std::vector<std::string> row{fmt(t), std::to_string(k)};
        append(row, complex_cells(phase));
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) append(row, complex_cells(p.matrix(i, j)));
        row.push_back(fmt(p.error_estimate));
        w.row(row);
      }
    }
    return w;
  }
  throw ConfigError("task 'propagator' needs model H1, H2, H3 or H4");
}

CsvWriter task_dephasing(const Config& c, const Model& model) {
  const auto mu = default_labels(c.bath_initial, model.mode_count());
  CsvWriter w({"t", "r_re", "r_im", "r_abs"});
  for (double t : c.times) {
    const cplx r = dephasing_factor(model, t, mu);
    w.row({fmt(t), fmt(r.real()), fmt(r.imag()), fmt(std::abs(r))});
  }
  return w;
}

CsvWriter task_convergence(const Config& c, const Model& model) {
  const std::size_t M = model.mode_count();
  const auto as = default_labels(c.alpha_star, M);
  const auto ap = default_labels(c.alpha_prime, M);
  if (c.model == "H3") {
    CsvWriter w({"t", "order", "max_abs_deviation", "error_estimate"});
    auto h = build_hamiltonian(ModelKind::H3, model, c.trunc);
    Evolver ev(h);
    for (double t : c.times) {
      auto oracle = bargmann_kernel(ev.unitary(t), as, ap, c.trunc.tol);
      for (int n = 0; n <= c.trunc.series_order; ++n) {
        TruncationSpec tr = c.trunc;
        tr.series_order = n;
        auto p = propagator_nonqnd(model, t, as, ap, tr);
        Matrix2cd closed = p.prop.bath_kernel * p.prop.amplitudes;
        w.row({fmt(t), std::to_string(n),
               fmt((closed - oracle.prop.amplitudes).cwiseAbs().maxCoeff()),
               fmt(p.error_estimate)});
      }
    }
    return w;
  }
  if (c.model == "H4") {
    CsvWriter w({"t", "mode", "order", "max_abs_deviation", "error_estimate"});
    for (double t : c.times)
      for (std::size_t k = 0; k < M; ++k) {
        const Matrix2cd exact = mode_propagator_exact(model, k, c.sector, t);
        for (int n = 0; n <= c.trunc.series_order; ++n) {
          auto p = mode_propagator_series(model, k, c.sector, t, n);
          w.row({fmt(t), std::to_string(k), std::to_string(n),
                 fmt((p.matrix - exact).cwiseAbs().maxCoeff()),
                 fmt(p.error_estimate)});
        }
      }
    return w;
  }
  throw ConfigError("task 'convergence' needs model H3 or H4");
}

struct CompareResult {
  CsvWriter writer;
  bool breached;
};

CompareResult task_oracle_compare(const Config& c, const Model& model, double tol) {
  const std::size_t M = model.mode_count();
  const auto as = default_labels(c.alpha_star, M);
  const auto ap = default_labels(c.alpha_prime, M);
  bool breached = false;

  if (c.model == "H4") {
    CsvWriter w({"t", "sector", "max_abs_deviation", "tol"});
    auto h = build_hamiltonian(ModelKind::H4, model, c.trunc);
    Evolver ev(h);
    const Eigen::Index d = h.bath_dim();
    for (double t : c.times) {
      auto u = ev.unitary(t);
      for (int s : {+1, -1}) {
        const Eigen::Index sys = (s == 1) ? 0 : 1;
        Eigen::MatrixXcd block = u.matrix.block(sys * d, sys * d, d, d);
        auto sb = propagator_spinbath(model, t, s, c.trunc.series_order);
        const double dev = (materialize(sb) - block).cwiseAbs().maxCoeff();
        if (dev > tol) breached = true;
        w.row({fmt(t), std::to_string(s), fmt(dev), fmt(tol)});
      }
    }
    return {std::move(w), breached};
  }

  CsvWriter w({"t", "max_abs_deviation", "tail_bound", "tol"});
  const ModelKind kind = model_kind(c.model);
  auto h = build_hamiltonian(kind, model, c.trunc);
  Evolver ev(h);
  std::vector<cplx> oracle_star = as, oracle_prime = ap;
  if (kind == ModelKind::H2) {
    oracle_star.push_back(c.nu_star);
    oracle_prime.push_back(c.nu_prime);
  }
  for (double t : c.times) {
    auto oracle = bargmann_kernel(ev.unitary(t), oracle_star, oracle_prime, tol);
    Matrix2cd closed;
    if (kind == ModelKind::H1) {
      auto p = propagator_qnd(model, t, as, ap);
      closed = p.bath_kernel * p.amplitudes;
    } else if (kind == ModelKind::H2) {
      auto p = propagator_driven(model, t, as, ap, c.nu_star, c.nu_prime);
      closed = p.drive_kernel * p.prop.bath_kernel * p.prop.amplitudes;
    } else {
      auto p = propagator_nonqnd(model, t, as, ap, c.trunc);
      closed = p.prop.bath_kernel * p.prop.amplitudes;
    }
    const double dev = (closed - oracle.prop.amplitudes).cwiseAbs().maxCoeff();
    if (dev > tol) breached = true;
    w.row({fmt(t), fmt(dev), fmt(oracle.tail_bound), fmt(tol)});
  }
  return {std::move(w), breached};
}

CsvWriter task_equivalence(const Config& c) {
  if (c.frequencies.empty())
    throw ConfigError("equivalence-check requires a 'frequencies' array");
  auto report = verify_equivalence(c.frequencies);
  CsvWriter w({"mode_count", "max_abs_deviation", "symplectic_defect"});
  w.row({std::to_string(c.frequencies.size()), fmt(report.max_abs_deviation),
         fmt(report.symplectic_defect)});
  return w;
}

CsvWriter task_classify(const Config& c, const Model& model) {
  const std::size_t M = model.mode_count();
  if (c.model == "H1") {
    const auto as = default_labels(c.alpha_star, M);
    const auto ap = default_labels(c.alpha_prime, M);
    CsvWriter w({"t", "kind", "param_re", "param_im"});
    for (double t : c.times) {
      auto p = propagator_qnd(model, t, as, ap);
      const Matrix2cd normalized =
          p.amplitudes / std::exp(amplitude_A(model, t));
      auto cls = classify_2x2(normalized);
      const char* kind = cls.kind == TwoByTwoKind::SqueezeLike    ? "squeeze"
                         : cls.kind == TwoByTwoKind::RotationLike ? "rotation"
                                                                  : "other";
      w.row({fmt(t), kind, fmt(cls.parameter.real()), fmt(cls.parameter.imag())});
    }
    return w;
  }
  if (c.model == "H4") {
    CsvWriter w({"t", "mode", "kind", "theta", "parity"});
    for (double t : c.times)
      for (std::size_t k = 0; k < M; ++k) {
        // order-0 series term: the bare rotation factor
        const double theta0 = theta_kn(model, k, c.sector, {}, t);
        auto cls = classify_2x2(make_rotation(theta0, 0));
        const char* kind = cls.kind == TwoByTwoKind::RotationLike ? "rotation"
                           : cls.kind == TwoByTwoKind::SqueezeLike ? "squeeze"
                                                                   : "other";
        w.row({fmt(t), std::to_string(k), kind, fmt(cls.parameter.real()),
               std::to_string(cls.parity)});
      }
    return w;
  }
  throw ConfigError("task 'classify' needs model H1 or H4");
}

}  // namespace

int run_config(const std::filesystem::path& config_path, const RunOptions& opts) {
  Config c;
  try {
    c = parse_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitParse;
  }

  const double tol = opts.tol_override.value_or(c.trunc.tol);
  const std::filesystem::path out_dir =
      opts.out_dir.empty() ? std::filesystem::current_path() : opts.out_dir;

  try {
    std::filesystem::create_directories(out_dir);
    c.trunc.validate();
    bool breached = false;
    std::optional<CsvWriter> out;

    if (c.task == "equivalence-check") {
      out.emplace(task_equivalence(c));
    } else {
      Model model = validate_model(c.system, c.bath);
      if (c.task == "propagator")
        out.emplace(task_propagator(c, model));
      else if (c.task == "dephasing")
        out.emplace(task_dephasing(c, model));
      else if (c.task == "convergence")
        out.emplace(task_convergence(c, model));
      else if (c.task == "oracle-compare") {
        auto r = task_oracle_compare(c, model, tol);
        breached = r.breached;
        out.emplace(std::move(r.writer));
      } else if (c.task == "classify")
        out.emplace(task_classify(c, model));
      else
        throw ConfigError("unknown task '" + c.task + "'");
    }

    out->write(out_dir / c.output_path);
    if (breached) {
      std::cerr << "oracle-compare: deviation above tolerance " << tol << '\n';
      return kExitTolerance;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace qprop::cli
