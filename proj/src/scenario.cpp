#include "ergo/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ergo/classical.hpp"
#include "ergo/dynamics.hpp"
#include "ergo/physics.hpp"
#include "ergo/recurrence.hpp"

namespace ergo {

namespace {

cx parse_complex(const Json& j) {
  if (j.is_number()) return cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cx(j[0].get<double>(), j[1].get<double>());
  throw ValidationError("expected a number or [re, im] pair");
}

Mat parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected a matrix as nested arrays");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw ValidationError("matrix rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

Vec parse_vector(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected a vector");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = parse_complex(j[i]);
  return v;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ValidationError("cannot parse rational: " + s);
  }
}

Mat parse_element(const StarAlgebra& alg, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "identity") return alg.identity();
  if (j.is_object() && j.contains("indicator")) {
    std::vector<int> set = j.at("indicator").get<std::vector<int>>();
    const cx scale = j.contains("scale") ? parse_complex(j.at("scale")) : cx(1.0);
    return scale * indicator(alg, set);
  }
  if (j.is_object() && j.contains("unit")) {
    const cx scale = j.contains("scale") ? parse_complex(j.at("scale")) : cx(1.0);
    return scale * alg.basis_element(j.at("unit").get<int>());
  }
  Mat m = parse_matrix(j);
  if (!alg.conforms(m))
    throw ValidationError("element does not conform to the declared algebra");
  return alg.project_to_blocks(m);
}

struct Built {
  std::string name;
  System sys;
  std::optional<Mat> energy;  // Hamiltonian, when the dynamics define one
};

Built build_named(const std::string& name, const Json& params) {
  if (name == "example_2_5_7") {
    const cx c1 = parse_complex(params.at("c1"));
    const cx c2 = parse_complex(params.at("c2"));
    return Built{name, example_2_5_7(c1, c2), std::nullopt};
  }
  if (name == "spin_half") {
    const double e = params.at("E").get<double>();
    System sys = spin_half_system(e);
    Mat h = sys.map.hamiltonian;
    return Built{name, std::move(sys), std::move(h)};
  }
  if (name == "classical_two_cycle") {
    TwoCycleSystem two = classical_two_cycle();
    return Built{name, std::move(two.system), std::move(two.hamiltonian)};
  }
  throw ValidationError("unknown named system: " + name);
}

StarAlgebra build_algebra(const Json& spec) {
  if (spec.contains("blocks"))
    return StarAlgebra(spec.at("blocks").get<std::vector<int>>());
  if (spec.contains("atoms")) {
    const int m = spec.at("atoms").get<int>();
    if (m < 1) throw ValidationError("need at least one atom");
    return StarAlgebra(std::vector<int>(static_cast<std::size_t>(m), 1));
  }
  throw ValidationError("algebra needs \"blocks\" or \"atoms\"");
}

State build_state(const StarAlgebra& alg, const Json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "trace") return State::trace_state(alg);
  if (type == "vector") return State::vector_state(alg, parse_vector(spec.at("x")));
  if (type == "density") return State::from_weight(alg, parse_matrix(spec.at("rho")));
  if (type == "weights") {
    if (alg.ambient_dim() != alg.linear_dim())
      throw ValidationError("weight states need a diagonal algebra");
    const Json& mu = spec.at("mu");
    Mat rho = alg.zero();
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double w = mu[i].is_string()
                           ? boost::rational_cast<double>(parse_rational(mu[i].get<std::string>()))
                           : mu[i].get<double>();
      rho(static_cast<int>(i), static_cast<int>(i)) = w;
    }
    return State::from_weight(alg, rho);
  }
  throw ValidationError("unknown state type: " + type);
}

DynamicalMap build_dynamics(const StarAlgebra& alg, const Json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "hamiltonian")
    return hamiltonian_step_map(alg, alg.project_to_blocks(parse_matrix(spec.at("h"))),
                                spec.at("t").get<double>());
  if (type == "superoperator") {
    Mat s = parse_matrix(spec.at("s"));
    if (s.rows() != alg.linear_dim() || s.cols() != alg.linear_dim())
      throw ValidationError("superoperator has wrong shape");
    return DynamicalMap{std::move(s), DynamicalMap::Kind::custom, Mat(), 0.0};
  }
  if (type == "classical_map")
    return classical_map_superoperator(alg, spec.at("t_map").get<std::vector<int>>());
  throw ValidationError("unknown dynamics type: " + type);
}

Built build_scenario_impl(const Json& scenario) {
  if (!scenario.is_object()) throw ValidationError("scenario must be an object");
  const std::string name = scenario.value("name", std::string("unnamed"));

  const bool named_top = scenario.contains("system");
  const bool named_dyn = scenario.contains("dynamics") &&
                         scenario.at("dynamics").value("type", std::string()) == "example";
  if (named_top || named_dyn) {
    if (scenario.contains("algebra") || scenario.contains("state"))
      throw ValidationError("named systems fix their own algebra and state");
    const Json& spec = named_top ? scenario.at("system") : scenario.at("dynamics");
    Built built = build_named(spec.at("name").get<std::string>(),
                              spec.value("params", Json::object()));
    built.name = name;
    return built;
  }

  StarAlgebra alg = build_algebra(scenario.at("algebra"));
  State phi = build_state(alg, scenario.at("state"));
  DynamicalMap tau = build_dynamics(alg, scenario.at("dynamics"));
  std::optional<Mat> energy;
  if (tau.kind == DynamicalMap::Kind::hamiltonian) energy = tau.hamiltonian;
  return Built{name, make_system(alg, phi, tau), std::move(energy)};
}

// Missing keys and type mismatches in the document are scenario errors, not
// internal ones.
Built build_scenario(const Json& scenario) {
  try {
    return build_scenario_impl(scenario);
  } catch (const Json::exception& e) {
    throw ValidationError(e.what());
  }
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out.empty() ? std::string("scenario") : out;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::ofstream open_csv(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / file);
  if (!out) throw Error("cannot write " + file);
  out << std::setprecision(17);
  return out;
}

Json tolerances_json() {
  return Json{{"herm", tol::herm},     {"proj", tol::proj},       {"psd", tol::psd},
              {"norm", tol::norm},     {"prob", tol::prob},       {"gns", tol::gns},
              {"null_rel", tol::null_rel}, {"dyn", tol::dyn},     {"fix", tol::fix},
              {"cluster_rel", tol::cluster_rel}, {"guard", tol::guard}};
}

Json recurrence_json(const RecurrenceSet& set) {
  return Json{{"horizon", set.horizon},
              {"epsilon", set.epsilon},
              {"threshold", set.threshold},
              {"count", static_cast<int>(set.indices.size())},
              {"max_gap", set.max_gap},
              {"hypothesis_warning", set.hypothesis_warning},
              {"indices", set.indices}};
}

void write_recurrence_csv(std::ofstream& out, const RecurrenceSet& set) {
  out << "k,value,admitted\n";
  std::size_t next = 0;
  for (int k = 1; k <= set.horizon; ++k) {
    const bool admitted = next < set.indices.size() && set.indices[next] == k;
    if (admitted) ++next;
    out << k << ',' << set.values[static_cast<std::size_t>(k - 1)] << ','
        << (admitted ? 1 : 0) << '\n';
  }
}

std::vector<double> parse_grid(const Json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    const double from = j.at("from").get<double>();
    const double to = j.at("to").get<double>();
    const int points = j.at("points").get<int>();
    if (points < 2) throw ValidationError("grid needs at least two points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
      grid[static_cast<std::size_t>(i)] = from + (to - from) * i / (points - 1.0);
    return grid;
  }
  throw ValidationError("expected a grid as array or {from, to, points}");
}

}  // namespace

std::string scenario_hash(const Json& scenario) {
  const std::string dump = scenario.dump();
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << hash;
  return out.str();
}

Json run_scenario(const Json& scenario, const RunOptions& options) {
  Built built = build_scenario(scenario);
  const System& sys = built.sys;
  const std::string stem = sanitize(built.name);

  Json report;
  report["schema_version"] = 1;
  report["scenario"] = built.name;
  report["scenario_hash"] = scenario_hash(scenario);
  report["tolerances"] = tolerances_json();
  report["provenance"] = Json{{"timestamp", iso_timestamp()},
                              {"seed", options.seed},
                              {"horizon_override", options.horizon ? Json(*options.horizon) : Json()},
                              {"epsilon_override", options.epsilon ? Json(*options.epsilon) : Json()}};
  report["results"] = Json::array();

  const Json analyses = scenario.value("analyses", Json::array());
  int index = 0;
  try {
  for (const Json& analysis : analyses) {
    const std::string type = analysis.at("type").get<std::string>();
    const int horizon = options.horizon ? *options.horizon : analysis.value("n", analysis.value("k", 10000));
    Json result{{"type", type}};

    if (type == "ergodicity") {
      const ErgodicReport verdict = is_ergodic(sys);
      result["fixed_dim"] = verdict.fixed_dim;
      result["is_ergodic"] = verdict.ergodic;
      result["omega_residual"] = verdict.omega_residual;
      result["cesaro_gap"] = verdict.cesaro_gap;
    } else if (type == "cesaro") {
      const Mat a = parse_element(sys.alg, analysis.at("a"));
      if (analysis.contains("b")) {
        const Mat b = parse_element(sys.alg, analysis.at("b"));
        const std::vector<cx> means = cesaro_correlation(sys, a, b, horizon);
        const cx limit = means.back();
        const cx product = sys.phi.value(a) * sys.phi.value(b);
        result["n"] = horizon;
        result["limit"] = Json::array({limit.real(), limit.imag()});
        result["state_product"] = Json::array({product.real(), product.imag()});
        if (options.write_csv) {
          const std::string file = stem + "_" + std::to_string(index) + "_correlation.csv";
          auto out = open_csv(options.out_dir, file);
          out << "n,value_re,value_im\n";
          for (std::size_t m = 0; m < means.size(); ++m)
            out << (m + 1) << ',' << means[m].real() << ',' << means[m].imag() << '\n';
          result["csv"] = file;
        }
      } else {
        const CesaroMeanResult traj = cesaro_mean(sys, a, horizon);
        result["n"] = horizon;
        result["final_residual"] = traj.residuals.back();
        result["rate_constant"] = traj.rate_constant;
        if (options.write_csv) {
          const std::string file = stem + "_" + std::to_string(index) + "_cesaro.csv";
          auto out = open_csv(options.out_dir, file);
          out << "n,residual\n";
          for (std::size_t m = 0; m < traj.residuals.size(); ++m)
            out << (m + 1) << ',' << traj.residuals[m] << '\n';
          result["csv"] = file;
        }
      }
    } else if (type == "khintchine") {
      const double epsilon = options.epsilon ? *options.epsilon : analysis.at("epsilon").get<double>();
      const Mat a = parse_element(sys.alg, analysis.at("a"));
      const RecurrenceSet set =
          analysis.contains("b")
              ? khintchine_pair_set(sys, a, parse_element(sys.alg, analysis.at("b")), epsilon, horizon)
              : khintchine_set(sys, a, epsilon, horizon);
      result.update(recurrence_json(set));
      if (options.write_csv) {
        const std::string file = stem + "_" + std::to_string(index) + "_recurrence.csv";
        auto out = open_csv(options.out_dir, file);
        write_recurrence_csv(out, set);
        result["csv"] = file;
      }
    } else if (type == "recurrence_search") {
      const Mat p = parse_element(sys.alg, analysis.at("p"));
      const std::optional<int> n = additive_recurrence_search(sys, p, horizon);
      result["k"] = horizon;
      result["found"] = n.has_value();
      result["n"] = n ? Json(*n) : Json();
    } else if (type == "energy_analysis") {
      Mat h;
      if (analysis.contains("h"))
        h = sys.alg.project_to_blocks(parse_matrix(analysis.at("h")));
      else if (built.energy)
        h = *built.energy;
      else
        throw ValidationError("energy analysis needs a Hamiltonian");
      const EnergyProfile profile = energy_profile(sys.alg, h, sys.phi);
      Json levels = Json::array();
      for (const EnergyLevel& l : profile.levels)
        levels.push_back(Json{{"energy", l.energy}, {"multiplicity", l.multiplicity}, {"prob", l.prob}});
      result["levels"] = levels;
      result["multi_level"] = profile.multi_level;
      result["witness_interval"] =
          profile.witness_interval
              ? Json::array({profile.witness_interval->first, profile.witness_interval->second})
              : Json();
      const std::optional<Certificate> cert = non_ergodicity_certificate(sys, h);
      result["certificate"] =
          cert ? Json{{"a1", cert->a1}, {"a2", cert->a2}, {"p", cert->p}, {"residual", cert->residual}}
               : Json();
    } else if (type == "return_scan") {
      const double epsilon = options.epsilon ? *options.epsilon : analysis.at("epsilon").get<double>();
      if (!built.energy) throw ValidationError("return scans need Hamiltonian dynamics");
      const Mat p = parse_element(sys.alg, analysis.at("p"));
      const int k = options.horizon ? *options.horizon : analysis.value("k", 100);
      const ReturnScanResult scan = return_probability_scan(
          sys.alg, *built.energy, p, parse_grid(analysis.at("t_grid")), epsilon, k);
      result["threshold"] = scan.threshold;
      result["max_jump_coarse"] = scan.max_jump_coarse;
      result["max_jump_fine"] = scan.max_jump_fine;
      int windows = 0;
      for (const ReturnScanRow& row : scan.rows) windows += row.in_window ? 1 : 0;
      result["points_in_window"] = windows;
      if (options.write_csv) {
        const std::string file = stem + "_" + std::to_string(index) + "_return.csv";
        auto out = open_csv(options.out_dir, file);
        out << "t,n,p,in_window\n";
        for (const ReturnScanRow& row : scan.rows)
          out << row.t << ',' << row.n << ',' << row.p << ',' << (row.in_window ? 1 : 0) << '\n';
        result["csv"] = file;
      }
    } else {
      throw ValidationError("unknown analysis type: " + type);
    }

    report["results"].push_back(std::move(result));
    ++index;
  }
  } catch (const Json::exception& e) {
    throw ValidationError(e.what());
  }
  return report;
}

std::vector<std::string> validate_scenario(const Json& scenario) {
  std::vector<std::string> diagnostics;
  try {
    Built built = build_scenario(scenario);
    const Json analyses = scenario.value("analyses", Json::array());
    static const std::vector<std::string> known{"ergodicity",      "cesaro",
                                               "khintchine",      "recurrence_search",
                                               "energy_analysis", "return_scan"};
    for (const Json& analysis : analyses) {
      try {
        const std::string type = analysis.at("type").get<std::string>();
        if (std::find(known.begin(), known.end(), type) == known.end()) {
          diagnostics.push_back("unknown analysis type: " + type);
          continue;
        }
        for (const char* key : {"a", "b", "p"})
          if (analysis.contains(key)) parse_element(built.sys.alg, analysis.at(key));
        if (type == "khintchine" && !analysis.contains("epsilon"))
          diagnostics.push_back("khintchine analysis needs epsilon");
        if (type == "return_scan") {
          if (!analysis.contains("t_grid"))
            diagnostics.push_back("return scan needs a time grid");
          else
            parse_grid(analysis.at("t_grid"));
          if (!analysis.contains("epsilon")) diagnostics.push_back("return scan needs epsilon");
        }
      } catch (const std::exception& e) {
        diagnostics.push_back(e.what());
      }
    }
  } catch (const std::exception& e) {
    diagnostics.push_back(e.what());
  }
  return diagnostics;
}

std::vector<std::string> list_examples() {
  return {
      "example_2_5_7        params: c1, c2 (complex as [re, im]); 2x2 matrix system, normalized trace",
      "spin_half            params: E (real); H = diag(E, -E), unit time step, ground-state vector state",
      "classical_two_cycle  no params; eight uniform atoms in two invariant 4-cycles at distinct energies",
  };
}

}  // namespace ergo
