#include "anitv/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "anitv/anisotropy.hpp"
#include "anitv/builtin_potentials.hpp"
#include "anitv/convergence.hpp"
#include "anitv/denoise.hpp"
#include "anitv/functional.hpp"
#include "anitv/pgm.hpp"
#include "anitv/potential_io.hpp"

namespace anitv {

namespace {

// the input parsed but fails a mathematical requirement; exit code 1
class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + tok + "' in '" + s + "'");
    }
  }
  return out;
}

double parse_double(const RunConfig& config, const std::string& key, double fallback) {
  if (!config.has(key)) return fallback;
  const auto v = parse_numbers(config.get(key));
  if (v.size() != 1) throw std::invalid_argument("option " + key + " wants one number");
  return v[0];
}

int parse_int(const RunConfig& config, const std::string& key, int fallback) {
  const double v = parse_double(config, key, fallback);
  if (v != std::floor(v)) throw std::invalid_argument("option " + key + " wants an integer");
  return static_cast<int>(v);
}

Polygon parse_polygon(const std::string& s) {
  const auto nums = parse_numbers(s);
  if (nums.size() < 6 || nums.size() % 2 != 0)
    throw std::invalid_argument("polygon wants an even list of >= 6 coordinates");
  Polygon poly;
  for (std::size_t i = 0; i < nums.size(); i += 2)
    poly.vertices.push_back({nums[i], nums[i + 1]});
  return poly;
}

StencilPotential load_potential(const RunConfig& config) {
  if (config.has("potential_file"))
    return read_potential_file(config.get("potential_file"));
  if (config.has("potential")) return read_potential_file(config.get("potential"));
  throw std::invalid_argument("missing potential_file option");
}

std::vector<double> schedule_from_config(const RunConfig& config) {
  const double h_max = parse_double(config, "h_max", 0.125);
  const double h_min = parse_double(config, "h_min", h_max / 32.0);
  if (!(h_min > 0.0) || !(h_max >= h_min))
    throw std::invalid_argument("need 0 < h_min <= h_max");
  std::vector<double> hs{h_max};
  while (hs.back() > h_min * (1.0 + 1e-9)) hs.push_back(hs.back() / 2.0);
  return hs;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.precision(17);
  return out;
}

void write_rows_csv(std::ostream& out, const std::string& header,
                    const std::vector<ConvergenceRow>& rows) {
  out << header << "\n";
  out << "h,Jh,limit,abs_err,err_over_h\n";
  for (const auto& r : rows)
    out << r.h << "," << r.jh << "," << r.limit << "," << r.abs_err << ","
        << r.err_over_h << "\n";
}

}  // namespace

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

std::string RunConfig::header() const {
  std::string canon = subcommand + "\n";
  for (const auto& [k, v] : options) canon += k + "=" + v + "\n";
  for (const auto& l : layers) canon += "layer=" + l + "\n";
  std::ostringstream out;
  out << "# " << kToolVersion << " seed=" << seed << " config=" << std::hex
      << fnv1a(canon);
  return out.str();
}

int cmd_check(const RunConfig& config) {
  std::cout << config.header() << "\n";
  StencilPotential F = [&] {
    try {
      return load_potential(config);
    } catch (const parse_error&) {
      throw;
    }
  }();
  const auto& st = F.stencil();
  std::cout << "potential: " << config.get("potential_file", config.get("potential"))
            << " (dim=" << st.dim() << ", |Sigma|=" << st.size()
            << ", radius=" << st.radius() << ")\n";
  std::cout << "structure: ok (table complete, values >= 0, F(empty)=F(full)=0)\n";

  bool pass = true;
  const auto sub = check_submodular(F);
  if (sub.ok) {
    std::cout << "submodular: ok\n";
  } else {
    pass = false;
    std::cout << "submodular: FAIL, witness u=" << mask_to_string(sub.witness_u, st.size())
              << " v=" << mask_to_string(sub.witness_v, st.size())
              << " violation=" << sub.violation << "\n";
  }

  const double c = check_coercivity(F);
  std::cout.precision(17);
  std::cout << "coercivity c: " << c << "\n";
  if (!(c > 0.0)) {
    pass = false;
    std::cout << "coercivity: FAIL (assumption requires c > 0)\n";
  }

  const int samples = parse_int(config, "samples", 1000);
  const auto props = extension_properties_check(F, samples, config.seed);
  std::cout << "extension properties (" << samples << " samples): "
            << "homogeneity " << (props.homogeneity_ok ? "ok" : "FAIL")
            << ", shift " << (props.shift_ok ? "ok" : "FAIL") << ", lattice "
            << (props.lattice_ok ? "ok" : "FAIL") << ", convexity "
            << (props.convexity_ok ? "ok" : "FAIL") << "\n";
  if (!props.all_ok()) pass = false;

  std::cout << "RESULT: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_anisotropy(const RunConfig& config) {
  const StencilPotential F = load_potential(config);
  if (!check_submodular(F).ok)
    throw validation_error("anisotropy: potential is not submodular");
  if (!(F.coercivity() > 0.0))
    throw validation_error("anisotropy: coercivity assumption fails (c = 0)");

  const AnisotropyDensity density(F);
  const int samples = parse_int(config, "samples", 360);
  const auto points = frank_diagram(density, samples);
  const std::filesystem::path dir = config.get("out", "out");

  auto frank = open_output(dir / "frank.csv");
  frank << config.header() << "\n";
  const int dim = density.dim();
  frank << (dim == 2 ? "theta_x,theta_y,phi,p_x,p_y"
                     : "theta_x,theta_y,theta_z,phi,p_x,p_y,p_z")
        << "\n";
  for (const auto& p : points) {
    for (double t : p.theta) frank << t << ",";
    frank << p.phi;
    for (double x : p.point) frank << "," << x;
    frank << "\n";
  }

  auto sweep = open_output(dir / "phi.csv");
  sweep << config.header() << "\n";
  sweep << (dim == 2 ? "theta_x,theta_y,phi" : "theta_x,theta_y,theta_z,phi") << "\n";
  for (const auto& p : points) {
    for (double t : p.theta) sweep << t << ",";
    sweep << p.phi << "\n";
  }
  std::cout << config.header() << "\n"
            << "wrote " << (dir / "frank.csv").string() << " and "
            << (dir / "phi.csv").string() << " (" << points.size() << " directions)\n";
  return 0;
}

int cmd_converge(const RunConfig& config) {
  if (!config.has("kind")) {
    std::cout << config.header() << "\nno experiment configured; nothing to do\n";
    return 0;
  }
  const std::string kind = config.get("kind");
  const StencilPotential F = load_potential(config);
  const auto window = parse_numbers(config.get("window", "0,0,1,1"));
  if (window.size() % 2 != 0) throw std::invalid_argument("window wants 2N numbers");
  const std::size_t dim = window.size() / 2;
  const std::vector<double> lo(window.begin(), window.begin() + dim);
  const std::vector<double> hi(window.begin() + dim, window.end());
  const auto schedule = schedule_from_config(config);

  std::vector<ConvergenceRow> rows;
  if (kind == "halfspace") {
    HalfspaceExperiment exp;
    exp.nu = parse_numbers(config.get("nu", "1,0"));
    double norm = 0.0;
    for (double x : exp.nu) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw std::invalid_argument("nu must be nonzero");
    for (auto& x : exp.nu) x /= norm;
    exp.offset = parse_double(config, "offset", 0.0);
    exp.window_lo = lo;
    exp.window_hi = hi;
    exp.h_schedule = schedule;
    rows = run_halfspace_experiment(exp, F);
  } else if (kind == "polygon") {
    PolygonExperiment exp;
    exp.polygon = parse_polygon(config.get("polygon"));
    if (dim != 2) throw std::invalid_argument("polygon experiments are 2D");
    exp.window_lo = {lo[0], lo[1]};
    exp.window_hi = {hi[0], hi[1]};
    exp.h_schedule = schedule;
    if (config.has("sample_offset")) {
      const auto off = parse_numbers(config.get("sample_offset"));
      if (off.size() != 2) throw std::invalid_argument("sample_offset wants two numbers");
      exp.sample_offset = {off[0], off[1]};
    }
    rows = run_polygon_experiment(exp, F);
  } else if (kind == "function_tv") {
    FunctionTvExperiment exp;
    if (dim != 2) throw std::invalid_argument("function_tv experiments are 2D");
    exp.window_lo = {lo[0], lo[1]};
    exp.window_hi = {hi[0], hi[1]};
    exp.h_schedule = schedule;
    for (const auto& spec : config.layers) {
      const auto semi = spec.find(';');
      if (semi == std::string::npos)
        throw std::invalid_argument("layer wants 'coefficient;x1,y1,x2,y2,...'");
      FunctionTvExperiment::Layer layer;
      layer.coefficient = parse_numbers(spec.substr(0, semi)).at(0);
      layer.polygon = parse_polygon(spec.substr(semi + 1));
      exp.layers.push_back(std::move(layer));
    }
    rows = run_function_tv_experiment(exp, F);
  } else {
    throw std::invalid_argument("unknown experiment kind '" + kind + "'");
  }

  std::ostringstream table;
  table.precision(17);
  write_rows_csv(table, config.header(), rows);
  std::cout << table.str();
  if (config.has("out")) {
    auto out = open_output(std::filesystem::path(config.get("out")) / "table.csv");
    out << table.str();
  }
  return 0;
}

int cmd_denoise(const RunConfig& config) {
  const StencilPotential F = load_potential(config);
  if (!config.has("input")) throw std::invalid_argument("missing input option");
  const PgmImage img = read_pgm_file(config.get("input"));
  const double h_default = 1.0 / std::max(img.width, img.height);
  const double h = parse_double(config, "h", h_default);
  const GridImage gi = grid_from_pgm(img, h);

  DenoiseProblem prob{gi.fn, F, parse_double(config, "lambda", 1.0), {}};
  prob.level_grid = default_level_grid(gi.fn, parse_int(config, "refine", 0));

  const std::string solver = config.get("solver", "first_order");
  DenoiseResult result = [&] {
    if (solver == "oracle") return solve_oracle(prob);
    if (solver == "first_order") {
      FirstOrderOptions opts;
      opts.max_iter = parse_int(config, "max_iter", 5000);
      opts.tol = parse_double(config, "tol", 1e-9);
      return solve_first_order(prob, opts);
    }
    throw std::invalid_argument("unknown solver '" + solver + "'");
  }();

  std::cout << config.header() << "\n";
  std::cout.precision(17);
  std::cout << "energy=" << result.energy << ", iters=" << result.iterations
            << ", residual=" << result.residual << "\n";
  if (!result.converged && result.solver == DenoiseResult::Solver::first_order)
    std::cout << "warning: max_iter reached before the energy plateaued\n";

  if (config.has("output")) {
    const PgmImage out_img = pgm_from_grid(result.u, img.maxval);
    write_pgm_file(config.get("output"), out_img, true, config.header().substr(2));
  }
  if (config.has("trace")) {
    auto trace = open_output(config.get("trace"));
    trace << config.header() << "\n";
    trace << "iter,energy,residual\n";
    for (const auto& t : result.trace)
      trace << t.iter << "," << t.energy << "," << t.residual << "\n";
  }
  return 0;
}

namespace {

GridFunction random_grid_function(const GridDomain& dom, int n_levels,
                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<int> level(0, n_levels - 1);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> levels(n_levels);
  for (auto& v : levels) v = value(rng);
  std::vector<double> cells(static_cast<std::size_t>(dom.cell_count()));
  for (auto& c : cells) c = levels[static_cast<std::size_t>(level(rng))];
  return GridFunction(dom, std::move(cells));
}

}  // namespace

int cmd_selftest(const RunConfig& config) {
  std::cout << config.header() << "\n";
  std::mt19937_64 rng(config.seed);
  bool all = true;
  auto report = [&all](const std::string& name, bool ok) {
    std::cout << "selftest: " << name << " ... " << (ok ? "PASS" : "FAIL") << "\n";
    all = all && ok;
  };

  const std::vector<std::pair<std::string, StencilPotential>> bundled = {
      {"nearest_neighbor", nearest_neighbor_potential(2)},
      {"euclidean", euclidean_potential_2d()},
      {"octagonal", octagonal_potential_2d()},
  };

  for (const auto& [name, F] : bundled) {
    report(name + ": submodular", check_submodular(F).ok);
    report(name + ": coercive", F.coercivity() > 0.0);
    report(name + ": extension properties",
           extension_properties_check(F, 500, config.seed).all_ok());

    bool binary_exact = true;
    for (BinaryVector m = 0; m < F.table_size(); ++m) {
      RealStencilVector u(F.stencil().size());
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = (m >> i) & 1 ? 1.0 : 0.0;
      binary_exact = binary_exact && lovasz_extend(F, u) == F.value(m);
    }
    report(name + ": extension exact on binary vectors", binary_exact);

    const auto points = frank_diagram(AnisotropyDensity(F), 360);
    bool on_boundary = true;
    for (const auto& p : points)
      on_boundary = on_boundary &&
                    std::abs(AnisotropyDensity(F).phi(p.point) - 1.0) <= 1e-9;
    report(name + ": frank diagram on unit level set", on_boundary);
  }

  const GridDomain dom = GridDomain::box(1.0 / 12, {0.0, 0.0}, {1.0, 1.0});
  const auto& nn = bundled[0].second;
  bool coarea_ok = true;
  for (int t = 0; t < 30; ++t) {
    const auto u = random_grid_function(dom, 5, rng);
    const auto rep = coarea_check(u, nn);
    coarea_ok = coarea_ok && rep.gap <= 1e-10 * (1.0 + rep.lhs);
  }
  report("coarea identity on random functions", coarea_ok);

  bool submod_ok = true;
  for (int t = 0; t < 100; ++t) {
    const auto a = super_level_set(random_grid_function(dom, 3, rng), 0.0);
    const auto b = super_level_set(random_grid_function(dom, 3, rng), 0.0);
    submod_ok = submod_ok && submodularity_of_Jh_check(a, b, nn).ok;
  }
  report("J_h submodular on random set pairs", submod_ok);

  bool bounds_ok = true;
  for (int t = 0; t < 20; ++t) {
    const auto rep =
        total_variation_bounds_check(random_grid_function(dom, 4, rng), nn);
    bounds_ok = bounds_ok && rep.lower_ok && rep.upper_ok;
  }
  report("discrete TV bounds", bounds_ok);

  bool oracle_ok = true, truncation_ok = true;
  for (int t = 0; t < 5 && oracle_ok; ++t) {
    const GridDomain tiny = GridDomain::box(1.0, {0.0, 0.0}, {3.0, 3.0});
    const auto g = random_grid_function(tiny, 3, rng);
    DenoiseProblem prob{g, nn, 1.0, default_level_grid(g)};
    try {
      const auto result = solve_oracle(prob);
      oracle_ok = std::abs(result.energy - result.exhaustive_energy) <=
                  1e-9 * std::max(1.0, std::abs(result.exhaustive_energy));
      truncation_ok =
          truncation_ok && result.u.max_inside() <= g.max_inside() + 1e-12 &&
          result.u.min_inside() >= g.min_inside() - 1e-12;
    } catch (const std::exception&) {
      oracle_ok = false;
    }
  }
  report("denoise oracles agree", oracle_ok);
  report("denoise truncation bound", truncation_ok);

  std::cout << "RESULT: " << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : 1;
}

namespace {

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig config;
  if (args.empty()) throw std::invalid_argument("missing subcommand");
  config.subcommand = args[0];

  auto add = [&config](const std::string& key, const std::string& value) {
    if (key == "layer")
      config.layers.push_back(value);
    else
      config.options[key] = value;
  };

  std::vector<std::pair<std::string, std::string>> cli_pairs;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto eq = args[i].find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value, got '" + args[i] + "'");
    cli_pairs.emplace_back(args[i].substr(0, eq), args[i].substr(eq + 1));
  }

  // config file first, command line overrides
  for (const auto& [k, v] : cli_pairs) {
    if (k != "config") continue;
    std::ifstream in(v);
    if (!in) throw std::invalid_argument("cannot open config file: " + v);
    std::string raw;
    while (std::getline(in, raw)) {
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
      const auto begin = raw.find_first_not_of(" \t\r\n");
      if (begin == std::string::npos) continue;
      const auto end = raw.find_last_not_of(" \t\r\n");
      const std::string lineval = raw.substr(begin, end - begin + 1);
      const auto eq = lineval.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config file: expected key=value, got '" +
                                    lineval + "'");
      add(lineval.substr(0, eq), lineval.substr(eq + 1));
    }
  }
  for (const auto& [k, v] : cli_pairs)
    if (k != "config") add(k, v);

  if (config.has("seed")) {
    try {
      config.seed = std::stoull(config.get("seed"));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed '" + config.get("seed") + "'");
    }
  }
  return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (config.subcommand == "check") return cmd_check(config);
    if (config.subcommand == "anisotropy") return cmd_anisotropy(config);
    if (config.subcommand == "converge") return cmd_converge(config);
    if (config.subcommand == "denoise") return cmd_denoise(config);
    if (config.subcommand == "selftest") return cmd_selftest(config);
    std::cerr << "error: unknown subcommand '" << config.subcommand << "'\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config.subcommand == "check" ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace anitv
