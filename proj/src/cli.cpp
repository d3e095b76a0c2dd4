#include "turanlab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "turanlab/estimate.hpp"
#include "turanlab/io.hpp"
#include "turanlab/norms.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/turan.hpp"

namespace turanlab {

using nlohmann::json;

double parse_q(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf" || s == "INF") return kInf;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InputError("invalid exponent q: \"" + s + "\"");
  }
  if (pos != s.size() || !(v > 0.0)) throw InputError("invalid exponent q: \"" + s + "\"");
  return v;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Options {
  std::string body;
  std::string measure;
  std::string mode;
  std::vector<std::string> q;
  std::string n;
  std::string out;
  std::string spec;
  double delta = 0.0;
  double theta = 0.0;
  double w = 1.0;
  int order = 0;
  int starts = 32;
  int iters = 2000;
  int grid = 24;
  std::uint64_t seed = 0;
  bool oracle = false;
};

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot write " + path);
      os_ = file_.get();
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

json json_or_file(const json& j) { return j.is_string() ? load_json(j.get<std::string>()) : j; }

ConvexBody load_body(const std::string& path) {
  if (path.empty()) throw InputError("--body is required");
  return body_from_json(load_json(path));
}

MeasureModel load_measure(const std::string& path) {
  if (path.empty()) throw InputError("--measure is required");
  return measure_from_json(load_json(path));
}

// Corollary mode: theta = delta/2 for arc length, delta/4 for area.
double corollary_theta(const MeasureModel& mu, double delta) {
  if (mu.kind() == MeasureKind::boundary_arclength) return delta / 2.0;
  if (mu.kind() == MeasureKind::area) return delta / 4.0;
  throw InputError("corollary mode needs an unweighted boundary_arclength or area measure");
}

double corollary_delta(const MeasureModel& mu, double q, double given) {
  if (given > 0.0) return given;
  if (is_max_norm(q)) throw InputError("corollary mode at q = inf needs an explicit --delta");
  return mu.kind() == MeasureKind::area ? area_constant(q).delta_opt : arclength_constant(q).delta_opt;
}

int auto_degree(const ConvexBody& body, double q) {
  const double d = diameter(body).d;
  const double w = width(body);
  const long long n = std::max({n_threshold(d, w, q), internal_n_condition(2.0 * w / d, q), 2LL});
  if (n > 100'000'000) throw InputError("auto degree exceeds 1e8; the body is too thin");
  return static_cast<int>(n);
}

int parse_degree(const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos == s.size() && v >= 1 && v <= 100'000'000) return static_cast<int>(v);
  } catch (const std::exception&) {
  }
  throw InputError("invalid degree \"" + s + "\"");
}

int cmd_geometry(const Options& o, std::ostream& out) {
  const ConvexBody body = load_body(o.body);
  const DiameterPair dp = diameter(body);
  const NormalizedBody nb = normalize(body, dp);
  json j = {{"d", dp.d},
            {"w", width(body)},
            {"diameter", to_json(dp)},
            {"normalization", to_json(nb.map)},
            {"normalized_width", width(nb.body)},
            {"contained_in_rectangle", bounding_rectangle_check(nb.body)},
            {"area", body.area()},
            {"perimeter", body.perimeter()}};
  Sink sink(o.out, out);
  sink.get() << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_constants(const Options& o, std::ostream& out) {
  if (o.q.empty()) throw InputError("--q needs at least one value");
  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  const double n_width = o.w;
  if (!(n_width > 0.0 && n_width <= 2.0)) throw InputError("--w must lie in (0, 2]");
  if (o.mode == "theorem") {
    if (!(o.delta > 0.0 && o.delta < 1.0) || !(o.theta > 0.0 && o.theta <= 1.0))
      throw InputError("theorem mode needs --delta in (0,1) and --theta in (0,1]");
    os << "q,delta,theta,constant,n_threshold\n";
    for (const std::string& s : o.q) {
      const double q = parse_q(s);
      os << csv_number(q) << ',' << csv_number(o.delta) << ',' << csv_number(o.theta) << ','
         << csv_number(theorem_constant(o.delta, o.theta, q)) << ',' << n_threshold(2.0, n_width, q) << "\n";
    }
    return kExitOk;
  }
  if (o.mode != "cor1" && o.mode != "cor2") throw InputError("--mode must be theorem, cor1 or cor2");
  const double c = o.mode == "cor1" ? 4.0 : 8.0;
  os << "q,constant,delta_opt,numeric_constant,numeric_delta,agree,n_threshold\n";
  bool all_agree = true;
  for (const std::string& s : o.q) {
    const double q = parse_q(s);
    const OptimizedConstant closed = o.mode == "cor1" ? arclength_constant(q) : area_constant(q);
    const OptimizedConstant numeric = minimized_constant(q, c);
    const bool agree = std::abs(closed.C - numeric.C) <= 1e-8 * closed.C;
    all_agree = all_agree && agree;
    os << csv_number(q) << ',' << csv_number(closed.C) << ',' << csv_number(closed.delta_opt) << ','
       << csv_number(numeric.C) << ',' << csv_number(numeric.delta_opt) << ',' << (agree ? "true" : "false") << ','
       << n_threshold(2.0, n_width, q) << "\n";
  }
  return all_agree ? kExitOk : kExitFail;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const ConvexBody body = load_body(o.body);
  const MeasureModel mu = load_measure(o.measure);
  if (o.q.size() != 1) throw InputError("verify takes exactly one --q");
  const double q = parse_q(o.q.front());
  double delta = o.delta, theta = o.theta;
  if (o.mode == "corollary") {
    delta = corollary_delta(mu, q, o.delta);
    theta = corollary_theta(mu, delta);
  } else if (!o.mode.empty() && o.mode != "theorem") {
    throw InputError("verify --mode must be theorem or corollary");
  }
  if (!(delta > 0.0 && delta < 1.0) || !(theta > 0.0 && theta <= 1.0))
    throw InputError("verify needs --delta in (0,1) and --theta in (0,1] (or --mode corollary)");
  if (o.n.empty()) throw InputError("--n is required (an integer or auto)");
  const int n = o.n == "auto" ? auto_degree(body, q) : parse_degree(o.n);

  const TheoremReport rep = verify_theorem(body, mu, delta, theta, n, q, o.order);
  Sink sink(o.out, out);
  sink.get() << to_json(rep).dump(2) << "\n";
  return rep.pass ? kExitOk : kExitFail;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const ConvexBody body = load_body(o.body);
  const MeasureModel mu = load_measure(o.measure);
  if (o.q.size() != 1) throw InputError("estimate takes exactly one --q");
  EstimateConfig cfg;
  cfg.q = parse_q(o.q.front());
  if (o.n.empty()) throw InputError("--n is required");
  cfg.n = parse_degree(o.n);
  cfg.seed = o.seed;
  cfg.order = o.order;
  cfg.multistarts = o.starts;
  cfg.max_iters = o.iters;
  if (cfg.multistarts < 1 || cfg.max_iters < 0) throw InputError("--starts must be >= 1 and --iters >= 0");
  if (o.oracle && (cfg.n > 3 || o.grid < 2 || o.grid > 64))
    throw InputError("--oracle needs n <= 3 and --grid in [2, 64]");

  const EstimateResult res = estimate_oscillation(body, mu, cfg);
  json j = to_json(res);
  j["n"] = cfg.n;
  j["q"] = number_json(cfg.q);
  j["seed"] = cfg.seed;
  if (o.oracle) {
    const OracleResult orc = brute_oracle(body, mu, cfg.n, cfg.q, o.grid, cfg.order);
    j["oracle"] = to_json(orc);
    j["relative_gap"] = number_json((res.best_ratio - orc.ratio) / orc.ratio);
  }
  Sink sink(o.out, out);
  sink.get() << j.dump(2) << "\n";
  return kExitOk;
}

struct SweepRow {
  int n = 0;
  double q = 0.0;
  double ratio = std::nan("");
  double bound = std::nan("");
  double slack = std::nan("");
  std::string status;
};

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.spec.empty()) throw InputError("--spec is required");
  const json spec = load_json(o.spec);
  if (!spec.is_object()) throw InputError("sweep spec must be a JSON object");
  if (!spec.contains("body") || !spec.contains("measure")) throw InputError("sweep spec needs body and measure");
  const std::filesystem::path base = std::filesystem::path(o.spec).parent_path();
  auto resolve = [&](const json& j) {
    if (!j.is_string()) return j;
    const std::filesystem::path p = j.get<std::string>();
    return json((p.is_absolute() ? p : base / p).string());
  };
  const ConvexBody body = body_from_json(json_or_file(resolve(spec.at("body"))));
  const MeasureModel mu = measure_from_json(json_or_file(resolve(spec.at("measure"))));

  std::vector<double> qs;
  if (!spec.contains("q") || !spec.at("q").is_array() || spec.at("q").empty())
    throw InputError("sweep spec needs a nonempty q list");
  for (const json& e : spec.at("q")) {
    if (e.is_string()) {
      qs.push_back(parse_q(e.get<std::string>()));
    } else if (e.is_number() && e.get<double>() > 0.0) {
      qs.push_back(e.get<double>());
    } else {
      throw InputError("q values must be positive numbers or \"inf\"");
    }
  }

  const json& nspec = spec.contains("n") ? spec.at("n") : json();
  const bool auto_n = nspec.is_string() && nspec.get<std::string>() == "auto-threshold";
  std::vector<int> ns;
  if (!auto_n) {
    if (!nspec.is_array() || nspec.empty()) throw InputError("sweep spec needs a nonempty n list or \"auto-threshold\"");
    for (const json& e : nspec) {
      if (!e.is_number_integer() || e.get<long>() < 1) throw InputError("n values must be positive integers");
      ns.push_back(e.get<int>());
    }
  }

  const std::string poly = spec.value("poly", std::string("witness"));
  if (poly != "witness" && poly != "symmetric" && poly != "estimate")
    throw InputError("poly must be witness, symmetric or estimate");
  const std::string mode = spec.value("mode", std::string("theorem"));
  const double delta_in = spec.value("delta", 0.0);
  const double theta_in = spec.value("theta", 0.0);
  if (mode != "theorem" && mode != "corollary") throw InputError("mode must be theorem or corollary");
  if (mode == "theorem" && (!(delta_in > 0.0 && delta_in < 1.0) || !(theta_in > 0.0 && theta_in <= 1.0)))
    throw InputError("theorem mode needs delta in (0,1) and theta in (0,1]");
  const std::uint64_t seed = spec.value("seed", o.seed);
  const int order = spec.value("order", o.order);
  std::string out_path = o.out;
  if (out_path.empty() && spec.contains("out")) {
    if (!spec.at("out").is_string()) throw InputError("out must be a path string");
    const std::filesystem::path p = spec.at("out").get<std::string>();
    out_path = (p.is_relative() ? base / p : p).string();
  }

  const double d = diameter(body).d;
  const double w = width(body);

  struct Task {
    int n;
    double q;
  };
  std::vector<Task> tasks;
  for (double q : qs) {
    if (auto_n) {
      if (w == 0.0) {
        tasks.push_back({0, q});
      } else {
        tasks.push_back({auto_degree(body, q), q});
      }
    } else {
      for (int n : ns) tasks.push_back({n, q});
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.n = tasks[i].n;
    row.q = tasks[i].q;
    try {
      if (row.n < 1) throw std::domain_error("zero width: no threshold degree");
      double delta = delta_in, theta = theta_in;
      if (mode == "corollary") {
        delta = corollary_delta(mu, row.q, delta_in);
        theta = corollary_theta(mu, delta);
      }
      if (poly == "witness") {
        const TheoremReport rep = verify_theorem(body, mu, delta, theta, row.n, row.q, order);
        row.ratio = rep.ratio;
      } else if (poly == "symmetric") {
        if (row.n % 2 != 0) throw std::domain_error("symmetric polynomial needs even n");
        const DiameterPair dp = diameter(body);
        const ZeroPoly p(std::vector<Root>{{dp.a, row.n / 2}, {dp.b, row.n / 2}});
        row.ratio = oscillation_ratio(p, body, mu, row.q, order);
      } else {
        EstimateConfig cfg;
        cfg.n = row.n;
        cfg.q = row.q;
        cfg.seed = seed;
        cfg.order = order;
        cfg.multistarts = spec.value("multistarts", 32);
        cfg.max_iters = spec.value("max_iters", 2000);
        row.ratio = estimate_oscillation(body, mu, cfg).best_ratio;
      }
      if (w == 0.0) {
        row.status = "zero width";
        return;
      }
      row.bound = theorem_constant(delta, theta, row.q) * w / (d * d) * row.n;
      row.slack = row.ratio / row.bound;
      row.status = row.slack <= 1.0 ? "PASS" : "FAIL";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  });

  Sink sink(out_path, out);
  std::ostream& os = sink.get();
  os << "n,q,ratio,bound,slack,status\n";
  bool any_fail = false;
  for (const SweepRow& r : rows) {
    std::string status = r.status;
    for (char& c : status)
      if (c == ',' || c == '\n') c = ';';
    os << r.n << ',' << csv_number(r.q) << ',' << csv_number(r.ratio) << ',' << csv_number(r.bound) << ','
       << csv_number(r.slack) << ',' << status << "\n";
    if (r.status == "FAIL") any_fail = true;
    if (r.status != "PASS" && r.status != "FAIL") err << "row n=" << r.n << " q=" << csv_number(r.q) << ": " << r.status << "\n";
  }

  if (!out_path.empty()) {
    const std::filesystem::path p = out_path;
    const std::string stem = (p.parent_path() / p.stem()).string();
    for (double q : qs) {
      const std::string tag = is_max_norm(q) ? std::string("inf") : csv_number(q);
      std::ofstream ratio_dat(stem + "_q" + tag + "_ratio.dat");
      std::ofstream bound_dat(stem + "_q" + tag + "_bound.dat");
      if (!ratio_dat || !bound_dat) throw InputError("cannot write plot data next to " + out_path);
      for (const SweepRow& r : rows) {
        if (r.q != q) continue;
        if (std::isfinite(r.ratio)) ratio_dat << r.n << ' ' << csv_number(r.ratio) << "\n";
        if (std::isfinite(r.bound)) bound_dat << r.n << ' ' << csv_number(r.bound) << "\n";
      }
    }
  }
  return any_fail ? kExitFail : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for oscillation factors of polynomials with zeros in a convex body"};
  app.require_subcommand(1);
  Options o;

  auto* geo = app.add_subcommand("geometry", "Diameter, width and normalization of a body");
  geo->add_option("--body", o.body, "Body JSON file")->required();
  geo->add_option("--out", o.out, "Write JSON here instead of stdout");

  auto* con = app.add_subcommand("constants", "Theorem or corollary constants as CSV");
  con->add_option("--mode", o.mode, "theorem, cor1 or cor2")->required();
  con->add_option("--q", o.q, "Exponents (numbers or inf)")->required()->delimiter(',');
  con->add_option("--delta", o.delta, "Slab half-width (theorem mode)");
  con->add_option("--theta", o.theta, "Slab mass fraction (theorem mode)");
  con->add_option("--w", o.w, "Normalized width for the n_threshold column (d = 2)");
  con->add_option("--out", o.out, "Write CSV here instead of stdout");

  auto* ver = app.add_subcommand("verify", "Build the witness and check the upper bound");
  ver->add_option("--body", o.body)->required();
  ver->add_option("--measure", o.measure)->required();
  ver->add_option("--delta", o.delta);
  ver->add_option("--theta", o.theta);
  ver->add_option("--q", o.q)->required();
  ver->add_option("--n", o.n, "Degree or auto")->required();
  ver->add_option("--order", o.order, "Quadrature order (default: chosen from n)");
  ver->add_option("--mode", o.mode, "theorem (default) or corollary");
  ver->add_option("--out", o.out);

  auto* est = app.add_subcommand("estimate", "Minimize the oscillation ratio over zero placements");
  est->add_option("--body", o.body)->required();
  est->add_option("--measure", o.measure)->required();
  est->add_option("--n", o.n)->required();
  est->add_option("--q", o.q)->required();
  est->add_option("--seed", o.seed);
  est->add_option("--order", o.order);
  est->add_option("--starts", o.starts, "Multistarts");
  est->add_option("--iters", o.iters, "Nelder-Mead iterations per start");
  est->add_flag("--oracle", o.oracle, "Also run the brute-force oracle (n <= 3)");
  est->add_option("--grid", o.grid, "Oracle grid points per axis");
  est->add_option("--out", o.out);

  auto* swp = app.add_subcommand("sweep", "Run a sweep spec and emit CSV plus plot data");
  swp->add_option("--spec", o.spec, "Sweep spec JSON")->required();
  swp->add_option("--out", o.out, "CSV path (overrides the spec)");
  swp->add_option("--seed", o.seed);
  swp->add_option("--order", o.order);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*geo) return cmd_geometry(o, out);
    if (*con) return cmd_constants(o, out);
    if (*ver) return cmd_verify(o, out);
    if (*est) return cmd_estimate(o, out);
    if (*swp) return cmd_sweep(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace turanlab
