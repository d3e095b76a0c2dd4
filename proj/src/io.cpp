#include "turanlab/io.hpp"

#include <fstream>
#include <sstream>

namespace turanlab {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(what + " must be finite");
  return v;
}

Complex require_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + " must be a [x, y] pair");
  return {require_number(j[0], what), require_number(j[1], what)};
}

const json& require_field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw InputError(ctx + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string require_string(const json& j, const std::string& key, const std::string& ctx) {
  const json& v = require_field(j, key, ctx);
  if (!v.is_string()) throw InputError(ctx + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Density density_from_json(const std::string& name, const json& params) {
  const std::string ctx = "density " + name;
  if (name == "const") {
    const double c = require_number(require_field(params, "value", ctx), ctx + " value");
    if (c < 0.0) throw InputError(ctx + ": value must be nonnegative");
    return [c](Complex) { return c; };
  }
  if (name == "gaussian") {
    const Complex c = require_point(require_field(params, "center", ctx), ctx + " center");
    const double s = require_number(require_field(params, "sigma", ctx), ctx + " sigma");
    const double a = params.contains("amplitude") ? require_number(params.at("amplitude"), ctx + " amplitude") : 1.0;
    if (!(s > 0.0) || a < 0.0) throw InputError(ctx + ": needs sigma > 0 and amplitude >= 0");
    return [c, s, a](Complex z) { return a * std::exp(-std::norm(z - c) / (2.0 * s * s)); };
  }
  if (name == "poly") {
    const json& terms = require_field(params, "terms", ctx);
    if (!terms.is_array() || terms.empty()) throw InputError(ctx + ": terms must be a nonempty array");
    std::vector<std::tuple<int, int, double>> t;
    for (const json& e : terms) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw InputError(ctx + ": each term is [i, j, c] with integer powers");
      const int i = e[0].get<int>(), k = e[1].get<int>();
      if (i < 0 || k < 0) throw InputError(ctx + ": powers must be nonnegative");
      t.emplace_back(i, k, require_number(e[2], ctx + " coefficient"));
    }
    return [t](Complex z) {
      double s = 0.0;
      for (const auto& [i, k, c] : t) s += c * std::pow(z.real(), i) * std::pow(z.imag(), k);
      return s;
    };
  }
  throw InputError("unknown density \"" + name + "\" (expected const, gaussian or poly)");
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": JSON parse error";
    const std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) os << ": " << what.substr(pos);
    throw InputError(os.str());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

ConvexBody body_from_json(const json& j) {
  const std::string kind = require_string(j, "kind", "body");
  try {
    if (kind == "polygon") {
      const json& verts = require_field(j, "vertices", "body");
      if (!verts.is_array()) throw InputError("body: vertices must be an array");
      std::vector<Complex> v;
      for (const json& p : verts) v.push_back(require_point(p, "vertex"));
      return ConvexBody::polygon(std::move(v));
    }
    if (kind == "disk") {
      const Complex c = require_point(require_field(j, "center", "body"), "center");
      return ConvexBody::disk(c, require_number(require_field(j, "radius", "body"), "radius"));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("body: ") + e.what());
  }
  throw InputError("body: unknown kind \"" + kind + "\" (expected polygon or disk)");
}

MeasureModel measure_from_json(const json& j) {
  const std::string kind = require_string(j, "kind", "measure");
  if (kind == "boundary_arclength") return MeasureModel::boundary_arclength();
  if (kind == "area") return MeasureModel::area();
  if (kind == "discrete") {
    const json& atoms = require_field(j, "atoms", "measure");
    if (!atoms.is_array() || atoms.empty()) throw InputError("measure: atoms must be a nonempty array");
    std::vector<Atom> a;
    for (const json& e : atoms) {
      if (!e.is_array() || e.size() != 3) throw InputError("measure: each atom is [x, y, mass]");
      const double mass = require_number(e[2], "atom mass");
      if (mass < 0.0) throw InputError("measure: atom mass must be nonnegative");
      a.push_back({{require_number(e[0], "atom x"), require_number(e[1], "atom y")}, mass});
    }
    return MeasureModel::discrete(std::move(a));
  }
  if (kind == "weighted") {
    const std::string base = require_string(j, "base", "measure");
    MeasureKind b;
    if (base == "area")
      b = MeasureKind::area;
    else if (base == "boundary_arclength")
      b = MeasureKind::boundary_arclength;
    else
      throw InputError("measure: base must be area or boundary_arclength");
    const std::string density = require_string(j, "density", "measure");
    const json params = j.contains("params") ? j.at("params") : json::object();
    return MeasureModel::weighted(b, density_from_json(density, params), density);
  }
  throw InputError("measure: unknown kind \"" + kind + "\"");
}

json number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json complex_json(Complex z) { return json::array({number_json(z.real()), number_json(z.imag())}); }

json to_json(const ConvexBody& body) {
  if (body.is_disk()) return {{"kind", "disk"}, {"center", complex_json(body.center())}, {"radius", body.radius()}};
  json v = json::array();
  for (Complex z : body.vertices()) v.push_back(complex_json(z));
  return {{"kind", "polygon"}, {"vertices", v}};
}

json to_json(const DiameterPair& pair) {
  return {{"a", complex_json(pair.a)}, {"b", complex_json(pair.b)}, {"d", pair.d}};
}

json to_json(const AffineNormalization& map) {
  return {{"kappa", complex_json(map.kappa)}, {"z0", complex_json(map.z0)}, {"scale", map.scale()}};
}

namespace {

json flag(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json band_json(const Band& b) { return json::array({number_json(b.lo), number_json(b.hi)}); }

}  // namespace

json to_json(const WitnessSpec& s) {
  json j = {{"branch", to_string(s.branch)},
            {"delta", s.delta},
            {"theta", s.theta},
            {"theta_certified", s.theta_certified},
            {"q", number_json(s.q)},
            {"n", s.n},
            {"w_normalized", s.w},
            {"m", s.m},
            {"conditions",
             {{"ncondTh", flag(s.conditions.ncondTh)},
              {"ncond1", flag(s.conditions.ncond1)},
              {"l503", flag(s.conditions.l503)},
              {"nw", flag(s.conditions.nw)},
              {"Mcond", flag(s.conditions.Mcond)}}}};
  if (s.branch == Branch::small_width) {
    j["A"] = s.A;
    j["B"] = s.B;
    j["k"] = s.k;
    j["M"] = s.M;
    j["mirrored"] = s.mirrored;
    j["Q"] = band_json(s.Q);
    j["K_A"] = band_json(s.K_A);
    j["K_B"] = band_json(s.K_B);
    if (s.strip) {
      j["strip"] = {{"A", s.strip->A},
                    {"ell0", s.strip->ell0},
                    {"cells", s.strip->cells},
                    {"mass", s.strip->mass},
                    {"guaranteed_mass", s.strip->guaranteed_mass()},
                    {"total", s.strip->total}};
    }
    if (s.margins) {
      j["margins"] = {{"e1", s.margins->e1},
                      {"e1b", s.margins->e1b},
                      {"e2", s.margins->e2},
                      {"e3", s.margins->e3},
                      {"e4", s.margins->e4}};
    }
    if (s.tail) {
      j["tail_check"] = {{"left_violation", s.tail->left_violation},
                         {"right_violation", s.tail->right_violation},
                         {"grid", s.tail->grid}};
    }
  } else {
    j["A"] = nullptr;
    j["B"] = nullptr;
    j["k"] = nullptr;
    j["M"] = nullptr;
    j["polynomial"] = s.left_wins ? "(1-z)^n" : "(1+z)^n";
    j["mass_left"] = s.mass_left;
    j["mass_right"] = s.mass_right;
  }
  j["total_mass"] = s.total_mass;
  return j;
}

json to_json(const TheoremReport& r) {
  json j = to_json(r.spec);
  j["d"] = r.d;
  j["w"] = r.w;
  j["order"] = r.order;
  j["constant"] = r.constant;
  j["ratio"] = number_json(r.ratio);
  j["bound"] = r.bound;
  j["slack"] = number_json(r.slack);
  j["normalized_ratio"] = number_json(r.normalized_ratio);
  j["chain_bound"] = r.chain_bound;
  j["chain_ok"] = r.chain_ok;
  j["result"] = r.pass ? "PASS" : "FAIL";
  return j;
}

json to_json(const EstimateResult& r) {
  json zeros = json::array();
  for (Complex z : r.best_zeros) zeros.push_back(complex_json(z));
  json hist = json::array();
  for (const StartRecord& s : r.history) {
    hist.push_back({{"start", to_string(s.kind)},
                    {"initial_ratio", number_json(s.initial_ratio)},
                    {"best_ratio", number_json(s.best_ratio)},
                    {"iterations", s.iterations},
                    {"converged", s.converged}});
  }
  return {{"best_ratio", number_json(r.best_ratio)},
          {"best_zeros", zeros},
          {"best_start", r.best_start},
          {"converged", r.converged},
          {"order", r.order},
          {"history", hist}};
}

json to_json(const OracleResult& r) {
  json zeros = json::array();
  for (Complex z : r.zeros) zeros.push_back(complex_json(z));
  return {{"ratio", number_json(r.ratio)}, {"zeros", zeros}, {"evaluated", r.evaluated}};
}

}  // namespace turanlab
