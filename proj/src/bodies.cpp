#include "polarphi/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "json.hpp"
#include "polarphi/errors.hpp"

namespace polarphi::bodies {
namespace {

using json = nlohmann::json;

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

void require_dim(int n, const char* what) {
  if (n < 1) throw DimensionError(std::string(what) + ": dimension must be >= 1, got " + std::to_string(n));
}

BodyPtr wrap(BodySpec b) { return std::make_shared<const BodySpec>(std::move(b)); }

// max_i |x_i| · (Σ (|x_i|/max)^p)^{1/p}: finite for every p, exact at p = ∞.
double lp_norm(const double* x, std::size_t n, const Exponent& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  if (p.is_infinite() || m == 0.0) return m;
  const double pv = p.value();
  if (pv == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
    return s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(x[i]) / m, pv);
  return m * std::pow(s, 1.0 / pv);
}

double primal_gauge(const BodySpec& b, const Eigen::VectorXd& x);

double revolution_gauge(const Revolution& r, const Eigen::VectorXd& x) {
  const double t = x[0];
  const double rho = x.tail(x.size() - 1).norm();
  if (r.polar) return revolution::support(r.eval, t, rho);
  if (rho == 0.0) return std::abs(t);
  // λ ↦ λ r1(t/λ) - ρ is increasing for λ >= |t| (concavity and r1(0) = 1),
  // and r1(u) >= 1 - |u| puts the root below |t| + ρ.
  double lo = std::abs(t), hi = std::abs(t) + rho;
  const auto inside = [&](double lam) { return lam * r.eval.r(t / lam) >= rho; };
  if (lo > 0.0 && inside(lo)) return lo;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

double primal_gauge(const BodySpec& b, const Eigen::VectorXd& x) {
  return std::visit(
      overloaded{
          [&](const PBall& pb) { return lp_norm(x.data(), x.size(), pb.p); },
          [&](const Interval&) { return std::abs(x[0]); },
          [&](const Product& pr) {
            const int n = dimension(*pr.left);
            const double g[2] = {primal_gauge(*pr.left, x.head(n)),
                                 primal_gauge(*pr.right, x.tail(x.size() - n))};
            return lp_norm(g, 2, pr.p);
          },
          [&](const Revolution& r) { return revolution_gauge(r, x); },
          [&](const LinearImage& li) {
            const Eigen::VectorXd y = li.dual ? Eigen::VectorXd(li.matrix.transpose() * x)
                                              : Eigen::VectorXd(li.inverse * x);
            return primal_gauge(*li.inner, y);
          },
          [&](const Simplex& s) {
            // Facets of conv{s v_i} are <x, -n v_j> = s.
            double g = 0.0;
            for (const auto& v : s.vertices) g = std::max(g, -s.dim * v.dot(x) / s.scale);
            return g;
          },
      },
      b.body);
}

void require_point(const BodySpec& b, const Eigen::VectorXd& x) {
  if (x.size() != dimension(b)) {
    throw DimensionError("point has dimension " + std::to_string(x.size()) + ", body has " +
                         std::to_string(dimension(b)));
  }
}

// ---- JSON ----------------------------------------------------------------

[[noreturn]] void fail(const std::string& what, const std::string& ptr) {
  throw ParseError(what, ptr.empty() ? "/" : ptr);
}

const json& field(const json& j, const char* key, const std::string& ptr) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing \"") + key + "\"", ptr);
  return *it;
}

void allow_only(const json& j, std::initializer_list<const char*> keys, const std::string& ptr) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      fail("unknown field \"" + it.key() + "\"", ptr + "/" + it.key());
    }
  }
}

int read_dim(const json& j, const std::string& ptr) {
  const json& d = field(j, "dim", ptr);
  if (!d.is_number_integer()) fail("\"dim\" must be an integer", ptr + "/dim");
  const long long v = d.get<long long>();
  if (v < 1) throw DimensionError("dimension must be >= 1 at " + ptr + "/dim, got " + std::to_string(v));
  if (v > 100000) throw DimensionError("dimension too large at " + ptr + "/dim");
  return int(v);
}

Exponent read_p(const json& j, const std::string& ptr) {
  const json& p = field(j, "p", ptr);
  try {
    if (p.is_string()) return Exponent::parse(p.get<std::string>());
    if (p.is_number()) return Exponent{p.get<double>()};
  } catch (const DomainError& e) {
    fail(e.what(), ptr + "/p");
  }
  fail("\"p\" must be a number or \"inf\"", ptr + "/p");
}

bool read_flag(const json& j, const char* key, const std::string& ptr) {
  auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) fail(std::string("\"") + key + "\" must be a boolean", ptr + "/" + key);
  return it->get<bool>();
}

revolution::RevolutionProfile read_profile(const json& p, const std::string& ptr) {
  try {
    if (p.is_string()) return revolution::RevolutionProfile::named(p.get<std::string>());
    if (p.is_object()) {
      allow_only(p, {"grid"}, ptr);
      const json& g = field(p, "grid", ptr);
      if (!g.is_array()) fail("\"grid\" must be an array", ptr + "/grid");
      std::vector<std::pair<double, double>> knots;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const json& k = g[i];
        if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
          fail("grid knots are [t, r] number pairs", ptr + "/grid/" + std::to_string(i));
        }
        knots.emplace_back(k[0].get<double>(), k[1].get<double>());
      }
      return revolution::RevolutionProfile::grid(std::move(knots));
    }
  } catch (const DomainError& e) {
    fail(e.what(), ptr);
  }
  fail("\"profile\" must be a name or {\"grid\": [...]}", ptr);
}

BodyPtr body_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) fail("body must be an object", ptr);
  const json& type = field(j, "type", ptr);
  if (!type.is_string()) fail("\"type\" must be a string", ptr + "/type");
  const std::string t = type.get<std::string>();

  if (t == "pball") {
    allow_only(j, {"type", "dim", "p"}, ptr);
    return make_pball(read_dim(j, ptr), read_p(j, ptr));
  }
  if (t == "interval") {
    allow_only(j, {"type"}, ptr);
    return make_interval();
  }
  if (t == "product") {
    allow_only(j, {"type", "p", "left", "right"}, ptr);
    const Exponent p = read_p(j, ptr);
    auto left = body_from_json(field(j, "left", ptr), ptr + "/left");
    auto right = body_from_json(field(j, "right", ptr), ptr + "/right");
    return make_product(p, std::move(left), std::move(right));
  }
  if (t == "revolution") {
    allow_only(j, {"type", "dim", "profile", "polar"}, ptr);
    const int n = read_dim(j, ptr);
    if (n < 2) throw DimensionError("revolution body needs dim >= 2 at " + ptr + "/dim");
    return make_revolution(n, read_profile(field(j, "profile", ptr), ptr + "/profile"),
                           read_flag(j, "polar", ptr));
  }
  if (t == "simplex") {
    allow_only(j, {"type", "dim", "scale"}, ptr);
    const int n = read_dim(j, ptr);
    double scale = 1.0;
    if (auto it = j.find("scale"); it != j.end()) {
      if (!it->is_number() || !std::isfinite(it->get<double>()) || it->get<double>() == 0.0) {
        fail("\"scale\" must be a nonzero number", ptr + "/scale");
      }
      scale = it->get<double>();
    }
    return make_simplex(n, scale);
  }
  if (t == "linear") {
    allow_only(j, {"type", "matrix", "inner", "dual"}, ptr);
    const json& m = field(j, "matrix", ptr);
    if (!m.is_array() || m.empty()) fail("\"matrix\" must be a non-empty array of rows", ptr + "/matrix");
    const std::size_t rows = m.size();
    Eigen::MatrixXd T(rows, rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const std::string rp = ptr + "/matrix/" + std::to_string(i);
      if (!m[i].is_array()) fail("matrix rows must be arrays", rp);
      if (m[i].size() != rows) {
        throw DimensionError("matrix must be square: row " + std::to_string(i) + " has " +
                             std::to_string(m[i].size()) + " entries, expected " + std::to_string(rows));
      }
      for (std::size_t k = 0; k < rows; ++k) {
        if (!m[i][k].is_number()) fail("matrix entries must be numbers", rp + "/" + std::to_string(k));
        T(i, k) = m[i][k].get<double>();
      }
    }
    auto inner = body_from_json(field(j, "inner", ptr), ptr + "/inner");
    return make_linear(std::move(T), std::move(inner), read_flag(j, "dual", ptr));
  }
  fail("unknown body type \"" + t + "\"", ptr + "/type");
}

json p_json(const Exponent& p) { return p.is_infinite() ? json("inf") : json(p.value()); }

json body_to_json(const BodySpec& b) {
  return std::visit(
      overloaded{
          [](const PBall& pb) { return json{{"type", "pball"}, {"dim", pb.dim}, {"p", p_json(pb.p)}}; },
          [](const Interval&) { return json{{"type", "interval"}}; },
          [](const Product& pr) {
            return json{{"type", "product"}, {"p", p_json(pr.p)}, {"left", body_to_json(*pr.left)},
                        {"right", body_to_json(*pr.right)}};
          },
          [](const Revolution& r) {
            json prof;
            if (r.profile.kind() == revolution::RevolutionProfile::Kind::grid) {
              json g = json::array();
              for (auto [t, v] : r.profile.knots()) g.push_back({t, v});
              prof = json{{"grid", g}};
            } else {
              prof = r.profile.name();
            }
            json j{{"type", "revolution"}, {"dim", r.dim}, {"profile", prof}};
            if (r.polar) j["polar"] = true;
            return j;
          },
          [](const LinearImage& li) {
            json m = json::array();
            for (Eigen::Index i = 0; i < li.matrix.rows(); ++i) {
              json row = json::array();
              for (Eigen::Index k = 0; k < li.matrix.cols(); ++k) row.push_back(li.matrix(i, k));
              m.push_back(row);
            }
            json j{{"type", "linear"}, {"matrix", m}, {"inner", body_to_json(*li.inner)}};
            if (li.dual) j["dual"] = true;
            return j;
          },
          [](const Simplex& s) {
            json j{{"type", "simplex"}, {"dim", s.dim}};
            if (s.scale != 1.0) j["scale"] = s.scale;
            return j;
          },
      },
      b.body);
}

}  // namespace

std::vector<Eigen::VectorXd> simplex_vertices(int n) {
  require_dim(n, "simplex_vertices");
  if (n == 1) return {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
  const auto lower = simplex_vertices(n - 1);
  std::vector<Eigen::VectorXd> v;
  Eigen::VectorXd first = Eigen::VectorXd::Zero(n);
  first[0] = 1.0;
  v.push_back(first);
  const double c = std::sqrt((1.0 - 1.0 / n) * (1.0 + 1.0 / n));
  for (const auto& w : lower) {
    Eigen::VectorXd u(n);
    u[0] = -1.0 / n;
    u.tail(n - 1) = c * w;
    v.push_back(u);
  }
  return v;
}

BodyPtr make_pball(int dim, Exponent p) {
  require_dim(dim, "pball");
  return wrap({PBall{dim, p}});
}

BodyPtr make_interval() { return wrap({Interval{}}); }

BodyPtr make_product(Exponent p, BodyPtr left, BodyPtr right) {
  if (!left || !right) throw DimensionError("product: missing factor");
  return wrap({Product{p, std::move(left), std::move(right)}});
}

BodyPtr make_revolution(int dim, revolution::RevolutionProfile profile, bool polar) {
  if (dim < 2) throw DimensionError("revolution body needs dim >= 2, got " + std::to_string(dim));
  return wrap({Revolution{dim, profile, polar, profile.evaluator()}});
}

BodyPtr make_linear(Eigen::MatrixXd matrix, BodyPtr inner, bool dual) {
  if (!inner) throw DimensionError("linear: missing inner body");
  const int n = dimension(*inner);
  if (matrix.rows() != n || matrix.cols() != n) {
    throw DimensionError("linear: matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + ", inner body has dimension " + std::to_string(n));
  }
  if (!matrix.allFinite()) throw SingularMatrixError("linear: matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  const auto& sv = svd.singularValues();
  const double smax = sv[0], smin = sv[sv.size() - 1];
  if (!(smin > 1e-12 * smax)) {
    throw SingularMatrixError("linear: matrix is singular to working precision (sigma_min/sigma_max = " +
                              std::to_string(smax > 0 ? smin / smax : 0.0) + ")");
  }
  LinearImage li;
  li.inverse = matrix.inverse();
  li.matrix = std::move(matrix);
  li.inner = std::move(inner);
  li.dual = dual;
  li.condition = smax / smin;
  return wrap({std::move(li)});
}

BodyPtr make_simplex(int dim, double scale) {
  require_dim(dim, "simplex");
  if (!std::isfinite(scale) || scale == 0.0) throw DomainError("simplex: scale must be finite and nonzero");
  return wrap({Simplex{dim, scale, simplex_vertices(dim)}});
}

int dimension(const BodySpec& b) {
  return std::visit(overloaded{
                        [](const PBall& pb) { return pb.dim; },
                        [](const Interval&) { return 1; },
                        [](const Product& pr) { return dimension(*pr.left) + dimension(*pr.right); },
                        [](const Revolution& r) { return r.dim; },
                        [](const LinearImage& li) { return dimension(*li.inner); },
                        [](const Simplex& s) { return s.dim; },
                    },
                    b.body);
}

bool is_symmetric(const BodySpec& b) {
  return std::visit(overloaded{
                        [](const Product& pr) { return is_symmetric(*pr.left) && is_symmetric(*pr.right); },
                        [](const LinearImage& li) { return is_symmetric(*li.inner); },
                        [](const Simplex& s) { return s.dim == 1; },
                        [](const auto&) { return true; },
                    },
                    b.body);
}

BodyPtr parse_body(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON: " + std::string(e.what()), "byte " + std::to_string(e.byte));
  }
  return body_from_json(j, "");
}

std::string serialize(const BodySpec& b) { return body_to_json(b).dump(); }

BodyPtr polar_of(const BodyPtr& b) {
  return std::visit(
      overloaded{
          [](const PBall& pb) { return make_pball(pb.dim, pb.p.dual()); },
          [](const Interval&) { return make_interval(); },
          [](const Product& pr) { return make_product(pr.p.dual(), polar_of(pr.left), polar_of(pr.right)); },
          [](const Revolution& r) { return make_revolution(r.dim, r.profile, !r.polar); },
          [](const LinearImage& li) {
            LinearImage out = li;
            out.inner = polar_of(li.inner);
            out.dual = !li.dual;
            return wrap({std::move(out)});
          },
          [](const Simplex& s) { return make_simplex(s.dim, -s.dim / s.scale); },
      },
      b->body);
}

double gauge(const BodyPtr& b, Side side, const Eigen::VectorXd& x) {
  require_point(*b, x);
  return primal_gauge(side == Side::primal ? *b : *polar_of(b), x);
}

bool membership(const BodyPtr& b, Side side, const Eigen::VectorXd& x) { return gauge(b, side, x) <= 1.0; }

double bounding_radius(const BodyPtr& b, Side side) {
  if (side == Side::polar) return bounding_radius(polar_of(b), Side::primal);
  return std::visit(
      overloaded{
          [](const PBall& pb) {
            // Extreme points (±1, ..., ±1)-like for p > 2, coordinate vectors for p <= 2.
            if (pb.p.is_infinite()) return std::sqrt(double(pb.dim));
            const double p = pb.p.value();
            return p <= 2.0 ? 1.0 : std::pow(double(pb.dim), 0.5 - 1.0 / p);
          },
          [](const Interval&) { return 1.0; },
          [](const Product& pr) {
            return std::hypot(bounding_radius(pr.left, Side::primal), bounding_radius(pr.right, Side::primal));
          },
          [](const Revolution&) { return std::sqrt(2.0); },
          [](const LinearImage& li) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(li.matrix);
            const auto& sv = svd.singularValues();
            const double op = li.dual ? 1.0 / sv[sv.size() - 1] : sv[0];
            return op * bounding_radius(li.inner, Side::primal);
          },
          [](const Simplex& s) { return std::abs(s.scale); },
      },
      b->body);
}

double cube_halfwidth(const BodyPtr& b, Side side) {
  if (side == Side::polar) return cube_halfwidth(polar_of(b), Side::primal);
  const double box = std::visit(
      overloaded{
          [](const PBall&) { return 1.0; },
          [](const Interval&) { return 1.0; },
          [](const Product& pr) {
            return std::max(cube_halfwidth(pr.left, Side::primal), cube_halfwidth(pr.right, Side::primal));
          },
          // |t| <= 1 and |x| <= r(t) <= 1 on both sides.
          [](const Revolution&) { return 1.0; },
          [](const LinearImage& li) {
            const Eigen::MatrixXd M = li.dual ? Eigen::MatrixXd(li.inverse.transpose()) : li.matrix;
            return M.cwiseAbs().rowwise().sum().maxCoeff() * cube_halfwidth(li.inner, Side::primal);
          },
          [](const Simplex& s) {
            double m = 0.0;
            for (const auto& v : s.vertices) m = std::max(m, v.cwiseAbs().maxCoeff());
            return std::abs(s.scale) * m;
          },
      },
      b->body);
  return std::min(box, bounding_radius(b, Side::primal));
}

}  // namespace polarphi::bodies
