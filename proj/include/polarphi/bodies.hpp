#pragma once

// Convex bodies containing the origin, described structurally so that the
// polar of a description is again a description:
//
//   B_p^n            -> B_q^n
//   A ×_p B          -> A° ×_q B°
//   T K              -> T^{-T} K°
//   revolution r1    -> revolution with the polar profile
//   simplex (scale s) -> simplex (scale -n/s)

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polarphi/exponent.hpp"
#include "polarphi/revolution.hpp"

namespace polarphi::bodies {

enum class Side { primal, polar };

struct BodySpec;
using BodyPtr = std::shared_ptr<const BodySpec>;

struct PBall {
  int dim = 1;
  Exponent p{2.0};
};

struct Product {
  Exponent p{2.0};
  BodyPtr left, right;
};

struct Revolution {
  int dim = 2;
  revolution::RevolutionProfile profile = revolution::RevolutionProfile::named("ball");
  bool polar = false;  // the body is the polar of the profile's body
  revolution::Profile eval = profile.evaluator();
};

// T K when dual is false, T^{-T} K when dual is true. T is stored once; its
// inverse is cached for the primal gauge.
struct LinearImage {
  Eigen::MatrixXd matrix;
  BodyPtr inner;
  bool dual = false;
  Eigen::MatrixXd inverse;
  double condition = 1.0;  // σ_max / σ_min of T
};

// Regular simplex with vertices scale·v_i, where v_0..v_n are unit vectors
// with pairwise inner products -1/n. The only non-symmetric body here.
struct Simplex {
  int dim = 2;
  double scale = 1.0;
  std::vector<Eigen::VectorXd> vertices;  // unit v_i, not scaled
};

struct Interval {};

struct BodySpec {
  std::variant<PBall, Product, Revolution, LinearImage, Simplex, Interval> body;
};

// Validating constructors; these throw DimensionError / SingularMatrixError.
BodyPtr make_pball(int dim, Exponent p);
BodyPtr make_product(Exponent p, BodyPtr left, BodyPtr right);
BodyPtr make_revolution(int dim, revolution::RevolutionProfile profile, bool polar = false);
BodyPtr make_linear(Eigen::MatrixXd matrix, BodyPtr inner, bool dual = false);
BodyPtr make_simplex(int dim, double scale = 1.0);
BodyPtr make_interval();

int dimension(const BodySpec& b);
bool is_symmetric(const BodySpec& b);

// JSON body description. Syntax errors carry a 1-based byte offset, semantic
// errors a JSON pointer.
BodyPtr parse_body(std::string_view text);
// Canonical form: sorted keys, defaults omitted, p as a number or "inf".
std::string serialize(const BodySpec& b);

BodyPtr polar_of(const BodyPtr& b);

// Minkowski functional of the body (side = primal) or of its polar.
double gauge(const BodyPtr& b, Side side, const Eigen::VectorXd& x);
// Closed bodies: the boundary counts as inside.
bool membership(const BodyPtr& b, Side side, const Eigen::VectorXd& x);

// Euclidean radius of a ball about the origin containing the body.
double bounding_radius(const BodyPtr& b, Side side);
// Half-width of an axis-aligned cube about the origin containing the body;
// never larger than bounding_radius.
double cube_halfwidth(const BodyPtr& b, Side side);

// v_0 .. v_n in R^n, unit length, pairwise inner product -1/n.
std::vector<Eigen::VectorXd> simplex_vertices(int n);

}  // namespace polarphi::bodies
