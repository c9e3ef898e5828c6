#include "qergo/constructions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qergo/entanglement.hpp"
#include "qergo/errors.hpp"

namespace qergo {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
const Complex kI{0.0, 1.0};

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

}  // namespace

bool WeylPoint::valid(double tol) const {
  return std::abs(z) <= y + tol && y <= x + tol && x <= kQuarterPi + tol && y >= -tol;
}

WeylPoint make_weyl_point(double x, double y, double z) {
  WeylPoint p{x, y, z};
  if (!p.valid()) {
    throw ValidationError("Weyl point (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                          std::to_string(z) + ") violates 0 <= |z| <= y <= x <= pi/4");
  }
  return p;
}

namespace gates {

WeylPoint local_point() { return {0.0, 0.0, 0.0}; }
WeylPoint cnot_point() { return {kQuarterPi, 0.0, 0.0}; }
WeylPoint dcnot_point() { return {kQuarterPi, kQuarterPi, 0.0}; }
WeylPoint swap_point() { return {kQuarterPi, kQuarterPi, kQuarterPi}; }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

ComplexMatrix swap() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

}  // namespace gates

ComplexMatrix weyl_generator(const WeylPoint& p) {
  using namespace gates;
  return p.x * kron(pauli_x(), pauli_x()) + p.y * kron(pauli_y(), pauli_y()) +
         p.z * kron(pauli_z(), pauli_z());
}

ComplexMatrix weyl_unitary(const WeylPoint& p) {
  if (!p.valid()) make_weyl_point(p.x, p.y, p.z);
  const double cm = std::cos(p.x - p.y), sm = std::sin(p.x - p.y);
  const double cp = std::cos(p.x + p.y), sp = std::sin(p.x + p.y);
  const Complex em = std::polar(1.0, -p.z);
  const Complex ep = std::polar(1.0, p.z);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = em * cm;
  u(0, 3) = -kI * em * sm;
  u(1, 1) = ep * cp;
  u(1, 2) = -kI * ep * sp;
  u(2, 1) = -kI * ep * sp;
  u(2, 2) = ep * cp;
  u(3, 0) = -kI * em * sm;
  u(3, 3) = em * cm;
  return u;
}

std::array<double, 4> weyl_channel_spectrum_analytic(const WeylPoint& p) {
  if (!p.valid()) make_weyl_point(p.x, p.y, p.z);
  const double l1 = 0.5 * (std::cos(2.0 * (p.x + p.y)) + std::cos(2.0 * (p.x - p.y)));
  const double l2 = std::cos(2.0 * p.y) * std::cos(2.0 * p.z);
  const double l3 = std::cos(2.0 * p.x) * std::cos(2.0 * p.z);
  return {1.0, l1, l2, l3};
}

std::array<ComplexVector, 4> weyl_bell_vectors() {
  const double r = 1.0 / std::sqrt(2.0);
  std::array<ComplexVector, 4> phi;
  for (auto& v : phi) v = ComplexVector::Zero(4);
  phi[0](0) = r; phi[0](3) = r;
  phi[1](0) = r; phi[1](3) = -r;
  phi[2](1) = r; phi[2](2) = r;
  phi[3](1) = r; phi[3](2) = -r;
  return phi;
}

std::string_view to_string(WeylLine line) {
  switch (line) {
    case WeylLine::LocalCnot: return "local-cnot";
    case WeylLine::CnotDcnot: return "cnot-dcnot";
    case WeylLine::DcnotSwap: return "dcnot-swap";
    case WeylLine::LocalDcnot: return "local-dcnot";
    case WeylLine::LocalSwap: return "local-swap";
  }
  return "unknown";
}

WeylLine parse_weyl_line(std::string_view name) {
  for (auto line : {WeylLine::LocalCnot, WeylLine::CnotDcnot, WeylLine::DcnotSwap,
                    WeylLine::LocalDcnot, WeylLine::LocalSwap}) {
    if (name == to_string(line)) return line;
  }
  if (name == "swap-dcnot") return WeylLine::DcnotSwap;
  throw ValidationError("unknown Weyl line '" + std::string(name) + "'");
}

std::pair<WeylPoint, WeylPoint> weyl_line_endpoints(WeylLine line) {
  using namespace gates;
  switch (line) {
    case WeylLine::LocalCnot: return {local_point(), cnot_point()};
    case WeylLine::CnotDcnot: return {cnot_point(), dcnot_point()};
    case WeylLine::DcnotSwap: return {dcnot_point(), swap_point()};
    case WeylLine::LocalDcnot: return {local_point(), dcnot_point()};
    case WeylLine::LocalSwap: return {local_point(), swap_point()};
  }
  throw ValidationError("unknown Weyl line");
}

WeylLinePoint evaluate_weyl_point(const WeylPoint& p, double epsilon) {
  WeylLinePoint out;
  out.point = p;
  out.analytic = weyl_channel_spectrum_analytic(p);
  const ComplexMatrix u = weyl_unitary(p);
  const Channel ch = channel_from_unitary(u, DensityMatrix::maximally_mixed(2));
  out.numeric = spectrum(ch);
  out.verdict = classify(out.numeric, epsilon);
  const std::vector<Complex> analytic(out.analytic.begin(), out.analytic.end());
  out.analytic_deviation = multiset_distance(analytic, out.numeric.values);
  out.entanglement = operator_entanglement(u);
  return out;
}

std::vector<WeylLinePoint> weyl_line(const WeylPoint& start, const WeylPoint& end, int steps,
                                     double epsilon) {
  if (steps < 2) throw ValidationError("weyl_line: steps must be at least 2");
  make_weyl_point(start.x, start.y, start.z);
  make_weyl_point(end.x, end.y, end.z);
  std::vector<WeylLinePoint> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(steps - 1);
    const WeylPoint p{start.x + t * (end.x - start.x), start.y + t * (end.y - start.y),
                      start.z + t * (end.z - start.z)};
    out.push_back(evaluate_weyl_point(p, epsilon));
  }
  return out;
}

BlockDiagonalChannel block_diagonal_channel(const BlockDiagonalSpec& spec) {
  const Index d = spec.d;
  if (d < 1 || static_cast<Index>(spec.blocks.size()) != d) {
    throw DimensionError("block_diagonal_channel: need exactly d blocks of size d x d");
  }
  ComplexMatrix u = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    const auto& b = spec.blocks[static_cast<std::size_t>(i)];
    if (b.rows() != d || b.cols() != d) {
      throw DimensionError("block_diagonal_channel: block " + std::to_string(i) + " is " +
                           std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    if (unitarity_defect(b) > kTolerances.unitarity) {
      throw ValidationError("block_diagonal_channel: block " + std::to_string(i) +
                            " is not unitary");
    }
    u.block(i * d, i * d, d, d) = b;
  }
  std::vector<Complex> analytic;
  analytic.reserve(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      analytic.push_back((spec.blocks[static_cast<std::size_t>(i)] *
                          spec.blocks[static_cast<std::size_t>(j)].adjoint())
                             .trace() /
                         static_cast<double>(d));
  Channel ch = channel_from_unitary(u, DensityMatrix::maximally_mixed(d));
  return BlockDiagonalChannel{std::move(u), std::move(ch), std::move(analytic)};
}

ComplexMatrix haar_random_unitary(Index n, Rng& rng) {
  if (n < 1) throw ValidationError("haar_random_unitary: n must be positive");
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix haar_random_unitary(Index n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_unitary(n, rng);
}

DensityMatrix random_density_matrix(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix random_pure_state(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, 1, rng);
  return DensityMatrix::pure(g.col(0));
}

}  // namespace qergo
