#include "qergo/manybody.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "qergo/errors.hpp"

namespace qergo {

namespace {

using State = std::uint64_t;

// Fermionic action on occupation-number basis states. Site 0 maps to the
// most significant bit so the integer label equals the tensor-product index.
class FermionOps {
 public:
  explicit FermionOps(int n_sites) : n_(n_sites) {}

  State bit(int site) const { return State{1} << (n_ - 1 - site); }
  bool occupied(State s, int site) const { return (s & bit(site)) != 0; }

  // (-1)^(number of occupied sites before `site`).
  double string_sign(State s, int site) const {
    return (std::popcount(s >> (n_ - site)) & 1) ? -1.0 : 1.0;
  }

  bool annihilate(State& s, double& sign, int site) const {
    if (!occupied(s, site)) return false;
    sign *= string_sign(s, site);
    s ^= bit(site);
    return true;
  }

  bool create(State& s, double& sign, int site) const {
    if (occupied(s, site)) return false;
    sign *= string_sign(s, site);
    s |= bit(site);
    return true;
  }

 private:
  int n_;
};

void check_sites(int n_sites, int max_sites) {
  if (n_sites < 1 || n_sites > max_sites) {
    throw ValidationError("number of sites " + std::to_string(n_sites) + " outside [1, " +
                          std::to_string(max_sites) + "]");
  }
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::SR ? "sr" : "syk"; }

Model parse_model(std::string_view name) {
  if (name == "sr") return Model::SR;
  if (name == "syk") return Model::SYK;
  throw ValidationError("unknown model '" + std::string(name) + "' (expected sr or syk)");
}

std::string_view to_string(SykNormalization n) {
  return n == SykNormalization::HalfChain ? "half-chain" : "full-chain";
}

SykNormalization parse_syk_normalization(std::string_view name) {
  if (name == "half-chain") return SykNormalization::HalfChain;
  if (name == "full-chain") return SykNormalization::FullChain;
  throw ValidationError("unknown SYK normalization '" + std::string(name) + "'");
}

void ManyBodySpec::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw ValidationError("L must be an even integer >= 2, got " + std::to_string(n_sites));
  }
  if (n_sites > max_sites) {
    throw ValidationError("L = " + std::to_string(n_sites) + " exceeds the configured maximum " +
                          std::to_string(max_sites));
  }
  if (!std::isfinite(V) || !std::isfinite(h) || !std::isfinite(J) || !std::isfinite(alpha)) {
    throw ValidationError("model parameters must be finite");
  }
  if (realizations < 1) throw ValidationError("realizations must be at least 1");
}

double ManyBodySpec::syk_coupling_variance() const {
  const double n = normalization == SykNormalization::HalfChain ? n_sites / 2.0 : n_sites;
  return J * J / (n * n * n);
}

ComplexMatrix FockOperatorSet::number(int site) const {
  const auto& c = annihilation.at(static_cast<std::size_t>(site));
  return c.adjoint() * c;
}

ComplexMatrix FockOperatorSet::total_number() const {
  ComplexMatrix n = ComplexMatrix::Zero(Index{1} << n_sites, Index{1} << n_sites);
  for (int i = 0; i < n_sites; ++i) n += number(i);
  return n;
}

FockOperatorSet build_fock_operators(int n_sites, int max_sites) {
  check_sites(n_sites, max_sites);
  ComplexMatrix z(2, 2), lower(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  lower << 0.0, 1.0, 0.0, 0.0;  // |0><1|: removes a particle
  FockOperatorSet ops;
  ops.n_sites = n_sites;
  for (int i = 0; i < n_sites; ++i) {
    ComplexMatrix c = ComplexMatrix::Identity(1, 1);
    for (int j = 0; j < n_sites; ++j) {
      c = kron(c, j < i ? z : (j == i ? lower : identity(2)));
    }
    ops.annihilation.push_back(std::move(c));
  }
  return ops;
}

ComplexMatrix build_h_sr(const ManyBodySpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const FermionOps ops(n);
  const Index dim = Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  std::vector<double> potential(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    potential[static_cast<std::size_t>(i)] =
        spec.h * std::cos(2.0 * std::numbers::pi * spec.alpha * (i + 1));

  for (State s = 0; s < static_cast<State>(dim); ++s) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!ops.occupied(s, i)) continue;
      diag += potential[static_cast<std::size_t>(i)];
      if (i + 1 < n && ops.occupied(s, i + 1)) diag += spec.V;
    }
    h(static_cast<Index>(s), static_cast<Index>(s)) += diag;
    for (int i = 0; i + 1 < n; ++i) {
      for (auto [to, from] : {std::pair{i, i + 1}, std::pair{i + 1, i}}) {
        State t = s;
        double sign = 1.0;
        if (ops.annihilate(t, sign, from) && ops.create(t, sign, to)) {
          h(static_cast<Index>(t), static_cast<Index>(s)) -= sign;
        }
      }
    }
  }
  return h;
}

SykCouplings::SykCouplings(int n_sites, double variance, Rng& rng)
    : n_(n_sites), values_(static_cast<std::size_t>(n_sites) * n_sites * n_sites * n_sites) {
  if (n_sites < 2) throw ValidationError("SYK needs at least two sites");
  if (!(variance > 0.0)) throw ValidationError("SYK coupling variance must be positive");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) pairs.emplace_back(i, j);

  auto fill = [this](std::pair<int, int> ij, std::pair<int, int> kl, Complex v) {
    const auto [i, j] = ij;
    const auto [k, l] = kl;
    at(i, j, k, l) = v;
    at(j, i, k, l) = -v;
    at(i, j, l, k) = -v;
    at(j, i, l, k) = v;
  };
  std::normal_distribution<double> diag(0.0, std::sqrt(variance));
  std::normal_distribution<double> off(0.0, std::sqrt(variance / 2.0));
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a; b < pairs.size(); ++b) {
      Complex v;
      if (a == b) {
        v = Complex(diag(rng), 0.0);
      } else {
        const double re = off(rng);
        const double im = off(rng);
        v = Complex(re, im);
      }
      fill(pairs[a], pairs[b], v);
      if (a != b) fill(pairs[b], pairs[a], std::conj(v));
    }
  }
}

ComplexMatrix syk_hamiltonian(const SykCouplings& couplings) {
  const int n = couplings.n_sites();
  const FermionOps ops(n);
  const Index dim = Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  // Antisymmetry folds the sum over all (i, j, k, l) onto i < j, k < l with weight 4.
  for (State s = 0; s < static_cast<State>(dim); ++s) {
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        State mid = s;
        double sign_kl = 1.0;
        if (!ops.annihilate(mid, sign_kl, l) || !ops.annihilate(mid, sign_kl, k)) continue;
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            State t = mid;
            double sign = sign_kl;
            if (!ops.create(t, sign, j) || !ops.create(t, sign, i)) continue;
            h(static_cast<Index>(t), static_cast<Index>(s)) += 4.0 * sign * couplings(i, j, k, l);
          }
        }
      }
    }
  }
  return h;
}

ComplexMatrix build_h_syk(const ManyBodySpec& spec, int realization_index) {
  spec.validate();
  if (realization_index < 0) throw ValidationError("realization index must be non-negative");
  Rng rng(spec.seed + static_cast<std::uint64_t>(realization_index));
  const SykCouplings couplings(spec.n_sites, spec.syk_coupling_variance(), rng);
  return syk_hamiltonian(couplings);
}

ComplexMatrix build_hamiltonian(const ManyBodySpec& spec, int realization_index) {
  return spec.model == Model::SR ? build_h_sr(spec) : build_h_syk(spec, realization_index);
}

ComplexMatrix maximally_mixed_dilation(const ComplexMatrix& u) {
  const auto idx = square_bipartition(u);
  const ComplexMatrix ur = reshuffle_r2(u, idx);
  const ComplexMatrix gram = ur * ur.adjoint();
  return reshuffle_r2(gram, idx) / static_cast<double>(idx.d1);
}

ManyBodyChannel manybody_channel(const ManyBodySpec& spec, int realization_index) {
  spec.validate();
  ComplexMatrix u = matrix_exponential_i(build_hamiltonian(spec, realization_index), +1);
  if (unitarity_defect(u) > kTolerances.unitarity) {
    throw NumericalError("manybody_channel: e^{iH} failed the unitarity check");
  }
  Channel ch = Channel::from_superoperator(maximally_mixed_dilation(u));
  return ManyBodyChannel{std::move(u), std::move(ch)};
}

DensityMatrix neel_state(int l_sys) {
  const auto ops = build_fock_operators(l_sys);
  ComplexVector psi = ComplexVector::Zero(Index{1} << l_sys);
  psi(0) = 1.0;
  for (int site = 0; site < l_sys; site += 2) psi = ops.creation(site) * psi;
  return DensityMatrix::pure(psi);
}

}  // namespace qergo
