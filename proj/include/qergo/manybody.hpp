#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "qergo/channel.hpp"
#include "qergo/constructions.hpp"
#include "qergo/tensor.hpp"

namespace qergo {

enum class Model { SR, SYK };

std::string_view to_string(Model m);
Model parse_model(std::string_view name);

// Coupling variance convention for H_SYK:
//   HalfChain: <|J_ij;kl|^2> = J^2 / (L/2)^3  (default)
//   FullChain: <|J_ij;kl|^2> = J^2 / L^3
enum class SykNormalization { HalfChain, FullChain };

std::string_view to_string(SykNormalization n);
SykNormalization parse_syk_normalization(std::string_view name);

struct ManyBodySpec {
  Model model = Model::SR;
  int n_sites = 8;
  double V = 1.0;
  double h = 0.0;
  double alpha = std::numbers::phi - 1.0;  // (sqrt 5 - 1) / 2
  double J = 1.0;
  std::uint64_t seed = 0;
  int realizations = 1;
  int max_sites = 12;
  SykNormalization normalization = SykNormalization::HalfChain;

  // Throws ValidationError on odd L, L out of [2, max_sites], non-finite
  // couplings or realizations < 1.
  void validate() const;
  int system_sites() const { return n_sites / 2; }
  Index system_dim() const { return Index{1} << system_sites(); }
  double syk_coupling_variance() const;
};

// Jordan-Wigner fermions c_i = (prod_{j<i} Z_j) sigma^-_i on 2^L states with
// |0> empty and |1> occupied per site; site 0 is the slowest tensor factor.
struct FockOperatorSet {
  int n_sites = 0;
  std::vector<ComplexMatrix> annihilation;

  ComplexMatrix creation(int site) const { return annihilation.at(static_cast<std::size_t>(site)).adjoint(); }
  ComplexMatrix number(int site) const;
  ComplexMatrix total_number() const;
};

FockOperatorSet build_fock_operators(int n_sites, int max_sites = 12);

// -sum_{i<L} (c_i^dag c_{i+1} + h.c.) + V sum_{i<L} n_i n_{i+1} + h sum_i cos(2 pi alpha i) n_i,
// open boundary, potential sites numbered 1..L.
ComplexMatrix build_h_sr(const ManyBodySpec& spec);

// Antisymmetrized complex couplings J[i][j][k][l] with J_ijkl = -J_jikl =
// -J_ijlk and J_ijkl = conj(J_klij). Entries for canonical tuples (i<j,
// k<l, pair (i,j) <= pair (k,l)) are drawn independently: real N(0, var)
// on the Hermitian diagonal, complex with var/2 per component otherwise.
class SykCouplings {
 public:
  SykCouplings(int n_sites, double variance, Rng& rng);

  int n_sites() const { return n_; }
  Complex operator()(int i, int j, int k, int l) const {
    return values_[static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }

 private:
  Complex& at(int i, int j, int k, int l) {
    return values_[static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }

  int n_;
  std::vector<Complex> values_;
};

// sum_{ijkl} J_ijkl c_i^dag c_j^dag c_k c_l.
ComplexMatrix syk_hamiltonian(const SykCouplings& couplings);
// Draws realization `realization_index` with seed spec.seed + realization_index.
ComplexMatrix build_h_syk(const ManyBodySpec& spec, int realization_index);

ComplexMatrix build_hamiltonian(const ManyBodySpec& spec, int realization_index);

// (1/d) [U^{R2} U^{R2 dagger}]^{R2}: the dilation with a maximally mixed bath.
ComplexMatrix maximally_mixed_dilation(const ComplexMatrix& u);

struct ManyBodyChannel {
  ComplexMatrix unitary;  // e^{+iH}
  Channel channel;        // first L/2 sites system, last L/2 sites bath
};

ManyBodyChannel manybody_channel(const ManyBodySpec& spec, int realization_index);

// Odd sites (1, 3, ...) of an l_sys-site system occupied.
DensityMatrix neel_state(int l_sys);

}  // namespace qergo
