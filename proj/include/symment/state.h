// Copyright 2026 The Symment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYMMENT_STATE_H
#define SYMMENT_STATE_H

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace symment {

using Complex = std::complex<double>;

/// Normalized pure state on n sites of local dimension d.
///
/// Site 0 is the leftmost tensor factor: the flat amplitude index is
/// sum_x digit_x * d^(n-1-x).
class PureState {
   public:
    /// Validates the shape and the norm. A squared norm within 1e-9 of 1 is
    /// renormalized once; anything further away is rejected with InputError.
    PureState(int n, int d, std::vector<Complex> amplitudes);

    int num_sites() const {
        return n_;
    }
    int local_dim() const {
        return d_;
    }
    uint64_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    const Complex &operator[](uint64_t index) const {
        return amplitudes_[index];
    }

    /// Digit of site `site` in flat index `index`.
    int digit(uint64_t index, int site) const;

    std::string to_json() const;
    static PureState from_json(const std::string &text);
    static PureState load(const std::string &path);

   private:
    int n_;
    int d_;
    std::vector<Complex> amplitudes_;
};

/// sin(theta)|0..0> + cos(theta)|1..1> on n qubits.
PureState make_ghz_theta(int n, double theta);
/// GHZ state, theta = pi/4.
PureState make_ghz(int n);
/// Equal superposition of the n weight-1 bit strings.
PureState make_w(int n);
/// Equal superposition of all weight-e bit strings, amplitude C(n,e)^(-1/2).
PureState make_dicke(int n, int e);
/// |0...0> on n sites of dimension d.
PureState make_product(int n, int d = 2);
/// Normalized iid complex Gaussian amplitudes, deterministic in `seed`.
PureState make_haar_random(int n, int d, uint64_t seed);

/// Eigenvalues of a reduced density matrix, descending, pruned below 1e-12,
/// clamped to [0, 1] and renormalized to sum 1.
class Spectrum {
   public:
    static constexpr double kPruneTolerance = 1e-12;

    /// Accepts raw eigenvalues. Entries must lie in [-1e-9, 1 + 1e-9] and sum
    /// to 1 within 1e-9; otherwise NumericalError.
    explicit Spectrum(std::vector<double> eigenvalues);

    const std::vector<double> &values() const {
        return values_;
    }
    size_t rank() const {
        return values_.size();
    }
    double max() const {
        return values_.front();
    }

   private:
    std::vector<double> values_;
};

/// Power sums tau_l = sum_i lambda_i^l for l = 1..k_max.
///
/// `estimated` marks noisy values that may violate the exact-moment range.
struct MomentVector {
    std::vector<double> tau;
    bool estimated = false;

    int k_max() const {
        return static_cast<int>(tau.size());
    }
    /// 1-based access: at(1) == tau_1.
    double at(int l) const;

    static MomentVector exact(std::vector<double> tau_1_to_kmax);
};

MomentVector moments(const Spectrum &spectrum, int k_max);

/// tr_{S^c} |psi><psi| as a dense row-major Hermitian matrix of side
/// d^|subset|. The row index follows the order of `subset` as given.
std::vector<Complex> reduced_density_matrix(const PureState &state, std::span<const int> subset);

/// Largest reduced dimension accepted by reduced_spectrum.
constexpr uint64_t kEigensolverCap = 256;

/// Spectrum of rho_S. Subset must be nonempty, proper, and duplicate-free.
Spectrum reduced_spectrum(const PureState &state, std::span<const int> subset);

/// Eigenvalues of a dense Hermitian matrix (row-major, side `dim`) by cyclic
/// complex Jacobi rotations. Converges when the off-diagonal Frobenius norm
/// drops below 1e-12; throws NumericalError after 100 sweeps.
std::vector<double> hermitian_eigenvalues(std::vector<Complex> matrix, size_t dim);

enum class StateFamily { GhzTheta, W, Dicke, Product };

struct FamilyParams {
    StateFamily family = StateFamily::Product;
    int n = 2;
    double theta = 0.7853981633974483;
    int excitations = 1;
};

/// Closed-form reduced spectrum of a permutation-invariant family for any
/// subset of size s, 1 <= s <= n-1.
Spectrum analytic_spectrum(const FamilyParams &params, int s);

/// Builds the statevector for a family (qubits only).
PureState make_family_state(const FamilyParams &params);

}  // namespace symment

#endif
