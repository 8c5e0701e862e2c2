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

#include "symment/state.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "symment/combinatorics.h"
#include "symment/errors.h"
#include "symment/rng.h"

namespace symment {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr uint64_t kMaxAmplitudes = uint64_t{1} << 30;

uint64_t checked_power(int base, int exponent) {
    uint64_t result = 1;
    for (int i = 0; i < exponent; i++) {
        result *= static_cast<uint64_t>(base);
        if (result > kMaxAmplitudes) {
            throw InputError("state dimension d^n exceeds the supported maximum of 2^30 amplitudes");
        }
    }
    return result;
}

}  // namespace

PureState::PureState(int n, int d, std::vector<Complex> amplitudes) : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
    if (n < 1) {
        throw InputError("a state needs at least one site");
    }
    if (d < 2) {
        throw InputError("local dimension must be at least 2");
    }
    if (amplitudes_.size() != checked_power(d, n)) {
        throw InputError(
            "expected d^n = " + std::to_string(checked_power(d, n)) + " amplitudes, got " +
            std::to_string(amplitudes_.size()));
    }
    double norm2 = 0;
    for (const auto &a : amplitudes_) {
        norm2 += std::norm(a);
    }
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
        throw InputError("state is not normalized (squared norm " + std::to_string(norm2) + ")");
    }
    double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
}

int PureState::digit(uint64_t index, int site) const {
    for (int x = n_ - 1; x > site; x--) {
        index /= static_cast<uint64_t>(d_);
    }
    return static_cast<int>(index % static_cast<uint64_t>(d_));
}

std::string PureState::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["d"] = d_;
    auto amps = nlohmann::json::array();
    for (const auto &a : amplitudes_) {
        amps.push_back({a.real(), a.imag()});
    }
    j["amplitudes"] = std::move(amps);
    return j.dump();
}

PureState PureState::from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw InputError(std::string("state file is not valid JSON: ") + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        int d = j.at("d").get<int>();
        std::vector<Complex> amps;
        for (const auto &entry : j.at("amplitudes")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw InputError("each amplitude must be a [re, im] pair");
            }
            amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        return PureState(n, d, std::move(amps));
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed state file: ") + e.what());
    }
}

PureState PureState::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open state file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

PureState make_ghz_theta(int n, double theta) {
    if (n < 2) {
        throw InputError("GHZ states need n >= 2");
    }
    std::vector<Complex> amps(checked_power(2, n));
    amps.front() = std::sin(theta);
    amps.back() = std::cos(theta);
    return PureState(n, 2, std::move(amps));
}

PureState make_ghz(int n) {
    return make_ghz_theta(n, M_PI / 4);
}

PureState make_w(int n) {
    if (n < 2) {
        throw InputError("W states need n >= 2");
    }
    return make_dicke(n, 1);
}

PureState make_dicke(int n, int e) {
    if (n < 1 || e < 0 || e > n) {
        throw InputError("Dicke state needs 0 <= e <= n and n >= 1");
    }
    std::vector<Complex> amps(checked_power(2, n));
    double amplitude = 1.0 / std::sqrt(binomial(n, e).approx());
    for (uint64_t i = 0; i < amps.size(); i++) {
        if (std::popcount(i) == e) {
            amps[i] = amplitude;
        }
    }
    return PureState(n, 2, std::move(amps));
}

PureState make_product(int n, int d) {
    std::vector<Complex> amps(checked_power(d, n));
    amps.front() = 1;
    return PureState(n, d, std::move(amps));
}

PureState make_haar_random(int n, int d, uint64_t seed) {
    std::vector<Complex> amps(checked_power(d, n));
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double norm2 = 0;
    for (auto &a : amps) {
        double re = normal(rng);
        double im = normal(rng);
        a = Complex(re, im);
        norm2 += re * re + im * im;
    }
    double scale = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) {
        a *= scale;
    }
    return PureState(n, d, std::move(amps));
}

Spectrum::Spectrum(std::vector<double> eigenvalues) {
    double total = 0;
    for (double v : eigenvalues) {
        if (!std::isfinite(v) || v < -1e-9 || v > 1 + 1e-9) {
            throw NumericalError("eigenvalue " + std::to_string(v) + " outside [0, 1]");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw NumericalError("spectrum sums to " + std::to_string(total) + ", expected 1");
    }
    for (double v : eigenvalues) {
        if (v > kPruneTolerance) {
            values_.push_back(std::min(v, 1.0));
        }
    }
    if (values_.empty()) {
        throw NumericalError("spectrum has no eigenvalue above the pruning tolerance");
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
    double kept = std::accumulate(values_.begin(), values_.end(), 0.0);
    for (double &v : values_) {
        v /= kept;
    }
}

double MomentVector::at(int l) const {
    if (l < 1 || l > k_max()) {
        throw InputError("moment order " + std::to_string(l) + " not available (k_max = " + std::to_string(k_max()) + ")");
    }
    return tau[l - 1];
}

MomentVector MomentVector::exact(std::vector<double> tau_1_to_kmax) {
    MomentVector m;
    m.tau = std::move(tau_1_to_kmax);
    return m;
}

MomentVector moments(const Spectrum &spectrum, int k_max) {
    if (k_max < 1) {
        throw InputError("k_max must be at least 1");
    }
    MomentVector m;
    m.tau.assign(k_max, 0.0);
    for (double lambda : spectrum.values()) {
        double power = 1;
        for (int l = 1; l <= k_max; l++) {
            power *= lambda;
            m.tau[l - 1] += power;
        }
    }
    return m;
}

namespace {

void validate_subset(const PureState &state, std::span<const int> subset) {
    int n = state.num_sites();
    if (subset.empty() || static_cast<int>(subset.size()) >= n) {
        throw InputError("subset must be nonempty and proper");
    }
    std::vector<bool> seen(n, false);
    for (int x : subset) {
        if (x < 0 || x >= n) {
            throw InputError("subset index " + std::to_string(x) + " out of range");
        }
        if (seen[x]) {
            throw InputError("subset index " + std::to_string(x) + " repeated");
        }
        seen[x] = true;
    }
}

}  // namespace

std::vector<Complex> reduced_density_matrix(const PureState &state, std::span<const int> subset) {
    validate_subset(state, subset);
    int n = state.num_sites();
    uint64_t d = static_cast<uint64_t>(state.local_dim());
    std::vector<bool> in_subset(n, false);
    for (int x : subset) {
        in_subset[x] = true;
    }
    std::vector<int> complement;
    for (int x = 0; x < n; x++) {
        if (!in_subset[x]) {
            complement.push_back(x);
        }
    }

    uint64_t dim_s = 1;
    for (size_t i = 0; i < subset.size(); i++) {
        dim_s *= d;
    }
    uint64_t dim_c = state.dim() / dim_s;

    // Stride of each site in the flat index.
    std::vector<uint64_t> stride(n);
    uint64_t s = 1;
    for (int x = n - 1; x >= 0; x--) {
        stride[x] = s;
        s *= d;
    }
    auto flat_offsets = [&](const std::vector<int> &sites) {
        uint64_t count = 1;
        for (size_t i = 0; i < sites.size(); i++) {
            count *= d;
        }
        std::vector<uint64_t> out(count, 0);
        for (uint64_t idx = 0; idx < count; idx++) {
            uint64_t rem = idx;
            uint64_t off = 0;
            for (int i = static_cast<int>(sites.size()) - 1; i >= 0; i--) {
                off += (rem % d) * stride[sites[i]];
                rem /= d;
            }
            out[idx] = off;
        }
        return out;
    };
    std::vector<int> subset_sites(subset.begin(), subset.end());
    std::vector<uint64_t> off_s = flat_offsets(subset_sites);
    std::vector<uint64_t> off_c = flat_offsets(complement);

    std::vector<Complex> rho(dim_s * dim_s);
    for (uint64_t a = 0; a < dim_s; a++) {
        for (uint64_t a2 = a; a2 < dim_s; a2++) {
            Complex acc = 0;
            for (uint64_t b = 0; b < dim_c; b++) {
                acc += state[off_s[a] + off_c[b]] * std::conj(state[off_s[a2] + off_c[b]]);
            }
            rho[a * dim_s + a2] = acc;
            rho[a2 * dim_s + a] = std::conj(acc);
        }
    }
    return rho;
}

std::vector<double> hermitian_eigenvalues(std::vector<Complex> a, size_t dim) {
    if (a.size() != dim * dim) {
        throw InputError("matrix size does not match dimension");
    }
    auto at = [&](size_t r, size_t c) -> Complex & {
        return a[r * dim + c];
    };
    auto off_norm = [&]() {
        double total = 0;
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                if (r != c) {
                    total += std::norm(at(r, c));
                }
            }
        }
        return std::sqrt(total);
    };

    constexpr double kTolerance = 1e-12;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_norm() >= kTolerance) {
        if (sweep++ >= kMaxSweeps) {
            throw NumericalError("Jacobi eigensolver did not converge in 100 sweeps");
        }
        for (size_t p = 0; p + 1 < dim; p++) {
            for (size_t q = p + 1; q < dim; q++) {
                double r = std::abs(at(p, q));
                if (r < 1e-300) {
                    continue;
                }
                // Rotate the phase out of a_pq: A <- D^H A D with D_qq = conj(a_pq)/r.
                Complex phase = std::conj(at(p, q)) / r;
                for (size_t i = 0; i < dim; i++) {
                    at(i, q) *= phase;
                    at(q, i) *= std::conj(phase);
                }
                at(q, q) = at(q, q).real();
                // Real Jacobi rotation zeroing the now-real a_pq.
                double app = at(p, p).real();
                double aqq = at(q, q).real();
                double theta = (aqq - app) / (2 * r);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t i = 0; i < dim; i++) {
                    if (i == p || i == q) {
                        continue;
                    }
                    Complex aip = at(i, p);
                    Complex aiq = at(i, q);
                    at(i, p) = c * aip - s * aiq;
                    at(i, q) = s * aip + c * aiq;
                    at(p, i) = std::conj(at(i, p));
                    at(q, i) = std::conj(at(i, q));
                }
                at(p, p) = app - t * r;
                at(q, q) = aqq + t * r;
                at(p, q) = 0;
                at(q, p) = 0;
            }
        }
    }
    std::vector<double> eig(dim);
    for (size_t i = 0; i < dim; i++) {
        eig[i] = at(i, i).real();
    }
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

Spectrum reduced_spectrum(const PureState &state, std::span<const int> subset) {
    validate_subset(state, subset);
    uint64_t dim_s = 1;
    for (size_t i = 0; i < subset.size(); i++) {
        dim_s *= static_cast<uint64_t>(state.local_dim());
        if (dim_s > kEigensolverCap) {
            throw InputError("reduced dimension exceeds the eigensolver cap of " + std::to_string(kEigensolverCap));
        }
    }
    auto rho = reduced_density_matrix(state, subset);
    return Spectrum(hermitian_eigenvalues(std::move(rho), dim_s));
}

Spectrum analytic_spectrum(const FamilyParams &params, int s) {
    int n = params.n;
    if (n < 2 || s < 1 || s > n - 1) {
        throw InputError("analytic spectrum needs n >= 2 and 1 <= s <= n-1");
    }
    switch (params.family) {
        case StateFamily::GhzTheta: {
            double sin2 = std::sin(params.theta) * std::sin(params.theta);
            double cos2 = std::cos(params.theta) * std::cos(params.theta);
            return Spectrum({sin2, cos2});
        }
        case StateFamily::W:
            return Spectrum({static_cast<double>(n - s) / n, static_cast<double>(s) / n});
        case StateFamily::Dicke: {
            int e = params.excitations;
            if (e < 0 || e > n) {
                throw InputError("Dicke excitations must satisfy 0 <= e <= n");
            }
            // Hypergeometric weights C(s,l) C(n-s,e-l) / C(n,e), in log space.
            double log_total = binomial(n, e).log_value;
            std::vector<double> weights;
            for (int l = std::max(0, e - (n - s)); l <= std::min(s, e); l++) {
                double lw = binomial(s, l).log_value + binomial(n - s, e - l).log_value - log_total;
                weights.push_back(std::exp(lw));
            }
            return Spectrum(std::move(weights));
        }
        case StateFamily::Product:
            return Spectrum({1.0});
    }
    throw InputError("unknown state family");
}

PureState make_family_state(const FamilyParams &params) {
    switch (params.family) {
        case StateFamily::GhzTheta:
            return make_ghz_theta(params.n, params.theta);
        case StateFamily::W:
            return make_w(params.n);
        case StateFamily::Dicke:
            return make_dicke(params.n, params.excitations);
        case StateFamily::Product:
            return make_product(params.n, 2);
    }
    throw InputError("unknown state family");
}

}  // namespace symment
