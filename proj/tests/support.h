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

#ifndef SYMMENT_TESTS_SUPPORT_H
#define SYMMENT_TESTS_SUPPORT_H

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "symment/measures.h"
#include "symment/rng.h"
#include "symment/state.h"

namespace symment::testing {

/// Flat Dirichlet sample of the given rank.
inline Spectrum dirichlet_spectrum(Rng &rng, int rank) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::vector<double> v(rank);
    double total = 0;
    for (auto &x : v) {
        x = gamma(rng) + 1e-6;
        total += x;
    }
    for (auto &x : v) {
        x /= total;
    }
    return Spectrum(v);
}

/// Complete homogeneous polynomial h_k by enumerating nondecreasing index tuples.
inline double brute_complete_homogeneous(const std::vector<double> &x, int k) {
    double total = 0;
    std::vector<int> idx(k, 0);
    int r = static_cast<int>(x.size());
    while (true) {
        double term = 1;
        for (int i : idx) {
            term *= x[i];
        }
        total += term;
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == r - 1) {
            pos--;
        }
        if (pos < 0) {
            break;
        }
        idx[pos]++;
        for (int j = pos + 1; j < k; j++) {
            idx[j] = idx[pos];
        }
    }
    return total;
}

/// Cycle lengths of a permutation given as an image vector.
inline std::vector<int> cycle_lengths(const std::vector<int> &perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> out;
    for (size_t i = 0; i < perm.size(); i++) {
        if (seen[i]) {
            continue;
        }
        int len = 0;
        for (size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            len++;
        }
        out.push_back(len);
    }
    return out;
}

/// Explicit element list of the group acting on k points.
inline std::vector<std::vector<int>> group_elements(GroupKind group, int k) {
    std::vector<std::vector<int>> out;
    if (group == GroupKind::Symmetric) {
        std::vector<int> p(k);
        std::iota(p.begin(), p.end(), 0);
        do {
            out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    for (int r = 0; r < k; r++) {
        std::vector<int> p(k);
        for (int i = 0; i < k; i++) {
            p[i] = (i + r) % k;
        }
        out.push_back(p);
        if (group == GroupKind::Dihedral) {
            std::vector<int> q(k);
            for (int i = 0; i < k; i++) {
                q[i] = ((r - i) % k + k) % k;
            }
            out.push_back(q);
        }
    }
    return out;
}

/// Group average of the cycle-type moment products.
inline double brute_group_accept(const Spectrum &spectrum, GroupKind group, int k) {
    auto elements = group_elements(group, k);
    double total = 0;
    for (const auto &g : elements) {
        double term = 1;
        for (int len : cycle_lengths(g)) {
            double tau = 0;
            for (double v : spectrum.values()) {
                tau += std::pow(v, len);
            }
            term *= tau;
        }
        total += term;
    }
    return total / static_cast<double>(elements.size());
}

inline double relative_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace symment::testing

#endif
