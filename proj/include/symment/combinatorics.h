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

#ifndef SYMMENT_COMBINATORICS_H
#define SYMMENT_COMBINATORICS_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symment {

/// Cycle type of a permutation: for each cycle length l, the number m_l of
/// cycles of that length. Stored sorted by decreasing length, all counts > 0.
struct Partition {
    std::vector<std::pair<int, int>> multiplicities;

    /// Sum of l * m_l.
    int total() const;
    /// Parts listed in decreasing order, e.g. [2,1,1].
    std::vector<int> parts() const;
    /// Multiplicity of cycle length l (0 when absent).
    int count(int length) const;
    std::string str() const;

    static Partition from_parts(const std::vector<int> &parts);
    bool operator==(const Partition &other) const = default;
};

/// Calls `callback` once for every integer partition of k, in lexicographic
/// order of the decreasing part lists ([k] first, [1^k] last). k = 0 yields a
/// single empty partition.
void for_each_partition(int k, const std::function<void(const Partition &)> &callback);

/// Materialized form of for_each_partition. Intended for small k.
std::vector<Partition> partitions(int k);

/// 1 / prod_l (l^{m_l} m_l!), the fraction of S_k occupied by the class.
double symmetric_class_weight(const Partition &p);

uint64_t totient(uint64_t q);

/// All divisors of k in ascending order.
std::vector<uint64_t> divisors(uint64_t k);

/// Number of chains l > l' > ... > q in which every element divides its
/// predecessor. 1 when l == q, 0 when q does not divide l.
uint64_t divisor_chain_count(uint64_t l, uint64_t q);

/// A binomial coefficient. `exact` holds the value whenever it fits in 64
/// bits; `log_value` is always populated.
struct BinomialValue {
    std::optional<uint64_t> exact;
    double log_value;

    double approx() const;
};

/// C(a, b). Exact multiplicative evaluation in 128-bit intermediates; once the
/// result would exceed UINT64_MAX, falls back to lgamma.
BinomialValue binomial(uint64_t a, uint64_t b);

/// Every size-s subset of {0..n-1}, each sorted ascending, in lexicographic
/// order.
std::vector<std::vector<int>> subsets_of_size(int n, int s);

}  // namespace symment

#endif
