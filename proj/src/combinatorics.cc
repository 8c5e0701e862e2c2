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

#include "symment/combinatorics.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "symment/errors.h"

namespace symment {

int Partition::total() const {
    int t = 0;
    for (const auto &[length, count] : multiplicities) {
        t += length * count;
    }
    return t;
}

std::vector<int> Partition::parts() const {
    std::vector<int> out;
    for (const auto &[length, count] : multiplicities) {
        out.insert(out.end(), count, length);
    }
    return out;
}

int Partition::count(int length) const {
    for (const auto &[l, m] : multiplicities) {
        if (l == length) {
            return m;
        }
    }
    return 0;
}

std::string Partition::str() const {
    std::stringstream ss;
    ss << '[';
    bool first = true;
    for (int part : parts()) {
        if (!first) {
            ss << ',';
        }
        first = false;
        ss << part;
    }
    ss << ']';
    return ss.str();
}

Partition Partition::from_parts(const std::vector<int> &parts) {
    Partition p;
    for (int part : parts) {
        if (part <= 0) {
            throw InputError("partition parts must be positive");
        }
        if (!p.multiplicities.empty() && p.multiplicities.back().first == part) {
            p.multiplicities.back().second++;
        } else {
            if (!p.multiplicities.empty() && p.multiplicities.back().first < part) {
                throw InputError("partition parts must be listed in decreasing order");
            }
            p.multiplicities.emplace_back(part, 1);
        }
    }
    return p;
}

namespace {

void partition_recurse(
    int remaining, int max_part, Partition &current, const std::function<void(const Partition &)> &callback) {
    if (remaining == 0) {
        callback(current);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; part--) {
        if (!current.multiplicities.empty() && current.multiplicities.back().first == part) {
            current.multiplicities.back().second++;
            partition_recurse(remaining - part, part, current, callback);
            current.multiplicities.back().second--;
        } else {
            current.multiplicities.emplace_back(part, 1);
            partition_recurse(remaining - part, part, current, callback);
            current.multiplicities.pop_back();
        }
    }
}

}  // namespace

void for_each_partition(int k, const std::function<void(const Partition &)> &callback) {
    if (k < 0) {
        throw InputError("cannot partition a negative integer");
    }
    Partition current;
    partition_recurse(k, k, current, callback);
}

std::vector<Partition> partitions(int k) {
    std::vector<Partition> out;
    for_each_partition(k, [&](const Partition &p) {
        out.push_back(p);
    });
    return out;
}

double symmetric_class_weight(const Partition &p) {
    double w = 1.0;
    for (const auto &[length, count] : p.multiplicities) {
        for (int i = 1; i <= count; i++) {
            w /= static_cast<double>(length) * i;
        }
    }
    return w;
}

uint64_t totient(uint64_t q) {
    if (q == 0) {
        throw InputError("totient is defined for positive integers");
    }
    uint64_t result = q;
    uint64_t n = q;
    for (uint64_t p = 2; p * p <= n; p++) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            result -= result / p;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

std::vector<uint64_t> divisors(uint64_t k) {
    if (k == 0) {
        throw InputError("divisors are defined for positive integers");
    }
    std::vector<uint64_t> low;
    std::vector<uint64_t> high;
    for (uint64_t i = 1; i * i <= k; i++) {
        if (k % i == 0) {
            low.push_back(i);
            if (i != k / i) {
                high.push_back(k / i);
            }
        }
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

uint64_t divisor_chain_count(uint64_t l, uint64_t q) {
    if (l == 0 || q == 0) {
        throw InputError("divisor chains need positive endpoints");
    }
    if (l % q != 0) {
        return 0;
    }
    if (l == q) {
        return 1;
    }
    // Chains from l to q correspond to chains from l/q to 1 in the divisor
    // lattice: count[m] = sum over proper divisors d of m with d >= 1 of count[d].
    uint64_t top = l / q;
    std::vector<uint64_t> ds = divisors(top);
    std::vector<uint64_t> count(ds.size(), 0);
    count[0] = 1;
    for (size_t i = 1; i < ds.size(); i++) {
        for (size_t j = 0; j < i; j++) {
            if (ds[i] % ds[j] == 0) {
                count[i] += count[j];
            }
        }
    }
    return count.back();
}

double BinomialValue::approx() const {
    if (exact.has_value()) {
        return static_cast<double>(*exact);
    }
    return std::exp(log_value);
}

BinomialValue binomial(uint64_t a, uint64_t b) {
    if (b > a) {
        throw InputError("binomial(a, b) requires b <= a");
    }
    b = std::min(b, a - b);
    BinomialValue out{};
    out.log_value = std::lgamma(static_cast<double>(a) + 1) - std::lgamma(static_cast<double>(b) + 1) -
                    std::lgamma(static_cast<double>(a - b) + 1);
    // After step i the accumulator equals C(a - b + i, i), always integral.
    unsigned __int128 acc = 1;
    for (uint64_t i = 1; i <= b; i++) {
        acc = acc * (a - b + i) / i;
        if (acc > std::numeric_limits<uint64_t>::max()) {
            return out;
        }
    }
    out.exact = static_cast<uint64_t>(acc);
    out.log_value = std::log(static_cast<double>(*out.exact));
    return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int s) {
    if (s < 0 || s > n) {
        throw InputError("subset size out of range");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> current(s);
    for (int i = 0; i < s; i++) {
        current[i] = i;
    }
    while (true) {
        out.push_back(current);
        int i = s - 1;
        while (i >= 0 && current[i] == n - s + i) {
            i--;
        }
        if (i < 0) {
            break;
        }
        current[i]++;
        for (int j = i + 1; j < s; j++) {
            current[j] = current[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace symment
