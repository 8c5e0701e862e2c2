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

// Acceptance checks. One line per criterion; exit status is nonzero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "support.h"
#include "symment/campaign.h"
#include "symment/combinatorics.h"
#include "symment/cyclic_test.h"
#include "symment/estimators.h"
#include "symment/measures.h"

namespace symment {
namespace {

using std::numbers::pi;
using testing::dirichlet_spectrum;
using testing::relative_diff;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *pattern, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

std::vector<std::vector<int>> proper_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int s = 1; s < n; s++) {
        for (auto &subset : subsets_of_size(n, s)) {
            out.push_back(subset);
        }
    }
    return out;
}

Outcome cross_algorithm() {
    Rng rng(101);
    double worst = 0;
    for (int i = 0; i < 200; i++) {
        auto spectrum = dirichlet_spectrum(rng, 1 + i % 8);
        auto tau = moments(spectrum, 20);
        for (int k = 2; k <= 20; k++) {
            double a = accept_symmetric_partition(tau, k);
            double b = accept_symmetric_recurrence(tau, k);
            double c = accept_symmetric_spectral(spectrum, k);
            worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
        }
    }
    return {worst <= 1e-10, fmt("max pairwise difference %.3g over 200 spectra, k<=20", worst)};
}

Outcome closed_forms() {
    double worst = 0;
    auto bell_spec = reduced_spectrum(make_ghz(4), std::vector<int>{0});
    for (int k = 2; k <= 50; k++) {
        worst = std::max(worst, relative_diff(accept(bell_spec, GroupKind::Symmetric, k), (k + 1) / std::pow(2.0, k)));
    }
    for (double theta : {pi / 8, pi / 6, pi / 4}) {
        auto spectrum = reduced_spectrum(make_ghz_theta(3, theta), std::vector<int>{1});
        double s2 = std::pow(std::sin(theta), 2);
        double c2 = std::pow(std::cos(theta), 2);
        for (int k = 2; k <= 50; k++) {
            double expected = std::abs(s2 - c2) < 1e-12 ? (k + 1) / std::pow(2.0, k)
                                                        : (std::pow(s2, k + 1) - std::pow(c2, k + 1)) / (s2 - c2);
            worst = std::max(worst, relative_diff(accept(spectrum, GroupKind::Symmetric, k), expected));
        }
    }
    for (int n : {3, 4, 5}) {
        auto w = make_w(n);
        for (int s = 1; s < n; s++) {
            std::vector<int> subset;
            for (int x = 0; x < s; x++) {
                subset.push_back(x);
            }
            auto spectrum = reduced_spectrum(w, subset);
            for (int k = 2; k <= 50; k++) {
                double expected = 2 * s == n ? (k + 1) / std::pow(2.0, k)
                                             : (std::pow(n - s, k + 1) - std::pow(s, k + 1)) /
                                                   (std::pow(n, k) * (n - 2 * s));
                worst = std::max(worst, relative_diff(accept(spectrum, GroupKind::Symmetric, k), expected));
            }
        }
    }
    return {worst <= 1e-12, fmt("max relative deviation %.3g (GHZ, GHZ-theta, W; k<=50)", worst)};
}

struct HaarCorpus {
    std::vector<std::vector<Spectrum>> spectra;
};

const HaarCorpus &corpus() {
    static HaarCorpus c = [] {
        HaarCorpus out;
        auto subsets = proper_subsets(4);
        for (int i = 0; i < 500; i++) {
            auto psi = make_haar_random(4, 2, derive_seed(2024, i));
            std::vector<Spectrum> row;
            for (const auto &s : subsets) {
                row.push_back(reduced_spectrum(psi, s));
            }
            out.spectra.push_back(std::move(row));
        }
        return out;
    }();
    return c;
}

Outcome inequality_chain() {
    int violations = 0;
    int checks = 0;
    for (const auto &row : corpus().spectra) {
        for (const auto &spectrum : row) {
            auto tau = moments(spectrum, 6);
            for (int k = 2; k <= 6; k++) {
                double s = accept(spectrum, GroupKind::Symmetric, k);
                double d = accept(spectrum, GroupKind::Dihedral, k);
                double c = accept(spectrum, GroupKind::Cyclic, k);
                checks++;
                if (tau.at(k) > s + 1e-12 || s > d + 1e-12 || d > c + 1e-12) {
                    violations++;
                }
            }
        }
    }
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " checks"};
}

Outcome monotone_in_k() {
    int violations = 0;
    int soft = 0;
    for (const auto &row : corpus().spectra) {
        for (const auto &spectrum : row) {
            for (int k = 2; k <= 20; k++) {
                if (accept(spectrum, GroupKind::Symmetric, k + 1) > accept(spectrum, GroupKind::Symmetric, k) + 1e-12) {
                    violations++;
                }
                for (auto g : {GroupKind::Cyclic, GroupKind::Dihedral}) {
                    if (accept(spectrum, g, k + 1) > accept(spectrum, g, k) + 1e-12) {
                        soft++;
                    }
                }
            }
        }
    }
    return {
        violations == 0,
        std::to_string(violations) + " symmetric-group violations; cyclic/dihedral increases observed: " +
            std::to_string(soft)};
}

Outcome bound_saturation() {
    double worst = 0;
    auto bell = make_ghz(2);
    for (auto g : kAllGroups) {
        auto r = entanglement_bipartite(bell, g, 2, std::vector<int>{0});
        worst = std::max(
            {worst, std::abs(r.entanglement - 0.25), std::abs(r.entanglement - max_entanglement_bound(g, 2, 2, 1))});
    }
    int exceed = 0;
    for (int i = 0; i < 100; i++) {
        int n = 3 + i % 2;
        auto psi = make_haar_random(n, 2, derive_seed(77, i));
        for (const auto &subset : proper_subsets(n)) {
            auto spectrum = reduced_spectrum(psi, subset);
            int s = std::min<int>(static_cast<int>(subset.size()), n - static_cast<int>(subset.size()));
            for (auto g : kAllGroups) {
                for (int k = 2; k <= 8; k++) {
                    if (1 - accept(spectrum, g, k) > max_entanglement_bound(g, k, 2, s) + 1e-12) {
                        exceed++;
                    }
                }
            }
        }
    }
    return {
        worst <= 1e-12 && exceed == 0,
        fmt("Bell deviation %.3g; ", worst) + std::to_string(exceed) + " bound violations over 100 Haar states"};
}

Outcome marginal_oracle() {
    std::vector<PureState> states = {make_product(3), make_ghz(2)};
    for (int n = 2; n <= 4; n++) {
        states.push_back(make_ghz(n));
        states.push_back(make_w(n));
    }
    for (int i = 0; i < 20; i++) {
        states.push_back(make_haar_random(3, 2, derive_seed(606, i)));
    }
    double worst_marginal = 0;
    double worst_sum = 0;
    for (const auto &psi : states) {
        for (int k = 2; k <= 4; k++) {
            auto dist = joint_distribution(psi, k);
            double total = 0;
            for (double p : dist.probs) {
                total += p;
            }
            worst_sum = std::max(worst_sum, std::abs(total - 1));
            for (const auto &subset : proper_subsets(psi.num_sites())) {
                double exact = accept(reduced_spectrum(psi, subset), GroupKind::Cyclic, k);
                worst_marginal = std::max(worst_marginal, std::abs(dist.marginal(subset) - exact));
            }
        }
    }
    return {
        worst_marginal <= 1e-9 && worst_sum <= 1e-9,
        fmt("max marginal residual %.3g, ", worst_marginal) + fmt("max normalization error %.3g", worst_sum)};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Outcome newton_girard() {
    Rng rng(4242);
    double worst = 0;
    for (int i = 0; i < 100; i++) {
        auto spectrum = dirichlet_spectrum(rng, 4);
        auto direct = moments(spectrum, 20);
        MomentVector head;
        head.tau.assign(direct.tau.begin(), direct.tau.begin() + 4);
        auto ext = newton_girard_extrapolate(head, 4, 20);
        for (int k = 1; k <= 20; k++) {
            worst = std::max(worst, std::abs(ext.at(k) - direct.at(k)));
        }
    }

    EstimationContext ctx(make_ghz(4), {{0, 1}});
    double worst_median = 0;
    for (auto method : {Method::Swap, Method::Cyclic}) {
        for (int k = 5; k <= 20; k++) {
            std::vector<double> errs;
            for (int t = 0; t < 100; t++) {
                EstimationTask task;
                task.method = method;
                task.k = k;
                task.measure_k = 4;
                task.n_tot = 100000;
                task.extrapolate_from = 4;
                errs.push_back(ctx.run(task, trial_seed(7, t, static_cast<int>(method), 0)).abs_err);
            }
            worst_median = std::max(worst_median, median(errs));
        }
    }
    return {
        worst <= 1e-9 && worst_median < 0.05,
        fmt("exact extrapolation error %.3g; ", worst) +
            fmt("worst median |error| for k=5..20 from 1e5 copies %.3g", worst_median)};
}

Outcome error_scaling() {
    ScalingConfig config;
    config.methods = {std::begin(kAllMethods), std::end(kAllMethods)};
    config.budgets = {1000, 10000, 100000, 1000000};
    config.group = GroupKind::Symmetric;
    config.k = 4;
    config.trials = 100;
    config.seed = 8;
    auto results = run_scaling(
        config, [](int t) { return make_haar_random(4, 2, derive_seed(8, static_cast<uint64_t>(t))); },
        subsets_of_size(4, 2));
    bool pass = true;
    std::string detail;
    for (const auto &r : results) {
        double a = r.stats.abs_fit ? r.stats.abs_fit->slope : NAN;
        double l = r.stats.log_fit ? r.stats.log_fit->slope : NAN;
        pass = pass && a >= -0.6 && a <= -0.4 && l >= -0.6 && l <= -0.4;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s abs %.3f log %.3f; ", std::string(method_name(r.method)).c_str(), a, l);
        detail += buf;
    }
    return {pass, detail};
}

Outcome exponent_fits() {
    Spectrum g8({std::pow(std::sin(pi / 8), 2), std::pow(std::cos(pi / 8), 2)});
    std::vector<std::pair<int, double>> series;
    for (int k = 2; k <= 20; k++) {
        series.emplace_back(k, accept(g8, GroupKind::Symmetric, k));
    }
    double slope = fit_exponent(series, 10, 20).slope;
    auto w = reduced_spectrum(make_w(4), std::vector<int>{0});
    double w_ratio = accept(w, GroupKind::Symmetric, 50) / accept(w, GroupKind::Symmetric, 49);
    Spectrum half({0.5, 0.5});
    double g_ratio = accept(half, GroupKind::Symmetric, 50) / accept(half, GroupKind::Symmetric, 49);
    bool pass = std::abs(slope + 0.1583) <= 5e-3 && std::abs(w_ratio - 0.75) <= 2e-2 && std::abs(g_ratio - 0.5) <= 2e-2;
    char buf[160];
    std::snprintf(buf, sizeof buf, "GHZ(pi/8) slope %.5f; W ratio %.4f; GHZ(pi/4) ratio %.4f", slope, w_ratio, g_ratio);
    return {pass, buf};
}

double trace_distance(const std::vector<Complex> &a, const std::vector<Complex> &b, size_t dim) {
    std::vector<Complex> diff(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        diff[i] = a[i] - b[i];
    }
    double total = 0;
    for (double v : hermitian_eigenvalues(diff, dim)) {
        total += std::abs(v);
    }
    return total / 2;
}

Outcome schur_and_continuity() {
    Rng rng(1010);
    int majorization_fail = 0;
    for (int i = 0; i < 200; i++) {
        auto mu = dirichlet_spectrum(rng, 2 + i % 6).values();
        auto lambda = mu;
        int steps = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < steps; s++) {
            size_t a = rng() % lambda.size();
            size_t b = (a + 1 + rng() % (lambda.size() - 1)) % lambda.size();
            double t = uniform01(rng);
            double x = lambda[a];
            double y = lambda[b];
            lambda[a] = t * x + (1 - t) * y;
            lambda[b] = (1 - t) * x + t * y;
        }
        Spectrum sm(mu);
        Spectrum sl(lambda);
        for (int k = 2; k <= 10; k++) {
            if (accept(sl, GroupKind::Symmetric, k) > accept(sm, GroupKind::Symmetric, k) + 1e-12) {
                majorization_fail++;
            }
        }
    }
    int continuity_fail = 0;
    double worst_ratio = 0;
    for (int i = 0; i < 200; i++) {
        auto psi = make_haar_random(4, 2, derive_seed(31, i));
        auto noise = make_haar_random(4, 2, derive_seed(32, i));
        double eps = std::pow(10.0, -3 + 2 * uniform01(rng));
        std::vector<Complex> amps(psi.dim());
        for (uint64_t j = 0; j < psi.dim(); j++) {
            amps[j] = psi[j] + eps * noise[j];
        }
        double norm = 0;
        for (auto z : amps) {
            norm += std::norm(z);
        }
        for (auto &z : amps) {
            z /= std::sqrt(norm);
        }
        PureState phi(4, 2, amps);
        std::vector<int> subset = (i % 2) ? std::vector<int>{0} : std::vector<int>{1, 3};
        size_t dim = size_t{1} << subset.size();
        double td = trace_distance(reduced_density_matrix(psi, subset), reduced_density_matrix(phi, subset), dim);
        auto sa = reduced_spectrum(psi, subset);
        auto sb = reduced_spectrum(phi, subset);
        for (auto g : kAllGroups) {
            for (int k = 2; k <= 10; k++) {
                double delta = std::abs(accept(sa, g, k) - accept(sb, g, k));
                if (delta > std::sqrt(k) * td + 1e-9) {
                    continuity_fail++;
                }
                if (td > 0) {
                    worst_ratio = std::max(worst_ratio, delta / (std::sqrt(k) * td));
                }
            }
        }
    }
    return {
        majorization_fail == 0 && continuity_fail == 0,
        std::to_string(majorization_fail) + " majorization failures, " + std::to_string(continuity_fail) +
            " continuity failures" + fmt(" (largest |dC| / (sqrt(k) T) = %.3f)", worst_ratio)};
}

Outcome allocation_arithmetic() {
    int conservation_fail = 0;
    for (auto g : kAllGroups) {
        for (auto m : kAllMethods) {
            for (auto mode : {AllocMode::Table, AllocMode::Equal}) {
                for (int k = 2; k <= 12; k++) {
                    for (int64_t n : {int64_t{100}, int64_t{999}, int64_t{10000}, int64_t{123456}, int64_t{1000000}}) {
                        auto plan = allocate(g, m, k, n, mode);
                        int64_t slack = n - plan.total_copies();
                        if (slack < 0 || slack >= k) {
                            conservation_fail++;
                        }
                    }
                }
            }
        }
    }
    int64_t gbose = hoeffding_budget(GroupKind::Symmetric, Method::GBose, 4, 0.01, 0.05).copies;

    double eps = 0.01;
    double worst_slack = 0;
    Rng rng(11);
    for (int k = 3; k <= 10; k++) {
        auto r = hoeffding_budget(GroupKind::Symmetric, Method::Swap, k, eps, 0.05);
        std::vector<double> e;
        std::vector<double> a;
        std::vector<int> l;
        for (const auto &[order, el] : r.order_eps) {
            l.push_back(order);
            e.push_back(el);
            a.push_back(alpha_coefficient(GroupKind::Symmetric, order, k));
        }
        auto cost = [&](const std::vector<double> &x) {
            double c = 0;
            for (size_t i = 0; i < x.size(); i++) {
                c += l[i] / (x[i] * x[i]);
            }
            return c;
        };
        double best = cost(e);
        for (int trial = 0; trial < 100; trial++) {
            // Random direction within the constraint plane sum a_i x_i = eps.
            std::vector<double> dir(e.size());
            double proj = 0;
            double aa = 0;
            for (size_t i = 0; i < e.size(); i++) {
                dir[i] = uniform01(rng) - 0.5;
                proj += dir[i] * a[i];
                aa += a[i] * a[i];
            }
            for (size_t i = 0; i < e.size(); i++) {
                dir[i] -= proj / aa * a[i];
            }
            double scale = 0.1 * uniform01(rng);
            auto x = e;
            bool ok = true;
            for (size_t i = 0; i < e.size(); i++) {
                x[i] += scale * dir[i] * e[i];
                ok = ok && x[i] > 0;
            }
            if (!ok) {
                continue;
            }
            // Rescale exactly onto the constraint to remove rounding drift.
            double c = 0;
            for (size_t i = 0; i < x.size(); i++) {
                c += a[i] * x[i];
            }
            for (auto &xi : x) {
                xi *= eps / c;
            }
            worst_slack = std::max(worst_slack, (best - cost(x)) / best);
        }
    }
    bool pass = conservation_fail == 0 && gbose == 73780 && worst_slack <= 1e-9;
    return {
        pass,
        std::to_string(conservation_fail) + " conservation failures; gbose copies " + std::to_string(gbose) +
            fmt("; worst relative improvement by perturbation %.3g", worst_slack)};
}

Outcome dicke_ordering() {
    int fail = 0;
    for (auto g : kAllGroups) {
        for (int k = 2; k <= 10; k++) {
            double last = -1;
            for (int e = 1; e <= 3; e++) {
                double ent = entanglement_averaged(make_dicke(6, e), g, k, 1).entanglement;
                if (ent < last - 1e-12) {
                    fail++;
                }
                last = ent;
            }
            for (int n : {4, 5}) {
                for (int s = 1; s < n; s++) {
                    double w = entanglement_averaged(make_w(n), g, k, s).entanglement;
                    double ghz = entanglement_averaged(make_ghz(n), g, k, s).entanglement;
                    if (w > ghz + 1e-12) {
                        fail++;
                    }
                }
            }
        }
    }
    return {fail == 0, std::to_string(fail) + " ordering violations"};
}

}  // namespace
}  // namespace symment

int main() {
    using namespace symment;
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria = {
        {"cross-algorithm equality", cross_algorithm},
        {"closed-form oracles", closed_forms},
        {"inequality chain", inequality_chain},
        {"k-monotonicity (symmetric)", monotone_in_k},
        {"bound saturation", bound_saturation},
        {"cyclic-test marginal oracle", marginal_oracle},
        {"Newton-Girard extrapolation", newton_girard},
        {"error scaling", error_scaling},
        {"exponent fits", exponent_fits},
        {"Schur-convexity and continuity", schur_and_continuity},
        {"allocation and budget arithmetic", allocation_arithmetic},
        {"Dicke and W/GHZ ordering", dicke_ordering},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf(
            "%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
