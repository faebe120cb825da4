#include "schreier/chains.hpp"

#include "schreier/asymptotics.hpp"
#include "schreier/error.hpp"
#include "schreier/graph_lazy.hpp"
#include "schreier/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace schreier {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception is rethrown after all workers stop.
template <class Fn>
void parallel_for(long count, int threads, Fn fn) {
    const int workers = static_cast<int>(std::min<long>(resolve_threads(threads), std::max(1L, count)));
    if (workers <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_lock;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (long i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_lock);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double mean_stderr(const std::vector<double>& xs, double& stderr_out) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    stderr_out = xs.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    return mean;
}

SrwTrial srw_trial(const LabeledGraph& g, long steps, Rng& rng) {
    const int k = 2 * g.rank();
    std::string v = g.basepoint();
    std::vector<Letter> stack;  // letters read inside the current branch
    SrwTrial out;
    std::optional<long> base_dist = g.distance_from_basepoint(v);
    bool known = base_dist.has_value();
    out.max_distance = known ? *base_dist : -1;
    for (long t = 0; t < steps; ++t) {
        const Letter l = static_cast<Letter>(rng.below(static_cast<std::uint64_t>(k)));
        if (!stack.empty()) {
            if (l == inverse(stack.back())) {
                stack.pop_back();
            } else {
                stack.push_back(l);
            }
        } else if (g.enters_branch(v, l).value_or(false)) {
            stack.push_back(l);
        } else {
            auto w = g.target(v, l);
            if (!w) throw DomainError("random walk needs a complete graph; vertex '" + v + "' lacks a transition");
            if (*w != v) {
                v = std::move(*w);
                base_dist = g.distance_from_basepoint(v);
                known = known && base_dist.has_value();
            }
        }
        if (known) out.max_distance = std::max(out.max_distance, *base_dist + static_cast<long>(stack.size()));
    }
    if (!known) out.max_distance = -1;
    out.attach_vertex = v;
    out.branch_depth = stack.size();
    out.in_branch = !stack.empty();
    if (known) out.distance = *base_dist + static_cast<long>(stack.size());
    if (stack.empty()) {
        out.final_vertex = v;
    } else {
        // Branch slots of branch-filled graphs are named root~word; stored
        // stems of a finite graph have their own names, so trace those.
        const auto first = g.target(v, stack.front());
        std::string slot = v + "~" + letter_symbol(stack.front());
        if (first && *first == slot) {
            for (std::size_t i = 1; i < stack.size(); ++i) slot.push_back(letter_symbol(stack[i]));
            out.final_vertex = std::move(slot);
        } else {
            auto end = trace(g, v, ReducedWord::from_reduced(stack));
            out.final_vertex = end ? *end : "";
        }
    }
    return out;
}

}  // namespace

SrwStats srw_simulate(const LabeledGraph& g, long steps, long trials, std::uint64_t seed, int threads) {
    if (!g.is_complete()) throw DomainError("random walk needs a complete graph; complete it with branches first");
    if (steps < 0 || trials < 1) throw DomainError("steps must be >= 0 and trials >= 1");
    SrwStats stats;
    stats.steps = steps;
    stats.seed = seed;
    stats.trials.resize(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](long i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        stats.trials[static_cast<std::size_t>(i)] = srw_trial(g, steps, rng);
    });
    std::vector<double> in_branch, dist;
    bool all_known = true;
    for (const SrwTrial& t : stats.trials) {
        in_branch.push_back(t.in_branch ? 1.0 : 0.0);
        if (t.distance) {
            dist.push_back(static_cast<double>(*t.distance));
        } else {
            all_known = false;
        }
    }
    stats.branch_fraction = mean_stderr(in_branch, stats.branch_fraction_stderr);
    if (all_known) {
        double se = 0.0;
        stats.mean_distance = mean_stderr(dist, se);
        stats.mean_distance_stderr = se;
    }
    return stats;
}

namespace {

void require_finite_complete(const NSBasis& basis, const char* what) {
    const Ball& b = basis.ball();
    if (!b.exhaustive) throw DomainError(std::string(what) + " needs a finite graph explored completely");
    if (std::find(b.trans.begin(), b.trans.end(), kStem) != b.trans.end()) {
        throw DomainError(std::string(what) + " needs finite index (the graph has hanging branches)");
    }
}

}  // namespace

EdgeChainReport edge_chain_first_nontree(const NSBasis& basis) {
    require_finite_complete(basis, "exact edge chain");
    const Ball& b = basis.ball();
    const int k = 2 * b.m;
    const std::size_t gens = 2 * basis.rank();
    std::vector<long> unknown(b.trans.size(), -1);
    std::vector<std::pair<int, Letter>> tree;
    for (int v = 0; v < b.size(); ++v) {
        for (Letter l = 0; l < k; ++l) {
            if (basis.edge_generator(v, l) < 0) {
                unknown[static_cast<std::size_t>(v) * k + l] = static_cast<long>(tree.size());
                tree.emplace_back(v, l);
            }
        }
    }
    // Row e: p_e - sum_{f tree} p_f / (2m-1) = sum_{f non-tree} delta_{gen f} / (2m-1).
    const std::size_t n = tree.size();
    const MeasureValue step(1, k - 1);
    std::vector<std::vector<MeasureValue>> a(n, std::vector<MeasureValue>(n + gens, 0));
    for (std::size_t e = 0; e < n; ++e) {
        const auto [v, l] = tree[e];
        const int w = b.at(v, l);
        a[e][e] += 1;
        for (Letter l2 = 0; l2 < k; ++l2) {
            if (l2 == inverse(l)) continue;
            const GenLetter x = basis.edge_generator(w, l2);
            if (x >= 0) {
                a[e][n + static_cast<std::size_t>(x)] += step;
            } else {
                a[e][static_cast<std::size_t>(unknown[static_cast<std::size_t>(w) * k + l2])] -= step;
            }
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) throw DomainError("edge chain system is singular");
        std::swap(a[c], a[pivot]);
        const MeasureValue inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const MeasureValue f = a[r][c];
            for (std::size_t j = c; j < n + gens; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<MeasureValue> theta(gens, 0);
    const MeasureValue start(1, k);
    for (Letter l = 0; l < k; ++l) {
        const GenLetter x = basis.edge_generator(0, l);
        if (x >= 0) {
            theta[static_cast<std::size_t>(x)] += start;
        } else {
            const auto& row = a[static_cast<std::size_t>(unknown[static_cast<std::size_t>(l)])];
            for (std::size_t s = 0; s < gens; ++s) theta[s] += start * row[n + s];
        }
    }
    EdgeChainReport report;
    report.exact = true;
    report.exact_total = 0;
    for (std::size_t s = 0; s < gens; ++s) {
        theta[s].canonicalize();
        ThetaEntry entry;
        entry.s = static_cast<GenLetter>(s);
        entry.exact = theta[s];
        entry.estimate = theta[s].get_d();
        report.exact_total += theta[s];
        report.theta.push_back(std::move(entry));
    }
    report.exact_total.canonicalize();
    return report;
}

EdgeChainReport edge_chain_monte_carlo(const NSBasis& basis, long trials, std::uint64_t seed, int threads,
                                       long max_steps) {
    if (trials < 1) throw DomainError("need at least one trial");
    const Ball& b = basis.ball();
    const int k = 2 * b.m;
    constexpr GenLetter kEscaped = -1, kCensored = -2;
    std::vector<GenLetter> outcome(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](long i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        int v = 0;
        Letter l = static_cast<Letter>(rng.below(static_cast<std::uint64_t>(k)));
        GenLetter result = kCensored;
        for (long step = 0; step < max_steps; ++step) {
            const int t = b.at(v, l);
            if (t == kStem) {
                result = kEscaped;
                break;
            }
            if (t == kBeyond) break;
            const GenLetter x = basis.edge_generator(v, l);
            if (x >= 0) {
                result = x;
                break;
            }
            v = t;
            const Letter r = static_cast<Letter>(rng.below(static_cast<std::uint64_t>(k - 1)));
            l = r >= inverse(l) ? r + 1 : r;
        }
        outcome[static_cast<std::size_t>(i)] = result;
    });
    EdgeChainReport report;
    report.trials = trials;
    report.seed = seed;
    std::vector<long> counts(2 * basis.rank(), 0);
    long escaped = 0, censored = 0;
    for (GenLetter x : outcome) {
        if (x == kEscaped) {
            ++escaped;
        } else if (x == kCensored) {
            ++censored;
        } else {
            ++counts[static_cast<std::size_t>(x)];
        }
    }
    const double n = static_cast<double>(trials);
    for (std::size_t s = 0; s < counts.size(); ++s) {
        ThetaEntry entry;
        entry.s = static_cast<GenLetter>(s);
        entry.estimate = static_cast<double>(counts[s]) / n;
        entry.stderr_ = std::sqrt(entry.estimate * (1.0 - entry.estimate) / n);
        report.theta.push_back(entry);
    }
    report.escaped = static_cast<double>(escaped) / n;
    report.censored = static_cast<double>(censored) / n;
    return report;
}

std::vector<MeasureValue> exact_theta(const EdgeChainReport& report) {
    if (!report.exact) throw DomainError("theta estimates cannot feed an exact cycle chain");
    std::vector<MeasureValue> out;
    for (const ThetaEntry& e : report.theta) out.push_back(*e.exact);
    return out;
}

CycleChain cycle_chain_build(const NSBasis& basis, const std::vector<MeasureValue>& theta) {
    require_finite_complete(basis, "exact cycle chain");
    const std::size_t n = 2 * basis.rank();
    if (n == 0) throw DomainError("cycle chain of the trivial subgroup is empty");
    if (theta.size() != n) throw DomainError("theta needs one value per signed generator");
    MeasureValue total = 0;
    for (const MeasureValue& t : theta) {
        if (t <= 0) throw DomainError("theta must be positive");
        total += t;
    }
    if (total != 1) throw DomainError("theta sums to " + to_string(total) + ", not 1");
    CycleChain chain;
    chain.m = basis.m();
    chain.theta = theta;
    chain.M.assign(n, std::vector<MeasureValue>(n, 0));
    std::vector<ReducedWord> sigma;
    for (std::size_t s = 0; s < n; ++s) sigma.push_back(basis.sigma(static_cast<GenLetter>(s)));
    const long base = 2L * basis.m() - 1;
    for (std::size_t s = 0; s < n; ++s) {
        MeasureValue row = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (static_cast<GenLetter>(t) == gen_inverse(static_cast<GenLetter>(s))) continue;
            const long exponent =
                static_cast<long>(sigma[t].size()) - static_cast<long>((sigma[s] * sigma[t]).size());
            MeasureValue v = power(base, exponent) * theta[t] / theta[s];
            v.canonicalize();
            row += v;
            chain.M[s][t] = std::move(v);
        }
        if (row != 1) {
            throw DomainError("row " + basis.name(static_cast<GenLetter>(s)) + " of the cycle chain sums to " +
                              to_string(row) + ", not 1: theta is inconsistent");
        }
    }
    return chain;
}

namespace {

struct SamplingTables {
    std::vector<double> initial;
    std::vector<std::vector<double>> rows;
};

SamplingTables tables_of(const CycleChain& chain) {
    SamplingTables t;
    double acc = 0.0;
    for (const MeasureValue& x : chain.theta) t.initial.push_back(acc += x.get_d());
    for (const auto& row : chain.M) {
        std::vector<double> cum;
        acc = 0.0;
        for (const MeasureValue& x : row) cum.push_back(acc += x.get_d());
        t.rows.push_back(std::move(cum));
    }
    return t;
}

std::size_t draw(const std::vector<double>& cumulative, const std::vector<MeasureValue>* exact_row, Rng& rng) {
    const double u = rng.uniform() * cumulative.back();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                             cumulative.begin());
    i = std::min(i, cumulative.size() - 1);
    // Never land on a zero-probability entry through rounding.
    if (exact_row) {
        while ((*exact_row)[i] == 0) i = i == 0 ? cumulative.size() - 1 : i - 1;
    }
    return i;
}

CycleSample sample_with(const SamplingTables& tables, const CycleChain& chain, const NSBasis& basis, long steps,
                        Rng& rng) {
    CycleSample out;
    if (steps <= 0) return out;
    std::size_t s = draw(tables.initial, &chain.theta, rng);
    out.xi.push_back(static_cast<GenLetter>(s));
    for (long i = 1; i < steps; ++i) {
        s = draw(tables.rows[s], &chain.M[s], rng);
        out.xi.push_back(static_cast<GenLetter>(s));
    }
    out.boundary_prefix = sigma_infinity_prefix(basis, out.xi);
    return out;
}

}  // namespace

CycleSample cycle_chain_simulate(const CycleChain& chain, const NSBasis& basis, long steps, std::uint64_t seed,
                                 std::uint64_t stream) {
    Rng rng(seed, stream);
    return sample_with(tables_of(chain), chain, basis, steps, rng);
}

std::vector<CycleSample> cycle_chain_sample(const CycleChain& chain, const NSBasis& basis, long steps, long samples,
                                            std::uint64_t seed, int threads) {
    const SamplingTables tables = tables_of(chain);
    std::vector<CycleSample> out(static_cast<std::size_t>(std::max(0L, samples)));
    parallel_for(samples, threads, [&](long i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = sample_with(tables, chain, basis, steps, rng);
    });
    return out;
}

std::vector<CylinderValue> cycle_chain_cylinders(const CycleChain& chain, const NSBasis& basis, int dim) {
    if (dim < 1) throw DomainError("cylinder dimension must be at least 1");
    std::map<ReducedWord, MeasureValue> acc;
    std::vector<GenLetter> xi;
    auto walk = [&](auto&& self, const MeasureValue& weight) -> void {
        const ReducedWord prefix = sigma_infinity_prefix(basis, xi);
        if (static_cast<int>(prefix.size()) >= dim) {
            acc[prefix.prefix(static_cast<std::size_t>(dim))] += weight;
            return;
        }
        const std::size_t s = static_cast<std::size_t>(xi.back());
        for (std::size_t t = 0; t < chain.size(); ++t) {
            if (chain.M[s][t] == 0) continue;
            xi.push_back(static_cast<GenLetter>(t));
            self(self, weight * chain.M[s][t]);
            xi.pop_back();
        }
    };
    for (std::size_t s = 0; s < chain.size(); ++s) {
        xi.assign(1, static_cast<GenLetter>(s));
        walk(walk, chain.theta[s]);
    }
    std::vector<CylinderValue> out;
    for (auto& [w, v] : acc) {
        v.canonicalize();
        out.push_back({w, v});
    }
    return out;
}

TransienceReport transience_report(const LabeledGraph& g, int depth, std::optional<bool> family_transient,
                                   const std::string& family_source) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    TransienceReport report;
    report.depth = depth;
    const int m = g.rank();
    const std::vector<BigInt> c = cogrowth_counts(g, depth);
    MeasureValue sum = 0;
    for (int n = 0; n <= depth; ++n) {
        sum += ratio(c[n], ipower(2L * m - 1, static_cast<unsigned long>(n)));
        sum.canonicalize();
        report.partial_sums.push_back(sum);
    }

    const FiniteGraph* finite = dynamic_cast<const FiniteGraph*>(&g);
    if (const auto* completed = dynamic_cast<const CompletedGraph*>(&g)) finite = &completed->stored();
    if (finite) {
        if (finite->is_complete()) {
            report.verdict = "recurrent";
            report.certified = true;
            report.certificate = "finite_index_recurrent";
            return report;
        }
        const CogrowthEstimate est = vH_estimate(*finite);
        if (est.degenerate || (est.certified && est.upper < 2.0 * m - 1.0)) {
            report.verdict = "transient";
            report.certified = true;
            report.certificate = "cogrowth_below_maximal";
            return report;
        }
    }
    if (family_transient) {
        report.verdict = *family_transient ? "transient" : "recurrent";
        report.certified = true;
        report.certificate = "family_metadata" + (family_source.empty() ? "" : ": " + family_source);
        return report;
    }
    if (depth < 2) {
        report.verdict = "undetermined_empirical";
        return report;
    }
    // Growth over the second half of the range compared with the terms so far.
    const MeasureValue tail = report.partial_sums[depth] - report.partial_sums[depth / 2];
    if (tail >= MeasureValue(1, 10)) {
        report.verdict = "divergent_empirical";
    } else if (tail < MeasureValue(1, 100)) {
        report.verdict = "convergent_empirical";
    } else {
        report.verdict = "undetermined_empirical";
    }
    return report;
}

}  // namespace schreier
