#include "schreier/asymptotics.hpp"

#include "schreier/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace schreier {

SphereProfile sphere_profile(const Ball& ball, int depth) {
    if (depth < 0) throw DomainError("sphere depth must be nonnegative");
    if (!ball.exhaustive && ball.radius < depth) {
        throw DepthError("sphere table to depth " + std::to_string(depth) + " needs an explored radius of " +
                         std::to_string(depth) + ", have " + std::to_string(ball.radius));
    }
    const int k = 2 * ball.m;
    std::vector<BigInt> vertices(depth + 1, 0);
    std::vector<BigInt> stems(depth + 1, 0);
    std::vector<BigInt> gamma(depth + 1, 0);
    std::vector<char> gamma_known(depth + 1, 1);
    for (int v = 0; v < ball.size(); ++v) {
        const int d = ball.depth[v];
        if (d > depth) continue;
        vertices[d] += 1;
        for (Letter l = 0; l < k; ++l) {
            const int t = ball.at(v, l);
            if (t == kStem) {
                stems[d] += 1;
            } else if (t == kBeyond) {
                gamma_known[d] = 0;
            } else if (!ball.is_tree_edge(v, l)) {
                gamma[d] += 1;
            }
        }
    }
    SphereProfile out;
    BigInt branch = 0;  // vertices of hanging branches at the current level
    for (int n = 0; n <= depth; ++n) {
        if (n > 0) branch = branch * (k - 1) + stems[n - 1];
        std::optional<BigInt> g;
        if (gamma_known[n]) g = gamma[n];
        if (!g && n < depth) throw DepthError("gamma unknown below the requested depth");
        out.emplace_back(vertices[n] + branch, std::move(g));
    }
    return out;
}

SphereTable sphere_table(int m, const SphereProfile& profile) {
    if (profile.empty()) throw DomainError("empty sphere profile");
    SphereTable t;
    t.m = m;
    t.depth = static_cast<int>(profile.size()) - 1;
    const long k = 2L * m;
    MeasureValue partial = 0;
    for (int n = 0; n <= t.depth; ++n) {
        SphereRow row;
        row.n = n;
        row.sphere = profile[n].first;
        row.gamma = profile[n].second;
        if (n == 0) {
            row.a_ratio = MeasureValue(row.sphere);
        } else {
            row.a_ratio = ratio(row.sphere, BigInt(k) * ipower(k - 1, static_cast<unsigned long>(n - 1)));
        }
        row.a_ratio.canonicalize();
        row.a_sum = 1 - partial / k;
        row.a_sum.canonicalize();
        if (n < t.depth) {
            partial += ratio(*profile[n].second, ipower(k - 1, static_cast<unsigned long>(n)));
            partial.canonicalize();
        }
        t.routes_agree = t.routes_agree && row.a_ratio == row.a_sum;
        if (n > 0) t.monotone = t.monotone && row.a_ratio <= t.rows.back().a_ratio;
        if (n == 1) t.recurrence_holds = t.recurrence_holds && row.sphere == k - *profile[0].second;
        if (n >= 2) {
            const SphereRow& prev = t.rows.back();
            t.recurrence_holds = t.recurrence_holds && row.sphere == (k - 1) * prev.sphere - *prev.gamma;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

SphereTable sphere_table(const LabeledGraph& g, int depth) {
    const Ball ball = explore(g, g.is_finite() ? -1 : depth);
    return sphere_table(g.rank(), sphere_profile(ball, depth));
}

std::vector<BigInt> cogrowth_counts(const Ball& ball, int depth) {
    if (!ball.exhaustive && 2 * ball.radius < depth) {
        throw DepthError("cogrowth to length " + std::to_string(depth) + " needs an explored radius of " +
                         std::to_string((depth + 1) / 2));
    }
    const int k = 2 * ball.m;
    const std::size_t states = static_cast<std::size_t>(ball.size()) * k;
    std::vector<BigInt> cur(states, 0), next(states, 0);
    std::vector<BigInt> out(depth + 1, 0);
    out[0] = 1;
    if (depth == 0) return out;
    for (Letter l = 0; l < k; ++l) {
        const int t = ball.at(0, l);
        if (t >= 0) cur[static_cast<std::size_t>(t) * k + l] += 1;
    }
    for (int n = 1; n <= depth; ++n) {
        for (Letter l = 0; l < k; ++l) out[n] += cur[l];
        if (n == depth) break;
        for (auto& x : next) x = 0;
        for (int v = 0; v < ball.size(); ++v) {
            for (Letter last = 0; last < k; ++last) {
                const BigInt& c = cur[static_cast<std::size_t>(v) * k + last];
                if (c == 0) continue;
                for (Letter l = 0; l < k; ++l) {
                    if (l == inverse(last)) continue;
                    const int t = ball.at(v, l);
                    if (t >= 0) next[static_cast<std::size_t>(t) * k + l] += c;
                }
            }
        }
        std::swap(cur, next);
    }
    return out;
}

std::vector<BigInt> cogrowth_counts(const LabeledGraph& g, int depth) {
    const Ball ball = explore(g, g.is_finite() ? -1 : (depth + 1) / 2);
    return cogrowth_counts(ball, depth);
}

HashimotoOperator::HashimotoOperator(const FiniteGraph& g) {
    const int k = 2 * g.rank();
    std::unordered_map<long, std::size_t> id;
    std::vector<std::pair<int, Letter>> edges;
    for (int v = 0; v < g.size(); ++v) {
        if (!g.in_absolute_core(v)) continue;
        for (Letter l = 0; l < k; ++l) {
            const int w = g.at(v, l);
            if (w < 0 || !g.in_absolute_core(w)) continue;
            id.emplace(static_cast<long>(v) * k + l, edges.size());
            edges.emplace_back(v, l);
        }
    }
    heads_.reserve(edges.size());
    succ_start_.push_back(0);
    for (const auto& [v, l] : edges) {
        const int w = g.at(v, l);
        heads_.push_back(w);
        for (Letter l2 = 0; l2 < k; ++l2) {
            if (l2 == inverse(l)) continue;
            const auto it = id.find(static_cast<long>(w) * k + l2);
            if (it != id.end()) succ_.push_back(it->second);
        }
        succ_start_.push_back(succ_.size());
    }
}

void HashimotoOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(size(), 0.0);
    for (std::size_t e = 0; e < size(); ++e) {
        double s = 0.0;
        for (std::size_t i = succ_start_[e]; i < succ_start_[e + 1]; ++i) s += x[succ_[i]];
        y[e] = s;
    }
}

CogrowthEstimate vH_estimate(const FiniteGraph& g) {
    CogrowthEstimate est;
    est.method = "non-backtracking power iteration on the core";
    const HashimotoOperator op(g);
    if (op.size() == 0) {
        est.degenerate = true;
        est.certified = true;
        est.method = "empty core";
        return est;
    }
    constexpr double tolerance = 1e-9;
    constexpr long max_iterations = 100000;
    std::vector<double> x(op.size(), 1.0), y;
    double lo = 0.0, hi = 0.0;
    for (long it = 1; it <= max_iterations; ++it) {
        op.apply(x, y);
        lo = INFINITY;
        hi = 0.0;
        double top = 0.0;
        // Shift by the identity: B + I has the same Perron vector and no
        // periodic oscillation.
        for (std::size_t e = 0; e < x.size(); ++e) {
            y[e] += x[e];
            const double r = y[e] / x[e];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            top = std::max(top, y[e]);
        }
        for (std::size_t e = 0; e < x.size(); ++e) x[e] = y[e] / top;
        est.iterations = it;
        if (hi - lo <= tolerance) break;
    }
    est.lower = lo - 1.0;
    est.upper = hi - 1.0;
    est.value = 0.5 * (est.lower + est.upper);
    est.certified = hi - lo <= tolerance;
    return est;
}

CogrowthEstimate vH_estimate(const LabeledGraph& g, int depth) {
    if (const auto* finite = dynamic_cast<const FiniteGraph*>(&g)) return vH_estimate(*finite);
    CogrowthEstimate est;
    est.method = "cogrowth roots c_n^(1/n), uncertified";
    const std::vector<BigInt> c = cogrowth_counts(g, depth);
    for (int n = 1; n <= depth; ++n) {
        if (c[n] == 0) {
            est.root_estimates.push_back(0.0);
            continue;
        }
        long exp = 0;
        const double mant = mpz_get_d_2exp(&exp, c[n].get_mpz_t());
        const double root = std::exp((std::log(mant) + exp * std::log(2.0)) / n);
        est.root_estimates.push_back(root);
        est.value = root;
    }
    return est;
}

double rho_from_vH(double vH, int m) {
    const double top = 2.0 * m - 1.0;
    constexpr double slack = 1e-12;
    if (!(vH >= 1.0 - slack && vH <= top + slack)) {
        throw DomainError("cogrowth must lie in [1, 2m-1], got " + std::to_string(vH));
    }
    const double r = std::sqrt(top);
    if (vH <= r) return r / m;
    return r / (2.0 * m) * (r / vH + vH / r);
}

std::vector<ReturnProbability> rho_direct(const LabeledGraph& g, int max_half_steps) {
    if (max_half_steps < 1) throw DomainError("need at least one step pair");
    const int steps = 2 * max_half_steps;
    const Ball ball = explore(g, g.is_finite() ? -1 : max_half_steps);
    const int k = 2 * ball.m;
    const int n = ball.size();
    std::vector<int> stems(n, 0);
    for (int v = 0; v < n; ++v) {
        for (Letter l = 0; l < k; ++l) stems[v] += ball.at(v, l) == kStem;
    }
    // Walk counts; branch mass is aggregated per attachment vertex and depth.
    const int cap = max_half_steps + 1;
    std::vector<BigInt> core(n, 0), core_next(n, 0);
    std::vector<BigInt> branch(static_cast<std::size_t>(n) * (cap + 1), 0), branch_next(branch.size(), 0);
    auto br = [&](std::vector<BigInt>& a, int v, int j) -> BigInt& {
        return a[static_cast<std::size_t>(v) * (cap + 1) + j];
    };
    core[0] = 1;
    std::vector<ReturnProbability> out;
    for (int t = 1; t <= steps; ++t) {
        for (auto& x : core_next) x = 0;
        for (auto& x : branch_next) x = 0;
        for (int v = 0; v < n; ++v) {
            if (core[v] != 0) {
                for (Letter l = 0; l < k; ++l) {
                    const int w = ball.at(v, l);
                    if (w >= 0) core_next[w] += core[v];
                }
                if (stems[v]) br(branch_next, v, 1) += core[v] * stems[v];
            }
            for (int j = 1; j <= cap; ++j) {
                const BigInt& c = br(branch, v, j);
                if (c == 0) continue;
                if (j == 1) {
                    core_next[v] += c;
                } else {
                    br(branch_next, v, j - 1) += c;
                }
                if (j < cap) br(branch_next, v, j + 1) += c * (k - 1);
            }
        }
        std::swap(core, core_next);
        std::swap(branch, branch_next);
        if (t % 2 == 0) {
            ReturnProbability r;
            r.steps = t;
            r.probability = ratio(core[0], ipower(k, static_cast<unsigned long>(t)));
            r.probability.canonicalize();
            if (core[0] != 0) {
                long exp = 0;
                const double mant = mpz_get_d_2exp(&exp, core[0].get_mpz_t());
                const double logp = std::log(mant) + exp * std::log(2.0) - t * std::log(static_cast<double>(k));
                r.root = std::exp(logp / t);
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

MeasureValue poincare_partial(const std::vector<BigInt>& cogrowth, int m, int depth) {
    if (depth < 0 || static_cast<std::size_t>(depth) >= cogrowth.size()) {
        throw DepthError("Poincare partial sum needs cogrowth counts up to " + std::to_string(depth));
    }
    MeasureValue sum = 0;
    for (int n = 0; n <= depth; ++n) {
        sum += ratio(cogrowth[n], ipower(2L * m - 1, static_cast<unsigned long>(n)));
    }
    sum.canonicalize();
    return sum;
}

SubgroupFacts facts_of(const FiniteGraph& g) {
    SubgroupFacts f;
    f.finitely_generated = true;
    if (g.is_complete()) {
        f.index = g.size();
    } else {
        f.infinite_index_known = true;
    }
    f.source = "folded graph";
    return f;
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::conservative_ergodic: return "conservative_ergodic";
        case Classification::conservative: return "conservative";
        case Classification::completely_dissipative: return "completely_dissipative";
        case Classification::mixed: return "mixed";
        case Classification::empirical: return "empirical";
        case Classification::unknown: break;
    }
    return "unknown";
}

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

Verdict classify(const LabeledGraph& g, const SubgroupFacts& facts, int depth, const SphereProfile* profile) {
    Verdict v;
    v.depth = depth;
    const int m = g.rank();
    bool conservative = false;
    bool dissipative = false;
    if (facts.index) {
        conservative = true;
        v.classification = Classification::conservative_ergodic;
        v.ledger.push_back({"hopf_alternative_finite_index", "index " + std::to_string(*facts.index)});
    } else if (facts.finitely_generated.value_or(false) && facts.infinite_index_known) {
        dissipative = true;
        v.classification = Classification::completely_dissipative;
        v.ledger.push_back({"hopf_alternative_infinite_index", "finitely generated, infinite index"});
    }
    if (const auto* finite = dynamic_cast<const FiniteGraph*>(&g); finite && !facts.index) {
        const CogrowthEstimate est = vH_estimate(*finite);
        const double threshold = std::sqrt(2.0 * m - 1.0);
        if (!est.degenerate && est.upper < threshold) {
            dissipative = true;
            v.classification = Classification::completely_dissipative;
            v.ledger.push_back({"low_cogrowth_dissipative",
                                "v_H <= " + fmt(est.upper) + " < sqrt(2m-1) = " + fmt(threshold)});
        }
    }
    if (facts.normal_nontrivial) {
        conservative = true;
        if (v.classification != Classification::conservative_ergodic) v.classification = Classification::conservative;
        v.ledger.push_back({"normal_subgroup_conservative", facts.source});
    }
    if (facts.growth && *facts.growth < 2.0 * m - 1.0) {
        conservative = true;
        if (v.classification != Classification::conservative_ergodic) v.classification = Classification::conservative;
        v.ledger.push_back({"growth_deficit_conservative",
                            "growth " + fmt(*facts.growth) + " < 2m-1 = " + std::to_string(2 * m - 1)});
    }
    if (conservative && dissipative) {
        throw DomainError("contradictory certificates: the supplied subgroup facts are inconsistent");
    }
    v.certified = conservative || dissipative;

    if (depth > 0) {
        const SphereTable table = profile ? sphere_table(m, *profile) : sphere_table(g, depth);
        v.a_depth = table.rows.back().a_ratio;
        if (!v.certified) {
            const MeasureValue& last = table.rows.back().a_ratio;
            const MeasureValue& mid = table.rows[table.depth / 2].a_ratio;
            v.classification = Classification::empirical;
            if (last <= MeasureValue(1, 20)) {
                v.tendency = "conservative_leaning";
            } else if (2 * last >= mid) {
                v.tendency = "dissipative_leaning";
            } else {
                v.tendency = "undetermined";
            }
        }
    } else if (!v.certified) {
        v.classification = Classification::unknown;
    }
    return v;
}

}  // namespace schreier
