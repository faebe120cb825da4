#include "schreier/boundary.hpp"

#include "schreier/error.hpp"
#include "schreier/random.hpp"

#include <algorithm>
#include <map>

namespace schreier {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: break;
    }
    return "unknown";
}

std::string to_string(BoundaryClass c) {
    switch (c) {
        case BoundaryClass::delta: return "Delta";
        case BoundaryClass::omega: return "Omega";
        case BoundaryClass::theta: return "Theta";
        case BoundaryClass::inconclusive: break;
    }
    return "inconclusive";
}

std::string to_string(BucketKind k) { return k == BucketKind::delta ? "delta" : "omega_compatible"; }

ReducedWord sigma_infinity_prefix(const NSBasis& basis, std::span<const GenLetter> xi) {
    require_reduced(xi);
    if (xi.empty()) return {};
    std::vector<Letter> letters;
    const ReducedWord head = basis.sigma_minus(xi.front());
    letters.assign(head.letters().begin(), head.letters().end());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        letters.push_back(basis.sigma_middle(xi[i]));
        if (i + 1 < xi.size()) {
            const ReducedWord glue = basis.junction(xi[i], xi[i + 1]);
            letters.insert(letters.end(), glue.letters().begin(), glue.letters().end());
        }
    }
    return ReducedWord::from_reduced(std::move(letters));
}

BoundaryVerdict classify_boundary_point(const NSBasis& basis, const BoundaryPoint& omega, int depth) {
    const Ball& b = basis.ball();
    if (omega.preperiod().min_rank() > b.m || omega.period().min_rank() > b.m) {
        throw DomainError("boundary point uses letters beyond the graph rank");
    }
    BoundaryVerdict out;
    const std::size_t pre = omega.preperiod().size();
    const std::size_t per = omega.period().size();
    std::map<std::pair<int, std::size_t>, std::size_t> seen;
    std::vector<int> visited;
    int v = 0;
    for (int i = 0; i < depth; ++i) {
        const std::size_t pos = static_cast<std::size_t>(i);
        if (pos >= pre) {
            const std::size_t phase = (pos - pre) % per;
            auto [it, fresh] = seen.emplace(std::make_pair(v, phase), pos);
            if (!fresh) {
                const std::size_t start = it->second;
                out.depth = i;
                out.state_cycle = true;
                out.cycle_start = start;
                out.cycle_length = pos - start;
                const bool crosses = std::any_of(out.nontree_positions.begin(), out.nontree_positions.end(),
                                                 [&](std::size_t p) { return p >= start; });
                bool core_loop = true;
                for (std::size_t p = start; p < pos; ++p) {
                    core_loop = core_loop && b.status[visited[p]] == CoreStatus::in_core;
                }
                out.in_lambda_rad = Tri::yes;
                if (crosses) {
                    out.cls = BoundaryClass::omega;
                    out.in_omega = Tri::yes;
                    out.in_lambda = Tri::yes;
                } else {
                    out.cls = BoundaryClass::delta;
                    out.in_omega = Tri::no;
                    out.in_lambda = core_loop ? Tri::yes : Tri::unknown;
                }
                return out;
            }
        }
        visited.push_back(v);
        const Letter l = omega.letter_at(pos);
        const int t = b.at(v, l);
        if (t == kStem) {
            out.depth = i + 1;
            out.branch_entry = pos;
            out.cls = out.history.empty() ? BoundaryClass::theta : BoundaryClass::delta;
            out.in_omega = Tri::no;
            out.in_lambda = Tri::no;
            out.in_lambda_rad = Tri::no;
            return out;
        }
        if (t == kBeyond) {
            out.depth = i;
            return out;
        }
        const GenLetter x = basis.edge_generator(v, l);
        if (x >= 0) {
            out.history.push_back(x);
            out.nontree_positions.push_back(pos);
        }
        v = t;
    }
    out.depth = depth;
    return out;
}

Partition partition_at_depth(const NSBasis& basis, int n) {
    if (n < 1) throw DomainError("partition depth must be at least 1");
    const Ball& b = basis.ball();
    const int k = 2 * b.m;
    std::map<std::pair<std::vector<GenLetter>, int>, BigInt> buckets;
    std::vector<GenLetter> history;
    std::vector<BigInt> tail(n + 1);
    for (int r = 0; r <= n; ++r) tail[r] = ipower(k - 1, static_cast<unsigned long>(r));

    auto walk = [&](auto&& self, int v, Letter last, int step) -> void {
        if (step == n) {
            buckets[{history, static_cast<int>(BucketKind::omega_compatible)}] += 1;
            return;
        }
        for (Letter l = 0; l < k; ++l) {
            if (last >= 0 && l == inverse(last)) continue;
            const int t = b.at(v, l);
            if (t == kStem) {
                buckets[{history, static_cast<int>(BucketKind::delta)}] += tail[n - step - 1];
                continue;
            }
            if (t == kBeyond) {
                throw DepthError("partition depth " + std::to_string(n) + " exceeds the explored radius " +
                                 std::to_string(b.radius));
            }
            const GenLetter x = basis.edge_generator(v, l);
            if (x >= 0) history.push_back(x);
            self(self, t, l, step + 1);
            if (x >= 0) history.pop_back();
        }
    };
    walk(walk, 0, -1, 0);

    Partition out;
    out.n = n;
    const MeasureValue cell = cylinder_measure(ReducedWord::from_reduced(std::vector<Letter>(n, 0)), Alphabet(b.m));
    out.total_count = 0;
    out.total_measure = 0;
    for (auto& [key, count] : buckets) {
        PartitionBucket bucket;
        bucket.history = key.first;
        bucket.kind = static_cast<BucketKind>(key.second);
        bucket.count = count;
        bucket.measure = MeasureValue(count) * cell;
        bucket.measure.canonicalize();
        out.total_count += count;
        out.total_measure += bucket.measure;
        out.buckets.push_back(std::move(bucket));
    }
    out.total_measure.canonicalize();
    return out;
}

std::vector<ReducedWord> subgroup_ball(const NSBasis& basis, int radius) {
    const Ball& b = basis.ball();
    const int k = 2 * b.m;
    std::vector<ReducedWord> out;
    out.emplace_back();
    std::vector<Letter> path;
    auto walk = [&](auto&& self, int v, Letter last) -> void {
        const int left = radius - static_cast<int>(path.size());
        if (left <= 0) return;
        for (Letter l = 0; l < k; ++l) {
            if (last >= 0 && l == inverse(last)) continue;
            const int t = b.at(v, l);
            if (t == kStem) continue;
            if (t == kBeyond) {
                if (2 * (b.radius + 1) <= radius) {
                    throw DepthError("subgroup ball of radius " + std::to_string(radius) +
                                     " needs an explored radius of at least " + std::to_string(radius / 2));
                }
                continue;
            }
            if (b.depth[t] > left - 1) continue;
            path.push_back(l);
            if (t == 0) out.push_back(ReducedWord::from_reduced(path));
            self(self, t, l);
            path.pop_back();
        }
    };
    walk(walk, 0, -1);
    return out;
}

MeasureValue sigma_partial_sum(const NSBasis& basis, const BoundaryPoint& omega, int radius) {
    const long base = 2L * basis.m() - 1;
    MeasureValue sum = 0;
    for (const ReducedWord& h : subgroup_ball(basis, radius)) sum += power(base, -busemann(h, omega));
    sum.canonicalize();
    return sum;
}

namespace {

std::vector<GenLetter> random_gen_word(Rng& rng, std::size_t count, std::size_t length, GenLetter avoid_first,
                                       GenLetter avoid_last) {
    std::vector<GenLetter> out;
    for (int attempt = 0; attempt < 64 && out.size() < length; ++attempt) {
        out.clear();
        for (std::size_t i = 0; i < length; ++i) {
            GenLetter x;
            do {
                x = static_cast<GenLetter>(rng.below(2 * count));
            } while ((i == 0 && x == avoid_first) || (i > 0 && x == gen_inverse(out.back())));
            out.push_back(x);
        }
        if (!out.empty() && avoid_last >= 0 && out.back() == avoid_last) out.clear();
    }
    return out;
}

ReducedWord random_reduced(Rng& rng, int m, std::size_t length) {
    std::vector<Letter> out;
    while (out.size() < length) {
        const Letter l = static_cast<Letter>(rng.below(2 * m));
        if (!out.empty() && l == inverse(out.back())) continue;
        out.push_back(l);
    }
    return ReducedWord::from_reduced(std::move(out));
}

}  // namespace

SignCheckReport busemann_sign_check(const NSBasis& basis, std::size_t omega_samples, int max_prefix,
                                    std::size_t delta_samples, int radius, std::uint64_t seed) {
    SignCheckReport report;
    Rng rng(seed, 0);
    const std::size_t r = basis.rank();
    if (r > 0) {
        for (std::size_t i = 0; i < omega_samples; ++i) {
            // q cyclically reduced, p q reduced.
            std::vector<GenLetter> q;
            while (q.empty()) {
                const std::size_t len = 1 + rng.below(3);
                q = random_gen_word(rng, r, len, -1, -1);
                if (q.size() > 1 && q.back() == gen_inverse(q.front())) q.clear();
            }
            const std::size_t plen = rng.below(4);
            std::vector<GenLetter> p =
                plen ? random_gen_word(rng, r, plen, -1, gen_inverse(q.front())) : std::vector<GenLetter>{};
            const BoundaryPoint omega(expand_from_basis(basis, p), expand_from_basis(basis, q));
            std::vector<GenLetter> xi = p;
            while (static_cast<int>(xi.size()) < max_prefix) xi.insert(xi.end(), q.begin(), q.end());
            for (int n = 1; n <= max_prefix; ++n) {
                const ReducedWord h = expand_from_basis(basis, std::span<const GenLetter>(xi.data(), n));
                const long bv = busemann(h, omega);
                ++report.omega_checks;
                if (bv > 0) report.violations.push_back({"omega_prefix", to_string(omega), to_display(h), bv});
            }
        }
    }
    if (delta_samples > 0) {
        const std::vector<ReducedWord> elements = subgroup_ball(basis, radius);
        const int depth = basis.ball().radius < 0 ? 64 : basis.ball().radius;
        for (std::size_t attempt = 0; attempt < 50 * delta_samples && report.delta_points < delta_samples;
             ++attempt) {
            const ReducedWord u = random_reduced(rng, basis.m(), rng.below(5));
            const ReducedWord v = random_reduced(rng, basis.m(), 1 + rng.below(3));
            const BoundaryPoint omega(u, v);
            const BoundaryVerdict verdict = classify_boundary_point(basis, omega, depth);
            const bool in_delta = verdict.cls == BoundaryClass::theta ||
                                  (verdict.cls == BoundaryClass::delta && verdict.history.empty());
            if (!in_delta) continue;
            ++report.delta_points;
            for (const ReducedWord& h : elements) {
                const long bv = busemann(h, omega);
                ++report.delta_checks;
                if (bv < 0) report.violations.push_back({"delta_element", to_string(omega), to_display(h), bv});
            }
        }
    }
    return report;
}

}  // namespace schreier
