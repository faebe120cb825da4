#include "schreier/cli.hpp"

#include "schreier/asymptotics.hpp"
#include "schreier/boundary.hpp"
#include "schreier/chains.hpp"
#include "schreier/error.hpp"
#include "schreier/families.hpp"
#include "schreier/graph_json.hpp"
#include "schreier/graph_lazy.hpp"
#include "schreier/nielsen_schreier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace schreier::cli {

namespace {

using nlohmann::json;

struct Options {
    int m = 0;  // 0: not given
    std::string gens;
    std::string graph_file;
    std::string family;
    std::string params;
    std::string word;
    std::string basis_word;
    std::string point;
    std::string chain = "srw";
    std::string format = "json";
    std::string name;
    int depth = -1;
    int n_max = 30;
    int rho_steps = 0;
    int dim = 2;
    long steps = 1000;
    long trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    bool require_certified = false;
    bool transience = false;
    bool per_trial = false;
};

struct Input {
    int m = 2;
    GraphPtr graph;                     // complete (lazy when needed)
    std::optional<FiniteGraph> finite;  // stored finite graph, when there is one
    SubgroupFacts facts;
    std::optional<Family> family;
    std::string source;
};

json exact(const MeasureValue& q) { return to_string(q); }
json exact(const BigInt& z) { return to_string(z); }

json estimate(double x) { return json{{"value", x}, {"estimate", true}}; }

std::string hash_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json header(const std::string& command) { return json{{"schema_version", kSchemaVersion}, {"command", command}}; }

Input load_input(const Options& o) {
    const int sources = !o.gens.empty() + !o.graph_file.empty() + !o.family.empty();
    if (sources != 1) throw DomainError("give exactly one of --gens, --graph, --family");
    Input in;
    if (!o.family.empty()) {
        FamilyParams params = parse_family_params(o.params);
        if (o.m) params["m"] = std::to_string(o.m);
        Family f = instantiate(o.family, params);
        in.m = f.m;
        in.graph = f.graph;
        in.finite = f.finite;
        in.facts = f.facts;
        in.source = "family " + o.family;
        in.family = std::move(f);
        return in;
    }
    FiniteGraph g = [&] {
        if (!o.gens.empty()) {
            const Alphabet alphabet(o.m ? o.m : 2);
            return fold(alphabet, parse_word_list(o.gens, alphabet)).graph;
        }
        std::ifstream file(o.graph_file);
        if (!file) throw DomainError("cannot read graph file '" + o.graph_file + "'");
        std::stringstream buffer;
        buffer << file.rdbuf();
        FiniteGraph loaded = graph_from_json_text(buffer.str());
        if (o.m && o.m != loaded.rank()) throw DomainError("--m disagrees with the graph file");
        return loaded;
    }();
    in.m = g.rank();
    in.facts = facts_of(g);
    in.graph = complete_with_branches(g);
    in.source = o.gens.empty() ? "graph " + o.graph_file : "generators " + o.gens;
    in.finite = std::move(g);
    return in;
}

/// Tree over the stored finite graph (whole graph) or the lazy one (depth).
NSBasis basis_of(const Input& in, int depth) {
    if (in.finite) return NSBasis(geodesic_tree(*in.finite));
    if (depth < 0) throw DomainError("lazy graphs need --depth");
    return NSBasis(geodesic_tree(*in.graph, depth));
}

const LabeledGraph& counting_graph(const Input& in) {
    if (in.finite) return *in.finite;
    return *in.graph;
}

json gen_word_json(const NSBasis& basis, const std::vector<GenLetter>& xs) {
    return format_gen_word(basis, xs);
}

json verdict_json(const Verdict& v) {
    json ledger = json::array();
    for (const LedgerEntry& e : v.ledger) ledger.push_back({{"certificate", e.certificate}, {"detail", e.detail}});
    json j{{"classification", to_string(v.classification)},
           {"certified", v.certified},
           {"ledger", ledger},
           {"depth", v.depth}};
    if (!v.tendency.empty()) j["tendency"] = v.tendency;
    if (v.a_depth) j["a_depth"] = exact(*v.a_depth);
    return j;
}

json cogrowth_estimate_json(const CogrowthEstimate& e) {
    json j{{"method", e.method}, {"certified", e.certified}, {"degenerate", e.degenerate}};
    if (!e.degenerate) j["value"] = estimate(e.value);
    if (e.certified && !e.degenerate) {
        j["lower"] = estimate(e.lower);
        j["upper"] = estimate(e.upper);
        j["iterations"] = e.iterations;
    }
    if (!e.root_estimates.empty()) {
        json roots = json::array();
        for (double r : e.root_estimates) roots.push_back(r);
        j["root_estimates"] = {{"values", roots}, {"estimate", true}};
    }
    return j;
}

json transience_json(const TransienceReport& t) {
    json sums = json::array();
    for (const MeasureValue& s : t.partial_sums) sums.push_back(exact(s));
    json j{{"verdict", t.verdict}, {"certified", t.certified}, {"depth", t.depth}, {"partial_sums", sums}};
    if (!t.certificate.empty()) j["certificate"] = t.certificate;
    return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void require_json(const Options& o, const char* command) {
    if (o.format != "json") throw DomainError(std::string("tsv output is not available for ") + command);
}

// Commands -----------------------------------------------------------------

int cmd_fold(const Options& o, std::ostream& out) {
    require_json(o, "fold");
    if (o.gens.empty()) throw DomainError("fold needs --gens");
    const Alphabet alphabet(o.m ? o.m : 2);
    const std::vector<ReducedWord> gens = parse_word_list(o.gens, alphabet);
    const FoldResult r = fold(alphabet, gens);
    json j = header("fold");
    json words = json::array();
    for (const ReducedWord& w : gens) words.push_back(to_display(w));
    j["m"] = alphabet.rank();
    j["generators"] = words;
    j["vertices"] = r.report.vertices;
    j["positive_edges"] = r.report.positive_edges;
    j["complete"] = r.report.complete;
    j["index"] = r.report.index ? json(*r.report.index) : json(nullptr);
    j["rank"] = r.report.rank;
    j["canonical_hash"] = hash_hex(r.graph.canonical_form());
    j["graph"] = graph_to_json(r.graph);
    emit(out, j);
    return kExitOk;
}

int cmd_nstree(const Options& o, std::ostream& out) {
    require_json(o, "nstree");
    const Input in = load_input(o);
    const int depth = o.depth < 0 ? 8 : o.depth;
    const NSBasis basis = basis_of(in, depth);
    json gens = json::array();
    for (const NSGenerator& s : basis.generators()) {
        gens.push_back({{"name", basis.name(2 * s.id)},
                        {"from", basis.ball().names[s.from]},
                        {"label", std::string(1, letter_symbol(s.label))},
                        {"to", basis.ball().names[s.to]},
                        {"minus", to_display(s.minus)},
                        {"middle", std::string(1, letter_symbol(s.middle))},
                        {"plus", to_display(s.plus)},
                        {"word", to_display(s.word)}});
    }
    json j = header("nstree");
    j["m"] = in.m;
    j["source"] = in.source;
    j["depth"] = in.finite ? json(nullptr) : json(depth);
    j["partial"] = basis.partial();
    j["rank"] = basis.rank();
    j["generators"] = gens;
    emit(out, j);
    return kExitOk;
}

int cmd_rewrite(const Options& o, std::ostream& out) {
    require_json(o, "rewrite");
    const Input in = load_input(o);
    const int depth = o.depth < 0 ? 16 : o.depth;
    const NSBasis basis = basis_of(in, depth);
    json j = header("rewrite");
    j["m"] = in.m;
    if (!in.finite) j["depth"] = depth;
    if (!o.word.empty() == !o.basis_word.empty()) throw DomainError("give exactly one of --word, --basis-word");
    if (!o.word.empty()) {
        const ReducedWord w = parse_word(o.word, Alphabet(in.m)).word;
        const std::vector<GenLetter> xs = rewrite_to_basis(basis, w);
        j["word"] = to_display(w);
        j["basis_word"] = gen_word_json(basis, xs);
        j["basis_length"] = xs.size();
    } else {
        const std::vector<GenLetter> xs = parse_gen_word(basis, o.basis_word);
        const ReducedWord w = expand_from_basis(basis, xs);
        j["basis_word"] = gen_word_json(basis, xs);
        j["word"] = to_display(w);
        j["length"] = w.size();
    }
    emit(out, j);
    return kExitOk;
}

int cmd_membership(const Options& o, std::ostream& out) {
    require_json(o, "membership");
    const Input in = load_input(o);
    if (o.word.empty()) throw DomainError("membership needs --word");
    const ReducedWord w = parse_word(o.word, Alphabet(in.m)).word;
    const auto end = trace(*in.graph, in.graph->basepoint(), w);
    json j = header("membership");
    j["m"] = in.m;
    j["word"] = to_display(w);
    j["member"] = end && *end == in.graph->basepoint();
    j["endpoint"] = end ? json(*end) : json(nullptr);
    emit(out, j);
    return kExitOk;
}

SphereTable table_for(const Input& in, int depth) {
    if (in.family && in.family->sphere_profile) return sphere_table(in.m, in.family->sphere_profile(depth));
    return sphere_table(counting_graph(in), depth);
}

int cmd_spheres(const Options& o, std::ostream& out) {
    const Input in = load_input(o);
    const int depth = o.depth < 0 ? 10 : o.depth;
    const SphereTable t = table_for(in, depth);
    if (o.format == "tsv") {
        out << "# depth " << depth << "\n";
        out << "n\tsphere\tgamma\ta_ratio\ta_sum\n";
        for (const SphereRow& r : t.rows) {
            out << r.n << '\t' << to_string(r.sphere) << '\t' << (r.gamma ? to_string(*r.gamma) : "") << '\t'
                << to_string(r.a_ratio) << '\t' << to_string(r.a_sum) << '\n';
        }
        return kExitOk;
    }
    require_json(o, "spheres");
    json rows = json::array();
    for (const SphereRow& r : t.rows) {
        rows.push_back({{"n", r.n},
                        {"sphere", exact(r.sphere)},
                        {"gamma", r.gamma ? exact(*r.gamma) : json(nullptr)},
                        {"a_ratio", exact(r.a_ratio)},
                        {"a_sum", exact(r.a_sum)}});
    }
    json j = header("spheres");
    j["m"] = in.m;
    j["depth"] = depth;
    j["rows"] = rows;
    j["routes_agree"] = t.routes_agree;
    j["monotone"] = t.monotone;
    j["recurrence_holds"] = t.recurrence_holds;
    j["mu_delta_upper"] = exact(t.mu_delta_upper());
    emit(out, j);
    return kExitOk;
}

int cmd_cogrowth(const Options& o, std::ostream& out) {
    const Input in = load_input(o);
    const int depth = o.depth < 0 ? 10 : o.depth;
    const LabeledGraph& g = counting_graph(in);
    const std::vector<BigInt> c = cogrowth_counts(g, depth);
    std::vector<MeasureValue> sums;
    for (int n = 0; n <= depth; ++n) sums.push_back(poincare_partial(c, in.m, n));
    if (o.format == "tsv") {
        out << "# depth " << depth << "\n";
        out << "n\tc_n\tpoincare_partial\n";
        for (int n = 0; n <= depth; ++n) out << n << '\t' << to_string(c[n]) << '\t' << to_string(sums[n]) << '\n';
        return kExitOk;
    }
    require_json(o, "cogrowth");
    json counts = json::array(), partial = json::array();
    for (int n = 0; n <= depth; ++n) {
        counts.push_back(exact(c[n]));
        partial.push_back(exact(sums[n]));
    }
    json j = header("cogrowth");
    j["m"] = in.m;
    j["depth"] = depth;
    j["counts"] = counts;
    j["poincare_partial"] = partial;
    const CogrowthEstimate est = vH_estimate(g, depth);
    j["vH"] = cogrowth_estimate_json(est);
    if (est.certified && !est.degenerate) {
        const double v = std::min(std::max(est.value, 1.0), 2.0 * in.m - 1.0);
        j["rho_from_vH"] = estimate(rho_from_vH(v, in.m));
    }
    if (o.rho_steps > 0) {
        json rd = json::array();
        for (const ReturnProbability& r : rho_direct(*in.graph, o.rho_steps)) {
            rd.push_back({{"steps", r.steps}, {"probability", exact(r.probability)}, {"root", estimate(r.root)}});
        }
        j["rho_direct"] = rd;
    }
    emit(out, j);
    return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    require_json(o, "analyze");
    const Input in = load_input(o);
    const int depth = o.depth < 0 ? 10 : o.depth;
    const SphereProfile* profile = nullptr;
    SphereProfile owned;
    if (in.family && in.family->sphere_profile) {
        owned = in.family->sphere_profile(depth);
        profile = &owned;
    }
    const Verdict v = classify(counting_graph(in), in.facts, depth, profile);
    json j = header("analyze");
    j["m"] = in.m;
    j["source"] = in.source;
    j["verdict"] = verdict_json(v);
    if (in.finite) j["vH"] = cogrowth_estimate_json(vH_estimate(*in.finite));
    if (in.family && !in.family->expected_classification.empty()) {
        j["expected_classification"] = in.family->expected_classification;
    }
    if (o.transience) {
        const std::optional<bool> meta = in.family ? in.family->srw_transient : std::nullopt;
        const std::string src = in.family ? in.family->srw_source : "";
        j["transience"] = transience_json(transience_report(counting_graph(in), depth, meta, src));
    }
    emit(out, j);
    return o.require_certified && !v.certified ? kExitUncertified : kExitOk;
}

int cmd_boundary_classify(const Options& o, std::ostream& out) {
    require_json(o, "boundary classify");
    const Input in = load_input(o);
    if (o.point.empty()) throw DomainError("boundary classify needs --point");
    const int depth = o.depth < 0 ? 30 : o.depth;
    const NSBasis basis = basis_of(in, depth);
    const BoundaryPoint omega = parse_boundary_point(o.point, Alphabet(in.m));
    const BoundaryVerdict v = classify_boundary_point(basis, omega, depth);
    json j = header("boundary classify");
    j["m"] = in.m;
    j["point"] = to_string(omega);
    j["depth"] = depth;
    j["class"] = to_string(v.cls);
    j["history"] = gen_word_json(basis, v.history);
    j["letters_traced"] = v.depth;
    j["in_lambda"] = to_string(v.in_lambda);
    j["in_lambda_rad"] = to_string(v.in_lambda_rad);
    j["in_omega"] = to_string(v.in_omega);
    j["state_cycle"] = v.state_cycle;
    if (v.state_cycle) {
        j["cycle_start"] = v.cycle_start;
        j["cycle_length"] = v.cycle_length;
    }
    j["branch_entry"] = v.branch_entry ? json(*v.branch_entry) : json(nullptr);
    j["nontree_positions"] = v.nontree_positions;
    emit(out, j);
    return o.require_certified && v.cls == BoundaryClass::inconclusive ? kExitUncertified : kExitOk;
}

int cmd_partition(const Options& o, std::ostream& out) {
    const Input in = load_input(o);
    const int n = o.depth < 0 ? 4 : o.depth;
    const NSBasis basis = basis_of(in, n);
    const Partition p = partition_at_depth(basis, n);
    if (o.format == "tsv") {
        out << "# depth " << n << "\n";
        out << "history\tkind\tcount\tmeasure\n";
        for (const PartitionBucket& b : p.buckets) {
            out << format_gen_word(basis, b.history) << '\t' << to_string(b.kind) << '\t' << to_string(b.count)
                << '\t' << to_string(b.measure) << '\n';
        }
        return kExitOk;
    }
    require_json(o, "partition");
    json buckets = json::array();
    for (const PartitionBucket& b : p.buckets) {
        buckets.push_back({{"history", gen_word_json(basis, b.history)},
                           {"kind", to_string(b.kind)},
                           {"count", exact(b.count)},
                           {"measure", exact(b.measure)}});
    }
    json j = header("partition");
    j["m"] = in.m;
    j["depth"] = n;
    j["buckets"] = buckets;
    j["total_count"] = exact(p.total_count);
    j["total_measure"] = exact(p.total_measure);
    emit(out, j);
    return kExitOk;
}

/// Exact chain at finite index; refuses anything else.
std::pair<NSBasis, CycleChain> exact_cycle_chain(const Input& in) {
    if (!in.finite || !in.finite->is_complete()) {
        throw DomainError("exact theta needs a finite-index subgroup; use simulate --chain edge for estimates");
    }
    NSBasis basis(geodesic_tree(*in.finite));
    const EdgeChainReport r = edge_chain_first_nontree(basis);
    CycleChain chain = cycle_chain_build(basis, exact_theta(r));
    return {std::move(basis), std::move(chain)};
}

int cmd_theta(const Options& o, std::ostream& out) {
    require_json(o, "theta");
    const Input in = load_input(o);
    const auto [basis, chain] = exact_cycle_chain(in);
    json theta = json::array();
    MeasureValue total = 0;
    for (std::size_t s = 0; s < chain.size(); ++s) {
        const GenLetter x = static_cast<GenLetter>(s);
        theta.push_back({{"s", basis.name(x)}, {"word", to_display(basis.sigma(x))}, {"theta", exact(chain.theta[s])}});
        total += chain.theta[s];
    }
    json rows = json::object();
    for (std::size_t s = 0; s < chain.size(); ++s) {
        json row = json::object();
        for (std::size_t t = 0; t < chain.size(); ++t) row[basis.name(static_cast<GenLetter>(t))] = exact(chain.M[s][t]);
        rows[basis.name(static_cast<GenLetter>(s))] = row;
    }
    json j = header("theta");
    j["m"] = in.m;
    j["index"] = in.finite->size();
    j["theta"] = theta;
    j["theta_total"] = exact(total);
    j["M"] = rows;
    j["rows_sum_to_one"] = true;
    emit(out, j);
    return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    require_json(o, "simulate");
    const Input in = load_input(o);
    json j = header("simulate");
    j["m"] = in.m;
    j["chain"] = o.chain;
    j["seed"] = o.seed;
    j["trials"] = o.trials;
    j["steps"] = o.steps;
    if (o.chain == "srw") {
        const SrwStats s = srw_simulate(*in.graph, o.steps, o.trials, o.seed, o.threads);
        j["branch_fraction"] = estimate(s.branch_fraction);
        j["branch_fraction_stderr"] = estimate(s.branch_fraction_stderr);
        if (s.mean_distance) {
            j["mean_distance"] = estimate(*s.mean_distance);
            j["mean_distance_stderr"] = estimate(*s.mean_distance_stderr);
        }
        if (o.per_trial) {
            json trials = json::array();
            for (const SrwTrial& t : s.trials) {
                trials.push_back({{"final_vertex", t.final_vertex},
                                  {"in_branch", t.in_branch},
                                  {"branch_depth", t.branch_depth},
                                  {"distance", t.distance ? json(*t.distance) : json(nullptr)},
                                  {"max_distance", t.max_distance}});
            }
            j["per_trial"] = trials;
        }
    } else if (o.chain == "edge") {
        const int depth = o.depth < 0 ? 10 : o.depth;
        const NSBasis basis = basis_of(in, depth);
        if (!in.finite) j["depth"] = depth;
        const EdgeChainReport mc = edge_chain_monte_carlo(basis, o.trials, o.seed, o.threads);
        std::optional<EdgeChainReport> ex;
        if (in.finite && in.finite->is_complete()) ex = edge_chain_first_nontree(basis);
        json theta = json::array();
        for (std::size_t s = 0; s < mc.theta.size(); ++s) {
            json e{{"s", basis.name(mc.theta[s].s)},
                   {"theta_hat", estimate(mc.theta[s].estimate)},
                   {"stderr", estimate(mc.theta[s].stderr_)}};
            if (ex) e["theta_exact"] = exact(*ex->theta[s].exact);
            theta.push_back(e);
        }
        j["theta"] = theta;
        j["escaped"] = estimate(mc.escaped);
        j["censored"] = estimate(mc.censored);
    } else if (o.chain == "cycle") {
        const auto [basis, chain] = exact_cycle_chain(in);
        const std::vector<CycleSample> samples =
            cycle_chain_sample(chain, basis, std::max(2L, o.steps), o.trials, o.seed, o.threads);
        std::vector<long> first(chain.size(), 0);
        std::map<ReducedWord, long> cylinders;
        for (const CycleSample& s : samples) {
            ++first[static_cast<std::size_t>(s.xi.front())];
            ++cylinders[s.boundary_prefix.prefix(std::min<std::size_t>(o.dim, s.boundary_prefix.size()))];
        }
        const double n = static_cast<double>(samples.size());
        json initial = json::array();
        for (std::size_t s = 0; s < chain.size(); ++s) {
            const double p = static_cast<double>(first[s]) / n;
            initial.push_back({{"s", basis.name(static_cast<GenLetter>(s))},
                               {"frequency", estimate(p)},
                               {"stderr", estimate(std::sqrt(p * (1 - p) / n))},
                               {"theta", exact(chain.theta[s])}});
        }
        json cyl = json::array();
        for (const CylinderValue& c : cycle_chain_cylinders(chain, basis, o.dim)) {
            const double p = static_cast<double>(cylinders.count(c.word) ? cylinders[c.word] : 0) / n;
            cyl.push_back({{"word", to_display(c.word)},
                           {"frequency", estimate(p)},
                           {"stderr", estimate(std::sqrt(p * (1 - p) / n))},
                           {"exact", exact(c.value)}});
        }
        j["initial_letters"] = initial;
        j["dimension"] = o.dim;
        j["cylinders"] = cyl;
        if (!samples.empty()) {
            j["example_xi"] = format_gen_word(basis, samples.front().xi);
            j["example_prefix"] = to_display(samples.front().boundary_prefix);
        }
    } else {
        throw DomainError("unknown chain '" + o.chain + "' (srw, edge, cycle)");
    }
    emit(out, j);
    return kExitOk;
}

int cmd_family_list(const Options& o, std::ostream& out) {
    require_json(o, "family list");
    json list = json::array();
    for (const FamilyInfo& f : family_list()) {
        list.push_back({{"name", f.name}, {"summary", f.summary}, {"parameters", f.parameters}, {"labeling", f.labeling}});
    }
    json j = header("family list");
    j["families"] = list;
    emit(out, j);
    return kExitOk;
}

json family_meta(const Family& f) {
    json claims = json::array();
    for (const FamilyClaim& c : f.claims) claims.push_back({{"statement", c.statement}, {"tag", c.tag}});
    json facts{{"infinite_index", f.facts.infinite_index_known}, {"normal_nontrivial", f.facts.normal_nontrivial}};
    if (f.facts.finitely_generated) facts["finitely_generated"] = *f.facts.finitely_generated;
    if (f.facts.index) facts["index"] = *f.facts.index;
    if (f.facts.growth) facts["growth"] = *f.facts.growth;
    facts["source"] = f.facts.source;
    json j{{"name", f.name}, {"m", f.m}, {"params", f.params}, {"facts", facts}, {"claims", claims}};
    if (!f.expected_classification.empty()) j["expected_classification"] = f.expected_classification;
    if (f.srw_transient) j["srw_transient"] = *f.srw_transient;
    return j;
}

int cmd_family_instantiate(const Options& o, std::ostream& out) {
    require_json(o, "family instantiate");
    if (o.name.empty()) throw DomainError("family instantiate needs --name");
    FamilyParams params = parse_family_params(o.params);
    if (o.m) params["m"] = std::to_string(o.m);
    const Family f = instantiate(o.name, params);
    const int depth = o.depth < 0 ? 4 : o.depth;
    json j = header("family instantiate");
    j["family"] = family_meta(f);
    if (f.finite) {
        j["graph"] = graph_to_json(*f.finite);
    } else {
        j["depth"] = depth;
        j["graph"] = ball_to_json(explore(*f.graph, depth));
    }
    emit(out, j);
    return kExitOk;
}

int cmd_family_report(const Options& o, std::ostream& out) {
    require_json(o, "family report");
    if (o.name.empty()) throw DomainError("family report needs --name");
    FamilyParams params = parse_family_params(o.params);
    if (o.m) params["m"] = std::to_string(o.m);
    const Family f = instantiate(o.name, params);
    ReportOptions ro;
    ro.depth = o.depth < 0 ? 30 : o.depth;
    ro.n_max = o.n_max;
    ro.seed = o.seed;
    ro.trials = o.trials;
    ro.steps = o.steps;
    ro.threads = o.threads;
    json rows = json::array();
    for (const ReportRow& r : expected_vs_computed(f, ro)) {
        rows.push_back({{"claim", r.claim}, {"tag", r.tag}, {"evidence", r.evidence}, {"status", to_string(r.status)}});
    }
    json j = header("family report");
    j["family"] = family_meta(f);
    j["depth"] = ro.depth;
    j["seed"] = ro.seed;
    j["rows"] = rows;
    emit(out, j);
    return kExitOk;
}

void add_input(CLI::App* sub, Options& o) {
    sub->add_option("--m", o.m, "rank of the free group (2..26)");
    sub->add_option("--gens", o.gens, "comma separated generators, e.g. \"aa,ab,bA\"");
    sub->add_option("--graph", o.graph_file, "graph JSON file");
    sub->add_option("--family", o.family, "family name (see family list)");
    sub->add_option("--params", o.params, "family parameters key=value,...");
    sub->add_option("--threads", o.threads, "worker threads (0: all cores); results do not depend on it");
    sub->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Schreier graphs of free groups: bases, boundary measures, growth and Markov chains", "schreier"};
    app.require_subcommand(1);
    Options o;

    auto* fold_cmd = app.add_subcommand("fold", "Stallings folding of a generator list");
    add_input(fold_cmd, o);

    auto* nstree = app.add_subcommand("nstree", "geodesic spanning tree and Nielsen-Schreier basis");
    add_input(nstree, o);
    nstree->add_option("--depth", o.depth, "exploration radius for infinite graphs (default 8)");

    auto* rewrite = app.add_subcommand("rewrite", "rewrite a word in the basis, or expand a basis word");
    add_input(rewrite, o);
    rewrite->add_option("--word", o.word, "word of the subgroup");
    rewrite->add_option("--basis-word", o.basis_word, "basis word such as \"s0 s1^-1\"");
    rewrite->add_option("--depth", o.depth, "exploration radius for infinite graphs (default 16)");

    auto* member = app.add_subcommand("membership", "test whether a word lies in the subgroup");
    add_input(member, o);
    member->add_option("--word", o.word, "word to test");

    auto* spheres = app.add_subcommand("spheres",
                                       "sphere table; TSV columns: n, sphere, gamma, a_ratio, a_sum");
    add_input(spheres, o);
    spheres->add_option("--depth", o.depth, "last level (default 10)");

    auto* cogrowth = app.add_subcommand("cogrowth", "cogrowth counts; TSV columns: n, c_n, poincare_partial");
    add_input(cogrowth, o);
    cogrowth->add_option("--depth", o.depth, "largest length (default 10)");
    cogrowth->add_option("--rho-steps", o.rho_steps, "also compute p_2n(o,o) for n up to this value");

    auto* analyze = app.add_subcommand("analyze", "classify the boundary action");
    add_input(analyze, o);
    analyze->add_option("--depth", o.depth, "sphere table depth (default 10)");
    analyze->add_flag("--require-certified", o.require_certified, "exit 3 unless the verdict is certified");
    analyze->add_flag("--transience", o.transience, "add the random-walk transience report");

    auto* boundary = app.add_subcommand("boundary", "boundary points");
    boundary->require_subcommand(1);
    auto* bclassify = boundary->add_subcommand("classify", "classify an eventually periodic boundary point");
    add_input(bclassify, o);
    bclassify->add_option("--point", o.point, "point u|v meaning u v v v ...");
    bclassify->add_option("--depth", o.depth, "letters to trace (default 30)");
    bclassify->add_flag("--require-certified", o.require_certified, "exit 3 when inconclusive");

    auto* partition = app.add_subcommand("partition",
                                         "partition of length-n words; TSV columns: history, kind, count, measure");
    add_input(partition, o);
    partition->add_option("--depth", o.depth, "word length n (default 4)");

    auto* theta = app.add_subcommand("theta", "exact first non-tree edge law and cycle chain (finite index)");
    add_input(theta, o);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo for the random walk, edge chain or cycle chain");
    add_input(simulate, o);
    simulate->add_option("--chain", o.chain, "srw, edge or cycle")->check(CLI::IsMember({"srw", "edge", "cycle"}));
    simulate->add_option("--steps", o.steps, "steps per trial (default 1000)");
    simulate->add_option("--trials", o.trials, "number of trials (default 1000)");
    simulate->add_option("--seed", o.seed, "seed (default 1)");
    simulate->add_option("--depth", o.depth, "exploration radius for the edge chain on infinite graphs");
    simulate->add_option("--dim", o.dim, "cylinder dimension for the cycle chain check (default 2)");
    simulate->add_flag("--per-trial", o.per_trial, "list every trial of the random walk");

    auto* family = app.add_subcommand("family", "example graph families");
    family->require_subcommand(1);
    auto* flist = family->add_subcommand("list", "list the families");
    flist->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    auto* finst = family->add_subcommand("instantiate", "graph JSON of a family up to a depth, with metadata");
    finst->add_option("--name", o.name, "family name")->required();
    finst->add_option("--params", o.params, "parameters key=value,...");
    finst->add_option("--m", o.m, "rank");
    finst->add_option("--depth", o.depth, "exploration radius (default 4)");
    auto* freport = family->add_subcommand("report", "claims of a family against computed evidence");
    freport->add_option("--name", o.name, "family name")->required();
    freport->add_option("--params", o.params, "parameters key=value,...");
    freport->add_option("--m", o.m, "rank");
    freport->add_option("--depth", o.depth, "depth of sphere and boundary checks (default 30)");
    freport->add_option("--n-max", o.n_max, "largest generator index checked (default 30)");
    freport->add_option("--steps", o.steps, "random walk steps (default 1000)");
    freport->add_option("--trials", o.trials, "random walk trials (default 1000)");
    freport->add_option("--seed", o.seed, "seed (default 1)");
    freport->add_option("--threads", o.threads, "worker threads");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (o.m && (o.m < 1 || o.m > 26)) throw DomainError("--m must lie in 1..26");
        if (*fold_cmd) return cmd_fold(o, out);
        if (*nstree) return cmd_nstree(o, out);
        if (*rewrite) return cmd_rewrite(o, out);
        if (*member) return cmd_membership(o, out);
        if (*spheres) return cmd_spheres(o, out);
        if (*cogrowth) return cmd_cogrowth(o, out);
        if (*analyze) return cmd_analyze(o, out);
        if (*bclassify) return cmd_boundary_classify(o, out);
        if (*partition) return cmd_partition(o, out);
        if (*theta) return cmd_theta(o, out);
        if (*simulate) return cmd_simulate(o, out);
        if (*flist) return cmd_family_list(o, out);
        if (*finst) return cmd_family_instantiate(o, out);
        if (*freport) return cmd_family_report(o, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitDomain;
}

}  // namespace schreier::cli
