#pragma once

// Per-graph verification of the depth-stability statements. Each check has a
// stable id used in the JSON output:
//
//   lemma_1_1    relation graph: (r, s) = (n, 2) bipartite non-star, (n, 1) non-bipartite
//   ineq_1       depth S/I^t <= n - t - 1 for t <= r - s
//   ineq_2       l(I) >= r - s + 1
//   thm_1_2      dstab < l(I), with limit depth 1 (bipartite) or 0 (non-bipartite)
//   remark_1_3   astab/dstab comparison, dstab = first k with m in Ass(I^k)
//   thm_2_1a     trees: dstab <= n - m, socle witness for (I^(n-m), x1 - x2)
//   thm_2_1b     trees within distance 2 of a longest path: dstab = n - m
//   claim_delta  same trees with diameter >= 3: diameter - (n - m) + q = 3
//   morey        trees: depth S/I^k >= max{ceil((diameter - k + q) / 3), 1}
//   cor_2_2      brooms: dstab = a, l(I) = b

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "exact_matrix.hpp"
#include "graph.hpp"
#include "invariants.hpp"
#include "monomial.hpp"
#include "parallel.hpp"
#include "socle.hpp"

namespace depthstab {

using Json = nlohmann::ordered_json;

enum class CheckStatus { pass, violated, skipped };

inline const char *to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::violated:
        return "violated";
    default:
        return "skipped";
    }
}

struct CheckResult {
    std::string id;
    CheckStatus status = CheckStatus::skipped;
    bool hypotheses = false;
    bool conclusion = false;
    std::string note; // reason for a skip, or a short remark
    Json witness = Json::object();
    bool resource_limited = false;
};

struct VerifyOptions {
    Field field = Field::rationals();
    Caps caps;
    std::size_t extra_powers = 0;
    bool compute_astab = true;
    // Broom parameters; detected from the graph when absent.
    std::optional<std::pair<std::size_t, std::size_t>> broom;
};

struct TheoremReport {
    Graph graph;
    Field field = Field::rationals();
    std::size_t n = 0;
    std::size_t m = 0;
    bool bipartite = false;
    std::optional<std::size_t> r, s, spread;
    std::optional<DepthProfile> profile;
    std::optional<AssProfile> ass;
    std::vector<CheckResult> checks;
    std::vector<std::string> errors;

    const CheckResult *check(const std::string &id) const {
        for (const auto &c : checks)
            if (c.id == id)
                return &c;
        return nullptr;
    }
    std::size_t violations() const {
        std::size_t v = 0;
        for (const auto &c : checks)
            v += c.status == CheckStatus::violated;
        return v;
    }
    bool resource_limited() const {
        for (const auto &c : checks)
            if (c.resource_limited)
                return true;
        return false;
    }
};

namespace detail {

inline CheckResult decide(std::string id, bool hypotheses, bool conclusion, Json witness = Json::object(),
                          std::string note = {}) {
    CheckResult c;
    c.id = std::move(id);
    c.hypotheses = hypotheses;
    c.conclusion = conclusion;
    c.witness = std::move(witness);
    c.note = std::move(note);
    c.status = !hypotheses ? CheckStatus::skipped : conclusion ? CheckStatus::pass : CheckStatus::violated;
    return c;
}

inline CheckResult skip(std::string id, std::string note, bool resources = false) {
    CheckResult c;
    c.id = std::move(id);
    c.note = std::move(note);
    c.resource_limited = resources;
    return c;
}

inline Json primes_json(const std::vector<VariableSet> &primes) {
    Json out = Json::array();
    for (const auto &p : primes)
        out.push_back(p);
    return out;
}

} // namespace detail

inline const char *check_ids[] = {"lemma_1_1", "ineq_1", "ineq_2", "thm_1_2", "remark_1_3",
                                  "thm_2_1a",  "thm_2_1b", "claim_delta", "morey", "cor_2_2"};

// Computes every invariant of g and evaluates all checks. Resource errors are
// recorded on the affected checks; precondition failures throw.
inline TheoremReport verify_graph(const Graph &g, const VerifyOptions &opts = {}) {
    if (g.edge_count() == 0)
        throw PreconditionError("graph has no edges; the edge ideal is zero");
    if (!is_connected(g))
        throw PreconditionError("depth stability analysis requires a connected graph");

    TheoremReport rep;
    rep.graph = g;
    rep.field = opts.field;
    rep.n = g.n();
    const auto metrics = graph_metrics(g);
    rep.m = metrics.m;
    rep.bipartite = metrics.bipartite;
    const bool tree_case = metrics.is_tree && g.edge_count() >= 2;
    const auto I = edge_ideal(g);

    const auto rel = linear_relation_graph(I);
    rep.r = rel.r;
    rep.s = rel.s;
    rep.spread = analytic_spread(g);
    const std::size_t spread = *rep.spread;
    const std::size_t horizon = depth_horizon(g, spread);

    // Powers: enough for the depth horizon, the optional tail and Ass(I^k).
    std::size_t ass_count = 0;
    if (opts.compute_astab)
        ass_count = rep.bipartite ? 2 : std::max<std::size_t>(g.n() - rep.m, 1);
    const std::size_t wanted = std::max(horizon + opts.extra_powers, ass_count);
    std::vector<MonomialIdeal> powers;
    std::string power_error;
    try {
        powers = power_sequence(I, wanted, opts.caps);
    } catch (const ResourceError &e) {
        power_error = e.what();
        rep.errors.push_back(power_error);
    }

    DepthOptions dopts{opts.field, opts.caps, opts.extra_powers};
    std::string depth_error = power_error;
    if (power_error.empty()) {
        try {
            std::vector<MonomialIdeal> depth_powers(powers.begin(),
                                                    powers.begin() + static_cast<std::ptrdiff_t>(horizon + opts.extra_powers));
            rep.profile = depth_profile_from_powers(g, depth_powers, dopts);
        } catch (const ResourceError &e) {
            depth_error = e.what();
            rep.errors.push_back(depth_error);
        }
    }
    std::string ass_error = opts.compute_astab ? power_error : "associated primes not requested";
    if (opts.compute_astab && power_error.empty()) {
        try {
            rep.ass = astab_profile(g, opts.caps, &powers);
        } catch (const ResourceError &e) {
            ass_error = e.what();
            rep.errors.push_back(ass_error);
        }
    }
    const DepthProfile *prof = rep.profile ? &*rep.profile : nullptr;

    // lemma_1_1
    {
        const bool star = is_star(g);
        const bool hyp = !rep.bipartite || !star;
        const std::size_t want_s = rep.bipartite ? 2 : 1;
        Json w{{"r", rel.r}, {"s", rel.s}, {"expected_r", g.n()}, {"expected_s", want_s}};
        rep.checks.push_back(detail::decide("lemma_1_1", hyp, rel.r == g.n() && rel.s == want_s, w,
                                            hyp ? (rep.bipartite ? "bipartite, not a star" : "non-bipartite")
                                                : "star graph"));
    }

    // ineq_1, on I and on each computed power as the base ideal.
    if (!prof) {
        rep.checks.push_back(detail::skip("ineq_1", "skipped: resources (" + depth_error + ")", true));
    } else {
        const std::size_t computed = prof->computed_powers();
        bool ok = true;
        std::size_t instances = 0;
        Json failures = Json::array();
        for (std::size_t k = 1; k <= computed; ++k) {
            const auto stats = k == 1 ? rel : linear_relation_graph(powers[k - 1]);
            for (std::size_t t = 1; t + stats.s <= stats.r && k * t <= computed; ++t) {
                ++instances;
                const std::size_t d = prof->depth_at(k * t);
                if (d + t + 1 > g.n()) {
                    ok = false;
                    failures.push_back({{"base_power", k}, {"t", t}, {"depth", d}});
                }
            }
        }
        rep.checks.push_back(detail::decide("ineq_1", instances > 0, ok,
                                            {{"instances", instances}, {"failures", failures}},
                                            instances ? "" : "r - s = 0"));
    }

    // ineq_2
    if (!power_error.empty()) {
        rep.checks.push_back(detail::skip("ineq_2", "skipped: resources (" + power_error + ")", true));
    } else {
        bool ok = true;
        Json per_power = Json::array();
        const std::size_t upto = prof ? prof->computed_powers() : 1;
        for (std::size_t k = 1; k <= upto; ++k) {
            const auto stats = k == 1 ? rel : linear_relation_graph(powers[k - 1]);
            const auto l = k == 1 ? spread : analytic_spread_ideal(powers[k - 1]);
            ok = ok && l + stats.s >= stats.r + 1;
            per_power.push_back({{"k", k}, {"spread", l}, {"r", stats.r}, {"s", stats.s}});
        }
        rep.checks.push_back(detail::decide("ineq_2", true, ok, {{"powers", per_power}}));
    }

    // thm_1_2
    if (g.edge_count() < 2) {
        rep.checks.push_back(detail::skip("thm_1_2", "single edge"));
    } else if (!prof) {
        rep.checks.push_back(detail::skip("thm_1_2", "skipped: resources (" + depth_error + ")", true));
    } else {
        const auto via_ideal = analytic_spread_ideal(I);
        const auto closed = analytic_spread_closed_form(g);
        bool zero_sticks = true;
        bool zero_from_n_minus_1 = true;
        bool seen_zero = false;
        for (std::size_t k = 1; k <= prof->computed_powers(); ++k) {
            const auto d = prof->depth_at(k);
            zero_sticks = zero_sticks && (!seen_zero || d == 0);
            seen_zero = seen_zero || d == 0;
            if (!rep.bipartite && k + 1 >= g.n())
                zero_from_n_minus_1 = zero_from_n_minus_1 && d == 0;
        }
        bool tail_stable = true;
        for (auto d : prof->tail_depths)
            tail_stable = tail_stable && d == prof->limit;
        const bool ok = prof->dstab < spread && prof->limit_as_expected && spread == via_ideal && spread == closed &&
                        zero_sticks && zero_from_n_minus_1 && tail_stable;
        rep.checks.push_back(detail::decide(
            "thm_1_2", true, ok,
            {{"dstab", prof->dstab},
             {"spread", spread},
             {"spread_exponent_rank", via_ideal},
             {"spread_closed_form", closed},
             {"limit", prof->limit},
             {"expected_limit", prof->expected_limit},
             {"tail_stable", tail_stable}}));
    }

    // remark_1_3
    if (!rep.ass) {
        const bool resources = ass_error != "associated primes not requested";
        rep.checks.push_back(detail::skip("remark_1_3", resources ? "skipped: resources (" + ass_error + ")" : ass_error,
                                          resources));
    } else if (!prof) {
        rep.checks.push_back(detail::skip("remark_1_3", "skipped: resources (" + depth_error + ")", true));
    } else {
        const auto &ass = *rep.ass;
        Json w{{"astab", ass.astab}, {"dstab", prof->dstab}, {"monotone", ass.monotone}};
        Json chain = Json::array();
        for (const auto &a : ass.ass_per_power)
            chain.push_back(detail::primes_json(a));
        w["ass_per_power"] = chain;
        if (rep.bipartite) {
            const bool equal = ass.ass_per_power.size() >= 2 && ass.ass_per_power[0] == ass.ass_per_power[1];
            rep.checks.push_back(detail::decide("remark_1_3", true, equal && ass.astab <= prof->dstab, w));
        } else {
            try {
                std::optional<std::size_t> first_max;
                for (std::size_t k = 1; k <= prof->computed_powers() && !first_max; ++k)
                    if (socle_depth_zero_oracle(powers[k - 1], opts.caps))
                        first_max = k;
                w["first_power_with_maximal_ideal"] = first_max ? Json(*first_max) : Json(nullptr);
                const bool ok = ass.monotone && prof->dstab <= ass.astab && first_max && *first_max == prof->dstab;
                rep.checks.push_back(detail::decide("remark_1_3", true, ok, w));
            } catch (const ResourceError &e) {
                rep.checks.push_back(
                    detail::skip("remark_1_3", std::string("skipped: resources (") + e.what() + ")", true));
            }
        }
    }

    // Tree checks.
    if (!tree_case) {
        for (const char *id : {"thm_2_1a", "thm_2_1b", "claim_delta", "morey"})
            rep.checks.push_back(detail::skip(id, metrics.is_tree ? "single edge" : "not a tree"));
    } else {
        const std::size_t bound = g.n() - rep.m;
        const auto coverage = longest_path_coverage(g, metrics);
        const std::size_t delta = *metrics.diameter;

        // thm_2_1a
        if (!prof) {
            rep.checks.push_back(detail::skip("thm_2_1a", "skipped: resources (" + depth_error + ")", true));
        } else {
            try {
                const auto wit = socle_witness_check(g, opts.caps);
                Json edges = Json::array();
                for (auto [u, v] : wit.inner_edges)
                    edges.push_back({u, v});
                const bool depth_one = bound <= prof->computed_powers() && prof->depth_at(bound) == 1;
                Json w{{"dstab", prof->dstab},
                       {"n_minus_m", bound},
                       {"witness", to_string(wit.witness)},
                       {"inner_edges", edges},
                       {"edge_count_ok", wit.edge_count_ok},
                       {"witness_outside", wit.witness_outside},
                       {"multiples_inside", wit.multiples_inside},
                       {"depth_at_n_minus_m", bound <= prof->computed_powers() ? Json(prof->depth_at(bound))
                                                                               : Json(nullptr)}};
                rep.checks.push_back(
                    detail::decide("thm_2_1a", true, prof->dstab <= bound && wit.passed() && depth_one, w));
            } catch (const ResourceError &e) {
                rep.checks.push_back(
                    detail::skip("thm_2_1a", std::string("skipped: resources (") + e.what() + ")", true));
            }
        }

        // thm_2_1b
        Json cov{{"some_longest_path", coverage.some_path}, {"every_longest_path", coverage.every_path}};
        if (!prof) {
            rep.checks.push_back(detail::skip("thm_2_1b", "skipped: resources (" + depth_error + ")", true));
        } else {
            Json w = cov;
            w["dstab"] = prof->dstab;
            w["n_minus_m"] = bound;
            rep.checks.push_back(detail::decide("thm_2_1b", coverage.some_path, prof->dstab == bound, w,
                                                coverage.some_path ? "" : "no longest path within distance 2"));
        }

        // claim_delta
        {
            const long long value = static_cast<long long>(delta) - static_cast<long long>(bound) +
                                    static_cast<long long>(metrics.q);
            const bool hyp = coverage.some_path && delta >= 3;
            rep.checks.push_back(detail::decide(
                "claim_delta", hyp, value == 3, {{"diameter", delta}, {"q", metrics.q}, {"value", value}},
                hyp ? "" : (coverage.some_path ? "diameter below 3" : "no longest path within distance 2")));
        }

        // morey
        if (!prof) {
            rep.checks.push_back(detail::skip("morey", "skipped: resources (" + depth_error + ")", true));
        } else {
            bool ok = true;
            bool min_ok = true;
            Json rows = Json::array();
            for (std::size_t k = 1; k <= prof->computed_powers(); ++k) {
                const auto d = static_cast<long long>(prof->depth_at(k));
                const auto lb = morey_lower_bound(g, k);
                const auto lb_min = morey_lower_bound_min_reading(g, k);
                ok = ok && d >= lb;
                min_ok = min_ok && d >= lb_min;
                rows.push_back({{"k", k}, {"depth", d}, {"bound", lb}, {"bound_min_reading", lb_min}});
            }
            rep.checks.push_back(detail::decide("morey", true, ok,
                                                {{"diameter", delta},
                                                 {"q", metrics.q},
                                                 {"rows", rows},
                                                 {"min_reading_holds", min_ok}}));
        }
    }

    // cor_2_2
    {
        auto params = opts.broom ? opts.broom : broom_parameters(g);
        if (opts.broom && canonical_form(g) != canonical_form(broom(opts.broom->first, opts.broom->second)))
            throw ArgumentError("graph is not the broom with the given parameters");
        if (!params) {
            rep.checks.push_back(detail::skip("cor_2_2", "not a broom"));
        } else if (!prof) {
            rep.checks.push_back(detail::skip("cor_2_2", "skipped: resources (" + depth_error + ")", true));
        } else {
            auto [a, b] = *params;
            rep.checks.push_back(detail::decide("cor_2_2", true, prof->dstab == a && spread == b,
                                                {{"a", a}, {"b", b}, {"dstab", prof->dstab}, {"spread", spread}}));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const CheckResult &c) {
    Json j{{"status", to_string(c.status)}, {"hypotheses", c.hypotheses}, {"conclusion", c.conclusion}};
    if (!c.note.empty())
        j["note"] = c.note;
    if (!c.witness.empty())
        j["witness"] = c.witness;
    return j;
}

inline Json to_json(const TheoremReport &rep) {
    auto opt = [](const std::optional<std::size_t> &v) { return v ? Json(*v) : Json(nullptr); };
    Json j;
    j["graph"] = to_line(rep.graph);
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["bipartite"] = rep.bipartite;
    j["r"] = opt(rep.r);
    j["s"] = opt(rep.s);
    j["spread"] = opt(rep.spread);
    j["depths"] = rep.profile ? Json(rep.profile->depths) : Json(nullptr);
    j["dstab"] = rep.profile ? Json(rep.profile->dstab) : Json(nullptr);
    j["astab"] = rep.ass ? Json(rep.ass->astab) : Json(nullptr);
    j["field"] = rep.field.name();
    if (rep.profile) {
        j["limit"] = rep.profile->limit;
        j["certified"] = rep.profile->certified;
        if (!rep.profile->tail_depths.empty())
            j["tail_depths"] = rep.profile->tail_depths;
    }
    Json checks = Json::object();
    for (const auto &c : rep.checks)
        checks[c.id] = to_json(c);
    j["checks"] = checks;
    j["violations"] = rep.violations();
    if (!rep.errors.empty())
        j["errors"] = rep.errors;
    return j;
}

// ---------------------------------------------------------------------------
// Family runs

struct FamilyRecord {
    std::size_t index = 0;
    Graph graph;
    std::optional<TheoremReport> report;
    std::string skipped; // set when no report could be produced
};

struct FamilySummary {
    std::size_t processed = 0;
    std::size_t reports = 0;
    std::size_t violations = 0;        // records with at least one violated check
    std::size_t resource_skipped = 0;  // records with some check skipped for resources
    std::size_t precondition_skipped = 0;

    void add(const FamilyRecord &rec) {
        ++processed;
        if (rec.report) {
            ++reports;
            violations += rec.report->violations() > 0;
            resource_skipped += rec.report->resource_limited();
        } else if (rec.skipped.rfind("resources", 0) == 0) {
            ++resource_skipped;
        } else {
            ++precondition_skipped;
        }
    }
};

inline std::string csv_header() { return "graph,n,m,dstab,spread,astab,violations,status"; }

inline std::string csv_row(const FamilyRecord &rec) {
    auto opt = [](const std::optional<std::size_t> &v) { return v ? std::to_string(*v) : std::string(); };
    const auto &g = rec.graph;
    const std::string id = '"' + to_line(g) + '"';
    if (!rec.report)
        return id + "," + std::to_string(g.n()) + ",,,,,0,\"skipped: " + rec.skipped + "\"";
    const auto &r = *rec.report;
    std::string status = r.violations() ? "violated" : r.resource_limited() ? "skipped: resources" : "pass";
    return id + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
           (r.profile ? std::to_string(r.profile->dstab) : "") + "," + opt(r.spread) + "," +
           (r.ass ? std::to_string(r.ass->astab) : "") + "," + std::to_string(r.violations()) + "," + status;
}

inline Json to_json(const FamilyRecord &rec) {
    if (rec.report)
        return to_json(*rec.report);
    return Json{{"graph", to_line(rec.graph)}, {"n", rec.graph.n()}, {"status", "skipped: " + rec.skipped}};
}

inline FamilyRecord verify_one(std::size_t index, const Graph &g, const VerifyOptions &opts) {
    FamilyRecord rec;
    rec.index = index;
    rec.graph = g;
    try {
        rec.report = verify_graph(g, opts);
    } catch (const PreconditionError &e) {
        rec.skipped = e.what();
    } catch (const ResourceError &e) {
        rec.skipped = std::string("resources (") + e.what() + ")";
    }
    return rec;
}

// Verifies every graph, calling sink(record) in input order.
inline FamilySummary verify_family(const std::vector<Graph> &graphs, const VerifyOptions &opts,
                                   const std::function<void(const FamilyRecord &)> &sink = {},
                                   std::size_t threads = 0) {
    std::vector<std::size_t> idx(graphs.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    FamilySummary sum;
    ordered_parallel_map(
        idx, [&](std::size_t i) { return verify_one(i, graphs[i], opts); },
        [&](FamilyRecord rec) {
            sum.add(rec);
            if (sink)
                sink(rec);
        },
        threads);
    return sum;
}

} // namespace depthstab
