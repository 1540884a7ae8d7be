#include "maxplus/harness.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

using nlohmann::json;

std::string join_nodes(const std::vector<int>& nodes) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (i) os << ',';
        os << nodes[i] + 1;  // reports use 1-based node names
    }
    os << '}';
    return os.str();
}

json bound_report_json(const BoundReport& rep) {
    json out = json::array();
    for (const auto& e : rep.entries) {
        json row;
        row["key"] = e.key;
        row["family"] = e.family;
        if (e.value) {
            row["value"] = e.value->get_str();
            row["ceiling"] = *e.ceiling();
        } else {
            row["inapplicable"] = e.note;
        }
        if (!e.params.empty()) row["params"] = e.params;
        row["exact_params"] = e.exact_params;
        out.push_back(row);
    }
    return out;
}

void bound_report_text(std::ostringstream& os, const BoundReport& rep,
                       const std::string& indent) {
    for (const auto& e : rep.entries) {
        os << indent << e.key << ": ";
        if (e.value) {
            os << e.value->get_str() << " (ceil " << *e.ceiling() << ")";
            if (!e.exact_params) os << " [fallback params]";
        } else {
            os << "inapplicable: " << e.note;
        }
        os << '\n';
    }
}

json witness_json(const TransientWitness& w) {
    json out;
    out["value"] = w.value;
    out["gamma"] = w.gamma_used;
    out["scan_ceiling"] = w.scan_ceiling;
    if (w.violation_at) out["last_violation_at"] = *w.violation_at;
    return out;
}

}  // namespace

AnalyzeReport analyze(const InstanceFile& inst, const AnalyzeOptions& opts) {
    AnalyzeReport rep(inst);
    const Matrix& a = inst.a;
    rep.lambda = max_cycle_mean(a);
    rep.irreducible = is_strongly_connected(Digraph::from_matrix(a));

    if (rep.lambda.is_bottom()) {
        rep.notes.push_back("no eigenvalue, powers nilpotent");
        return rep;
    }

    CriticalGraph crit = critical_graph(a);
    rep.crit_nodes = crit.nodes;
    rep.crit_sccs = crit.scc_nodes;
    rep.crit_cyclicity = crit.cyclicity();
    BoundContext ctx = bound_context(a, crit, opts.node_limit);
    if (!ctx.circ_exact)
        rep.notes.push_back("exact circumference/diameter refused (node limit); using |G| and |G|-1");

    std::optional<CsrTriple> triple;
    if (rep.irreducible && opts.with_oracle)
        triple.emplace(csr_terms(a, select_representing(crit, RepresentingMode::full)));

    std::vector<SchemeKind> kinds;
    if (opts.nacht) kinds.push_back(SchemeKind::nachtigall);
    if (opts.ha) kinds.push_back(SchemeKind::hartmann_arguelles);
    if (opts.ct) kinds.push_back(SchemeKind::cycle_threshold);

    const SchemeResult* nacht_res = nullptr;
    const SchemeResult* ha_res = nullptr;

    for (SchemeKind kind : kinds) {
        SchemeReport sr;
        sr.kind = kind;
        try {
            sr.result = run_scheme(a, kind, opts.node_limit);
        } catch (const FalsificationError&) {
            throw;
        } catch (const Error& e) {
            sr.error = e.what();
            rep.schemes.push_back(std::move(sr));
            continue;
        }
        sr.t1 = kind == SchemeKind::cycle_threshold ? t1_bounds_ct(ctx)
                                                    : t1_bounds(ctx, kind);
        if (rep.irreducible) {
            sr.t2 = t2_bounds(a, *sr.result, ctx, opts.node_limit);
            if (inst.v) sr.t2v = t2v_bounds(a, *sr.result, *inst.v, ctx, opts.node_limit);
            sr.global = combine_global(sr.t1, sr.t2);
        } else {
            sr.t2.entries.push_back([] {
                BoundEntry e;
                e.key = "t2";
                e.family = "t2";
                e.note = "matrix reducible; the domination bounds assume irreducibility";
                return e;
            }());
        }
        rep.schemes.push_back(std::move(sr));
    }
    for (auto& sr : rep.schemes) {
        if (!sr.result) continue;
        if (sr.kind == SchemeKind::nachtigall) nacht_res = &*sr.result;
        if (sr.kind == SchemeKind::hartmann_arguelles) ha_res = &*sr.result;
    }

    if (rep.irreducible)
        rep.literature = literature_bounds(a, nacht_res, ha_res,
                                           inst.v ? &*inst.v : nullptr);

    for (const auto& sr : rep.schemes)
        if (sr.global && (!rep.best_global || *sr.global < *rep.best_global))
            rep.best_global = sr.global;

    if (opts.with_oracle) {
        if (!rep.irreducible) {
            rep.notes.push_back("oracle skipped: matrix reducible (use per-SCC analysis)");
        } else {
            for (auto& sr : rep.schemes) {
                if (!sr.result) continue;
                long long t1_bound = *sr.t1.best();
                sr.oracle_t1 = exact_t1(a, *sr.result, *triple, t1_bound);
                long long t2_bound = *sr.t2.best();
                sr.oracle_t2 = exact_t2(a, *sr.result, *triple, t2_bound);
                if (inst.v && sr.t2v)
                    sr.oracle_t2v = exact_t2v(a, *sr.result, *triple, *inst.v,
                                              *sr.t2v->best());
            }
            if (rep.best_global) rep.oracle_t = exact_transient(a, *rep.best_global);
        }
    }
    return rep;
}

PerSccReport analyze_per_scc(const InstanceFile& inst, const AnalyzeOptions& opts) {
    PerSccReport out;
    Digraph g = Digraph::from_matrix(inst.a);
    auto d = scc(g);
    for (int c = 0; c < d.count(); ++c) {
        if (!d.has_cycle[c]) continue;
        const auto& nodes = d.components[c];
        Matrix sub(static_cast<int>(nodes.size()));
        for (size_t i = 0; i < nodes.size(); ++i)
            for (size_t j = 0; j < nodes.size(); ++j)
                sub.at(static_cast<int>(i), static_cast<int>(j)) =
                    inst.a.at(nodes[i], nodes[j]);
        InstanceFile sub_inst{std::move(sub), std::nullopt};
        out.components.emplace_back(nodes, analyze(sub_inst, opts));
    }
    return out;
}

namespace {

const char* kind_title(SchemeKind k) {
    switch (k) {
        case SchemeKind::nachtigall: return "Nachtigall";
        case SchemeKind::hartmann_arguelles: return "Hartmann-Arguelles";
        case SchemeKind::cycle_threshold: return "cycle threshold";
    }
    return "?";
}

}  // namespace

std::string AnalyzeReport::to_text() const {
    std::ostringstream os;
    os << "instance: n = " << instance.a.dim() << (irreducible ? ", irreducible" : ", reducible")
       << '\n';
    os << "lambda(A) = " << lambda.str() << '\n';
    for (const auto& note : notes) os << "note: " << note << '\n';
    if (lambda.is_bottom()) return os.str();
    os << "critical nodes: " << join_nodes(crit_nodes) << ", components:";
    for (const auto& s : crit_sccs) os << ' ' << join_nodes(s);
    os << ", cyclicity " << crit_cyclicity << '\n';

    for (const auto& sr : schemes) {
        os << "scheme " << scheme_name(sr.kind) << " (" << kind_title(sr.kind) << ")\n";
        if (!sr.result) {
            os << "  error: " << sr.error << '\n';
            continue;
        }
        os << "  removed nodes: " << join_nodes(sr.result->removed_nodes)
           << ", lambda(B) = " << sr.result->lambda_b.str();
        if (sr.result->mu) os << ", mu = " << sr.result->mu->str();
        os << '\n';
        os << "  T1 bounds:\n";
        bound_report_text(os, sr.t1, "    ");
        os << "  T2 bounds:\n";
        bound_report_text(os, sr.t2, "    ");
        if (sr.t2v) {
            os << "  T2(A,B,v) bounds:\n";
            bound_report_text(os, *sr.t2v, "    ");
        }
        if (sr.global) os << "  max(T1, T2) bound: " << *sr.global << '\n';
        if (sr.oracle_t1)
            os << "  exact T1 = " << sr.oracle_t1->value << " (scan ceiling "
               << sr.oracle_t1->scan_ceiling << ")\n";
        if (sr.oracle_t2)
            os << "  exact T2 = " << sr.oracle_t2->value << " (scan ceiling "
               << sr.oracle_t2->scan_ceiling << ")\n";
        if (sr.oracle_t2v)
            os << "  exact T2(A,B,v) = " << sr.oracle_t2v->value << " (scan ceiling "
               << sr.oracle_t2v->scan_ceiling << ")\n";
    }
    if (!literature.entries.empty()) {
        os << "literature bounds:\n";
        bound_report_text(os, literature, "  ");
    }
    if (best_global) os << "best transient bound: " << *best_global << '\n';
    if (oracle_t)
        os << "exact transient T(A) = " << oracle_t->value << " (gamma " << oracle_t->gamma_used
           << ", scan ceiling " << oracle_t->scan_ceiling << ")\n";
    return os.str();
}

std::string AnalyzeReport::to_json() const {
    json out;
    out["n"] = instance.a.dim();
    out["irreducible"] = irreducible;
    out["lambda"] = lambda.str();
    out["notes"] = notes;
    if (!lambda.is_bottom()) {
        json crit;
        crit["nodes"] = crit_nodes;
        crit["components"] = crit_sccs;
        crit["cyclicity"] = crit_cyclicity;
        out["critical_graph"] = crit;
    }
    out["schemes"] = json::array();
    for (const auto& sr : schemes) {
        json s;
        s["scheme"] = scheme_name(sr.kind);
        if (!sr.result) {
            s["error"] = sr.error;
            out["schemes"].push_back(s);
            continue;
        }
        s["removed_nodes"] = sr.result->removed_nodes;
        s["lambda_B"] = sr.result->lambda_b.str();
        if (sr.result->mu) s["mu"] = sr.result->mu->str();
        s["t1_bounds"] = bound_report_json(sr.t1);
        s["t2_bounds"] = bound_report_json(sr.t2);
        if (sr.t2v) s["t2v_bounds"] = bound_report_json(*sr.t2v);
        if (sr.global) s["global_bound"] = *sr.global;
        if (sr.oracle_t1) s["exact_t1"] = witness_json(*sr.oracle_t1);
        if (sr.oracle_t2) s["exact_t2"] = witness_json(*sr.oracle_t2);
        if (sr.oracle_t2v) s["exact_t2v"] = witness_json(*sr.oracle_t2v);
        out["schemes"].push_back(s);
    }
    if (!literature.entries.empty()) out["literature"] = bound_report_json(literature);
    if (best_global) out["best_transient_bound"] = *best_global;
    if (oracle_t) out["exact_transient"] = witness_json(*oracle_t);
    return out.dump(2);
}

std::string PerSccReport::to_text() const {
    std::ostringstream os;
    os << "per-component analysis (" << components.size() << " cyclic components)\n";
    for (const auto& [nodes, rep] : components) {
        os << "=== component " << join_nodes(nodes) << " ===\n" << rep.to_text();
    }
    return os.str();
}

std::string PerSccReport::to_json() const {
    json out = json::array();
    for (const auto& [nodes, rep] : components) {
        json item;
        item["nodes"] = nodes;
        item["report"] = json::parse(rep.to_json());
        out.push_back(item);
    }
    return out.dump(2);
}

CompareReport compare(const InstanceFile& inst, const AnalyzeOptions& opts) {
    AnalyzeOptions my_opts = opts;
    my_opts.nacht = my_opts.ha = my_opts.ct = true;
    CompareReport rep(analyze(inst, my_opts));
    rep.ours_best = rep.analysis.best_global;

    const SchemeReport* ct = nullptr;
    for (const auto& sr : rep.analysis.schemes)
        if (sr.kind == SchemeKind::cycle_threshold && sr.result) ct = &sr;
    if (ct) {
        const BoundEntry* wiel = ct->t1.find("t1ct.wielandt");
        std::optional<long long> t2_side;
        if (const BoundEntry* q = ct->t2.find("t2.quadratic_short"); q && q->value)
            t2_side = q->ceiling();
        else
            t2_side = ct->t2.best();  // acyclic B clause
        if (wiel && wiel->value && t2_side)
            rep.ours_combined = std::max(*wiel->ceiling(), *t2_side);
    }
    if (const BoundEntry* ha = rep.analysis.literature.find("lit.ha_matrix");
        ha && ha->value)
        rep.ha_literature = ha->ceiling();

    if (!rep.ha_literature) {
        rep.verdict = "Hartmann-Arguelles literature bound inapplicable on this instance";
    } else if (rep.ours_combined && *rep.ours_combined < *rep.ha_literature) {
        rep.verdict = "ours strictly below the literature bound";
    } else if (rep.ours_combined && *rep.ours_combined == *rep.ha_literature) {
        rep.verdict = "ours equals the literature bound";
    } else {
        rep.verdict = "comparison incomplete";
    }
    return rep;
}

std::string CompareReport::to_text() const {
    std::ostringstream os;
    os << analysis.to_text();
    os << "comparison:\n";
    if (ours_combined)
        os << "  ours (Wielandt T1 + quadratic T2, cycle threshold scheme): "
           << *ours_combined << '\n';
    if (ours_best) os << "  ours (best over schemes): " << *ours_best << '\n';
    if (ha_literature)
        os << "  Hartmann-Arguelles literature bound: " << *ha_literature << '\n';
    os << "  verdict: " << verdict << '\n';
    return os.str();
}

std::string CompareReport::to_json() const {
    json out;
    out["analysis"] = json::parse(analysis.to_json());
    if (ours_combined) out["ours_combined"] = *ours_combined;
    if (ours_best) out["ours_best"] = *ours_best;
    if (ha_literature) out["ha_literature"] = *ha_literature;
    out["verdict"] = verdict;
    return out.dump(2);
}

namespace {

struct Check {
    std::vector<std::string>* out;
    long long* checks;

    void operator()(bool ok, const std::string& what) const {
        ++*checks;
        if (!ok) out->push_back(what);
    }
};

}  // namespace

std::vector<std::string> check_instance(const Matrix& a, const Vector& v, int node_limit,
                                        long long counts_out[4]) {
    std::vector<std::string> bad;
    Check check{&bad, &counts_out[0]};
    try {
        CriticalGraph crit = critical_graph(a);
        BoundContext ctx = bound_context(a, crit, node_limit);
        CsrTriple triple = csr_terms(a, select_representing(crit, RepresentingMode::full));

        SchemeResult nacht = scheme_nachtigall(a);
        SchemeResult ha = scheme_hartmann_arguelles(a);
        SchemeResult ct = scheme_cycle_threshold(a, std::max(node_limit, a.dim()));

        // Scheme chain (removed-node inclusion, subordination, eigenvalue order).
        {
            std::set<int> rn(nacht.removed_nodes.begin(), nacht.removed_nodes.end());
            std::set<int> rh(ha.removed_nodes.begin(), ha.removed_nodes.end());
            std::set<int> rc(ct.removed_nodes.begin(), ct.removed_nodes.end());
            check(std::includes(rh.begin(), rh.end(), rn.begin(), rn.end()),
                  "chain: removed(nacht) not within removed(ha)");
            check(std::includes(rc.begin(), rc.end(), rh.begin(), rh.end()),
                  "chain: removed(ha) not within removed(ct)");
            check(subordination_check(ct, ha), "chain: B^ct not subordinate to B^ha");
            check(subordination_check(ha, nacht), "chain: B^ha not subordinate to B^nacht");
            check(subordination_check(nacht, nacht), "chain: subordination not reflexive");
            check(ct.lambda_b <= ha.lambda_b && ha.lambda_b <= nacht.lambda_b &&
                      nacht.lambda_b < crit.lambda,
                  "chain: scheme eigenvalue chain violated");
        }

        BoundReport t1_rep = t1_bounds(ctx, SchemeKind::nachtigall);
        BoundReport t1ct_rep = t1_bounds_ct(ctx);

        TransientWitness t1_nacht = exact_t1(a, nacht, triple, *t1_rep.best());
        TransientWitness t1_ha = exact_t1(a, ha, triple, *t1_rep.best());
        TransientWitness t1_ct = exact_t1(a, ct, triple, *t1ct_rep.best());

        for (const auto& e : t1_rep.entries)
            if (e.value) {
                check(*e.ceiling() >= t1_nacht.value, "soundness: " + e.key + " below exact T1(nacht)");
                check(*e.ceiling() >= t1_ha.value, "soundness: " + e.key + " below exact T1(ha)");
            }
        for (const auto& e : t1ct_rep.entries)
            if (e.value) check(*e.ceiling() >= t1_ct.value, "soundness: " + e.key + " below exact T1(ct)");

        // Cycle-removal presets: per-component rows feed the combiner.
        {
            std::vector<long long> tcr, gam, ep0;
            std::vector<long long> tcr_full, gam_full, ep_full;
            for (int c = 0; c < crit.scc_count(); ++c) {
                long long g = crit.scc_girth[c];
                TcrParams p;
                p.gamma = g;
                p.n = ctx.n;
                p.n1 = g;
                p.c = ctx.circumference;
                p.d = ctx.cabdrive;
                p.l = g;
                long long raw = std::min(tcr_bound(TcrKind::arith, p),
                                         tcr_bound(TcrKind::cbfn, p));
                tcr.push_back(raw);
                gam.push_back(g);
                ep0.push_back(0);

                long long gamma_c = crit.scc_cyclicity[c];
                long long size_c = static_cast<long long>(crit.scc_nodes[c].size());
                long long comb = std::min(
                    tcr_table_component(TcrKind::arith, gamma_c, size_c, ctx),
                    tcr_table_component(TcrKind::cbfn, gamma_c, size_c, ctx));
                // component rows are already the combined column
                tcr_full.push_back(comb + gamma_c - 1);
                gam_full.push_back(gamma_c);
                ep_full.push_back(exact_ep(crit, c, gamma_c));
            }
            long long preset_cycle = t1_from_tcr(tcr, gam, ep0);
            long long preset_comp = t1_from_tcr(tcr_full, gam_full, ep_full);
            check(preset_cycle >= t1_nacht.value && preset_cycle >= t1_ha.value,
                  "soundness: cycle-row combiner below exact T1");
            check(preset_comp >= t1_nacht.value && preset_comp >= t1_ha.value,
                  "soundness: component-row combiner below exact T1");

            // Cycle threshold combiner over the cycles of the removed subgraph.
            std::vector<char> keep(a.dim(), 0);
            for (int u : ct.removed_nodes) keep[u] = 1;
            Digraph sub = Digraph::from_matrix(a).induced(keep);
            auto cycles = enumerate_cycles(sub, std::max(node_limit, a.dim()));
            std::vector<long long> strict;
            for (const auto& cyc : cycles) {
                long long l = static_cast<long long>(cyc.size());
                long long s = std::min(tcr_table_cycle(TcrKind::cbfn, l, ctx).strict,
                                       tcr_table_cycle(TcrKind::arith, l, ctx).strict);
                s = std::min(s, tcr_table_cycle(TcrKind::ha, l, ctx).strict);
                if (l == ctx.n)
                    s = std::min(s, tcr_table_cycle(TcrKind::ha_wielandt, l, ctx).strict);
                strict.push_back(s);
            }
            if (!strict.empty())
                check(t1_from_tcr_ct(strict) >= t1_ct.value,
                      "soundness: strict cycle combiner below exact T1(ct)");
        }

        long long best_global = std::numeric_limits<long long>::max();
        long long max_exact_t12 = 0;
        struct SchemeSlot {
            const SchemeResult* res;
            const BoundReport* t1rep;
            const TransientWitness* t1w;
        };
        for (const auto& slot : {SchemeSlot{&nacht, &t1_rep, &t1_nacht},
                                 SchemeSlot{&ha, &t1_rep, &t1_ha},
                                 SchemeSlot{&ct, &t1ct_rep, &t1_ct}}) {
            const SchemeResult& res = *slot.res;
            BoundReport t2_rep = t2_bounds(a, res, ctx, node_limit);
            TransientWitness t2w = exact_t2(a, res, triple, *t2_rep.best());
            for (const auto& e : t2_rep.entries)
                if (e.value)
                    check(*e.ceiling() >= t2w.value,
                          "soundness: " + e.key + std::string(" below exact T2 (") + scheme_name(res.kind) +
                              ")");
            // short forms dominate long forms
            for (const char* base :
                 {"t2.quadratic", "t2.cyclicity", "t2.cycle_cover", "t2.finite",
                  "t2.finite_syk"}) {
                const BoundEntry* lo = t2_rep.find(std::string(base) + "_long");
                const BoundEntry* hi = t2_rep.find(std::string(base) + "_short");
                if (lo && hi && lo->value && hi->value)
                    check(*hi->value >= *lo->value,
                          "soundness: " + std::string(base) + ": short form below long form");
            }

            BoundReport t2v_rep = t2v_bounds(a, res, v, ctx, node_limit);
            TransientWitness t2vw = exact_t2v(a, res, triple, v, *t2v_rep.best());
            for (const auto& e : t2v_rep.entries)
                if (e.value)
                    check(*e.ceiling() >= t2vw.value,
                          "soundness: " + e.key + std::string(" below exact T2v (") +
                              scheme_name(res.kind) + ")");
            if (res.lambda_b.is_bottom())
                check(t2vw.value <= t2w.value, "soundness: T2(A,B,v) above T2(A,B) for acyclic B");

            long long global = std::max(*slot.t1rep->best(), *t2_rep.best());
            best_global = std::min(best_global, global);
            max_exact_t12 =
                std::max(max_exact_t12, std::max(slot.t1w->value, t2w.value));

            // Weak expansion across the window past the T1 bound.
            long long from = *slot.t1rep->best();
            auto weak = verify_weak_csr(a, res, triple, from, from + 2 * triple.gamma);
            check(weak.violations.empty(), std::string("weak: expansion violated past the T1 bound (") +
                                               scheme_name(res.kind) + ")");
        }

        TransientWitness tw = exact_transient(a, best_global);
        counts_out[3] = std::max(counts_out[3], tw.value);
        check(tw.value <= max_exact_t12, "soundness: T(A) above max(exact T1, exact T2)");
        check(best_global >= tw.value, "soundness: combined bound below the exact transient");

        // Fallback graph parameters can only increase the bounds.
        {
            BoundContext fb = bound_context(a, crit, /*node_limit=*/0, /*exact_ep_limit=*/0);
            BoundReport t1_fb = t1_bounds(fb, SchemeKind::nachtigall);
            for (const auto& e : t1_fb.entries) {
                const BoundEntry* exact = t1_rep.find(e.key);
                if (e.value && exact && exact->value)
                    check(*e.value >= *exact->value,
                          "soundness: " + e.key + " fallback below exact-parameter value");
            }
            BoundReport t2_fb = t2_bounds(a, nacht, fb, 0);
            BoundReport t2_ex = t2_bounds(a, nacht, ctx, node_limit);
            for (const auto& e : t2_fb.entries) {
                const BoundEntry* exact = t2_ex.find(e.key);
                if (e.value && exact && exact->value)
                    check(*e.value >= *exact->value,
                          "soundness: " + e.key + " fallback below exact-parameter value");
            }
        }

        // Literature dominance.
        {
            BoundReport lit = literature_bounds(a, &nacht, &ha, &v);
            const BoundEntry* halit = lit.find("lit.ha_matrix");
            if (halit && halit->value) {
                ++counts_out[1];
                BoundReport t2_ct = t2_bounds(a, ct, ctx, node_limit);
                const BoundEntry* wiel = t1ct_rep.find("t1ct.wielandt");
                std::optional<long long> t2_side;
                if (const BoundEntry* q = t2_ct.find("t2.quadratic_short"); q && q->value)
                    t2_side = q->ceiling();
                else
                    t2_side = t2_ct.best();
                long long ours = std::max(*wiel->ceiling(), *t2_side);
                check(ours <= *halit->ceiling(),
                      "dominance: combined bound above the Hartmann-Arguelles literature bound");
                if (ours < *halit->ceiling()) ++counts_out[2];
            }
        }

        // CSR decomposition matches the powers on its window.
        {
            CsrDecomposition dec = csr_decomposition(a, std::max(node_limit, a.dim()));
            check(static_cast<int>(dec.terms.size()) <= a.dim(),
                  "decomp: decomposition has more than n terms");
            long long gam = 1;
            for (const auto& term : dec.terms) gam = std::lcm(gam, term.triple.gamma);
            Matrix pow = mat_power(a, dec.t_min);
            for (long long t = dec.t_min; t <= dec.t_min + 2 * gam; ++t) {
                check(dec.evaluate(t) == pow, "decomp: decomposition mismatch at t = " +
                                                   std::to_string(t));
                pow = mat_mul(pow, a);
            }
        }
    } catch (const FalsificationError& e) {
        bad.push_back(std::string("falsification: ") + e.what());
    } catch (const Error& e) {
        bad.push_back(std::string("error: ") + e.what());
    }
    return bad;
}

namespace {

// Shrinks a failing instance by deleting nodes while the violation persists.
std::pair<Matrix, Vector> minimize_counterexample(Matrix a, Vector v, int node_limit) {
    bool shrunk = true;
    while (shrunk && a.dim() > 1) {
        shrunk = false;
        for (int drop = 0; drop < a.dim(); ++drop) {
            Matrix sub(a.dim() - 1);
            Vector subv(a.dim() - 1);
            for (int i = 0, si = 0; i < a.dim(); ++i) {
                if (i == drop) continue;
                subv.at(si) = v.at(i);
                for (int j = 0, sj = 0; j < a.dim(); ++j) {
                    if (j == drop) continue;
                    sub.at(si, sj) = a.at(i, j);
                    ++sj;
                }
                ++si;
            }
            if (!is_strongly_connected(Digraph::from_matrix(sub))) continue;
            if (max_cycle_mean(sub).is_bottom()) continue;
            long long counts[4] = {0, 0, 0, 0};
            if (!check_instance(sub, subv, node_limit, counts).empty()) {
                a = std::move(sub);
                v = std::move(subv);
                shrunk = true;
                break;
            }
        }
    }
    return {std::move(a), std::move(v)};
}

}  // namespace

FuzzReport fuzz(const FuzzOptions& opts) {
    FuzzReport rep;
    rep.options = opts;
    rep.instances = opts.count;

    std::vector<std::vector<std::string>> bad(opts.count);
    std::vector<std::array<long long, 4>> counts(opts.count, std::array<long long, 4>{});

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < opts.count; ++i) {
        FuzzInstance inst = random_irreducible(opts.seed * 0x9e3779b97f4a7c15ULL + i,
                                               opts.n_max, opts.weight_lo, opts.weight_hi);
        bad[i] = check_instance(inst.a, inst.v, opts.node_limit, counts[i].data());
    }

    for (long long i = 0; i < opts.count; ++i) {
        rep.checks += counts[i][0];
        rep.dominance_defined += counts[i][1];
        rep.dominance_strict += counts[i][2];
        rep.max_exact_transient = std::max(rep.max_exact_transient, counts[i][3]);
        if (!bad[i].empty()) {
            FuzzInstance inst =
                random_irreducible(opts.seed * 0x9e3779b97f4a7c15ULL + i, opts.n_max,
                                   opts.weight_lo, opts.weight_hi);
            FuzzViolation viol;
            viol.index = i;
            std::ostringstream what;
            for (const auto& w : bad[i]) what << w << "; ";
            viol.what = what.str();
            viol.instance_text =
                serialize_instance({inst.a, inst.v});
            auto [ma, mv] = minimize_counterexample(inst.a, inst.v, opts.node_limit);
            viol.minimized_text = serialize_instance({ma, mv});
            rep.violations.push_back(std::move(viol));
        }
    }
    return rep;
}

std::string FuzzReport::to_text() const {
    std::ostringstream os;
    os << "fuzz: " << instances << " instances, seed " << options.seed << ", n <= "
       << options.n_max << ", weights [" << options.weight_lo << ", " << options.weight_hi
       << "]\n";
    os << "checks run: " << checks << '\n';
    os << "max exact transient seen: " << max_exact_transient << '\n';
    os << "literature dominance: defined on " << dominance_defined << ", strictly better on "
       << dominance_strict << '\n';
    if (violations.empty()) {
        os << "soundness: zero violations\n";
    } else {
        os << "soundness: " << violations.size() << " VIOLATIONS\n";
        for (const auto& v : violations) {
            os << "--- violation at instance " << v.index << ": " << v.what << '\n';
            os << "instance:\n" << v.instance_text;
            os << "minimized:\n" << v.minimized_text;
        }
    }
    return os.str();
}

std::string FuzzReport::to_json() const {
    json out;
    out["instances"] = instances;
    out["seed"] = options.seed;
    out["n_max"] = options.n_max;
    out["weight_lo"] = options.weight_lo;
    out["weight_hi"] = options.weight_hi;
    out["checks"] = checks;
    out["max_exact_transient"] = max_exact_transient;
    out["dominance_defined"] = dominance_defined;
    out["dominance_strict"] = dominance_strict;
    out["violations"] = json::array();
    for (const auto& v : violations) {
        json jv;
        jv["index"] = v.index;
        jv["what"] = v.what;
        jv["instance"] = v.instance_text;
        jv["minimized"] = v.minimized_text;
        out["violations"].push_back(jv);
    }
    return out.dump(2);
}

}  // namespace maxplus
