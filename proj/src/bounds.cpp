#include "maxplus/bounds.hpp"

#include <algorithm>
#include <limits>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

long long ceil_q(const mpq_class& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (!z.fits_slong_p()) throw Error("bound ceiling does not fit a machine integer");
    return z.get_si();
}

std::string fmt(long long v) { return std::to_string(v); }

BoundEntry entry(std::string key, std::string family, mpq_class value) {
    BoundEntry e;
    e.key = std::move(key);
    e.family = std::move(family);
    e.value = std::move(value);
    return e;
}

BoundEntry inapplicable(std::string key, std::string family, std::string why) {
    BoundEntry e;
    e.key = std::move(key);
    e.family = std::move(family);
    e.note = std::move(why);
    return e;
}

}  // namespace

std::optional<long long> BoundEntry::ceiling() const {
    if (!value) return std::nullopt;
    return ceil_q(*value);
}

std::optional<long long> BoundReport::best() const {
    std::optional<long long> b;
    for (const auto& e : entries) {
        auto c = e.ceiling();
        if (c && (!b || *c < *b)) b = c;
    }
    return b;
}

std::optional<long long> BoundReport::best_of(const std::string& family) const {
    std::optional<long long> b;
    for (const auto& e : entries) {
        if (e.family != family) continue;
        auto c = e.ceiling();
        if (c && (!b || *c < *b)) b = c;
    }
    return b;
}

const BoundEntry* BoundReport::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

long long wielandt(long long n) { return wielandt_number(n); }

BoundContext bound_context(const Matrix& a, const CriticalGraph& crit, int node_limit,
                           int exact_ep_limit) {
    BoundContext ctx;
    ctx.n = a.dim();
    ctx.lambda = crit.lambda;
    Digraph g = Digraph::from_matrix(a);
    DigraphParams p = digraph_params(g, node_limit);
    ctx.circumference = p.circumference_or_bound;
    ctx.circ_exact = p.circumference_exact;
    ctx.cabdrive = p.cabdrive;
    ctx.cab_exact = p.cabdrive_exact;
    ctx.g_hat = crit.max_girth();
    ctx.gamma_hat = crit.max_cyclicity();
    ctx.n_c = crit.node_count();
    ctx.ep = 0;
    ctx.ep_exact = true;
    for (int c = 0; c < crit.scc_count(); ++c) {
        EpEstimate est = ep_estimate(crit, c, exact_ep_limit);
        ctx.ep = std::max(ctx.ep, est.value);
        ctx.ep_exact = ctx.ep_exact && est.exact;
    }
    return ctx;
}

namespace {

void stamp_params(BoundEntry& e, const BoundContext& ctx, bool uses_cd, bool uses_ep) {
    e.params["n"] = fmt(ctx.n);
    e.params["g_hat"] = fmt(ctx.g_hat);
    e.params["gamma_hat"] = fmt(ctx.gamma_hat);
    if (uses_cd) {
        e.params["c"] = fmt(ctx.circumference) + (ctx.circ_exact ? "" : " (fallback)");
        e.params["d"] = fmt(ctx.cabdrive) + (ctx.cab_exact ? "" : " (fallback)");
        e.exact_params = e.exact_params && ctx.circ_exact && ctx.cab_exact;
    }
    if (uses_ep) {
        e.params["ep"] = fmt(ctx.ep) + (ctx.ep_exact ? "" : " (bound)");
        e.exact_params = e.exact_params && ctx.ep_exact;
    }
}

}  // namespace

BoundReport t1_bounds(const BoundContext& ctx, SchemeKind scheme) {
    if (scheme == SchemeKind::cycle_threshold)
        throw Error("t1_bounds covers the Nachtigall and HA schemes; use t1_bounds_ct");
    const long long n = ctx.n, c = ctx.circumference, d = ctx.cabdrive;
    BoundReport rep;
    {
        auto e = entry("t1.wielandt", "t1", mpq_class(static_cast<long>(wielandt(n))));
        stamp_params(e, ctx, false, false);
        rep.entries.push_back(e);
    }
    {
        auto e = entry("t1.girth_linear", "t1",
                       mpq_class(static_cast<long>(ctx.g_hat * (n - 2) + n)));
        stamp_params(e, ctx, false, false);
        rep.entries.push_back(e);
    }
    {
        auto e = entry("t1.cycle_cover", "t1",
                       mpq_class(static_cast<long>((ctx.g_hat - 1) * (c - 1) +
                                                   (ctx.g_hat + 1) * d)));
        stamp_params(e, ctx, true, false);
        rep.entries.push_back(e);
    }
    {
        // Combiner over whole critical components with the arithmetic cycle
        // removal bound: gamma-hat (n-1) + n - n_c + ep.
        auto e = entry("t1.cyclicity_ep", "t1",
                       mpq_class(static_cast<long>(ctx.gamma_hat * (n - 1) + n - ctx.n_c +
                                                   ctx.ep)));
        stamp_params(e, ctx, false, true);
        rep.entries.push_back(e);
    }
    {
        auto e = entry("t1.cycle_cover_ep", "t1",
                       mpq_class(static_cast<long>((ctx.gamma_hat - 1) * (c - 1) +
                                                   (ctx.gamma_hat + 1) * d + ctx.ep)));
        stamp_params(e, ctx, true, true);
        rep.entries.push_back(e);
    }
    return rep;
}

BoundReport t1_bounds_ct(const BoundContext& ctx) {
    const long long n = ctx.n, c = ctx.circumference, d = ctx.cabdrive;
    BoundReport rep;
    {
        auto e = entry("t1ct.wielandt", "t1ct", mpq_class(static_cast<long>(wielandt(n))));
        stamp_params(e, ctx, false, false);
        rep.entries.push_back(e);
    }
    {
        auto e = entry("t1ct.circ_linear", "t1ct",
                       mpq_class(static_cast<long>((n - 1) * c + std::min(n, d + c + 1))));
        stamp_params(e, ctx, true, false);
        rep.entries.push_back(e);
    }
    {
        auto e = entry("t1ct.circ_quadratic", "t1ct",
                       mpq_class(static_cast<long>((d + c - 1) * c + d + 1)));
        stamp_params(e, ctx, true, false);
        rep.entries.push_back(e);
    }
    return rep;
}

long long tcr_bound(TcrKind kind, const TcrParams& p) {
    switch (kind) {
        case TcrKind::cbfn:
            return (p.gamma - 1) * p.c + (p.gamma + 1) * p.d;
        case TcrKind::ha:
            if (p.gamma <= 0 || p.l % p.gamma != 0)
                throw Error("tcr ha bound needs gamma dividing the cycle length");
            return (p.n - 1 - p.l + p.gamma) * p.c + p.d + p.l;
        case TcrKind::ha_wielandt:
            if (p.l != p.n) throw Error("tcr strict Wielandt bound needs a Hamiltonian cycle");
            return p.n * p.n - p.n + 1;  // strict threshold
        case TcrKind::arith:
            return p.gamma * p.n + p.n - p.n1 - 1;
    }
    throw Error("unknown tcr bound kind");
}

TcrTableRow tcr_table_cycle(TcrKind kind, long long l, const BoundContext& ctx) {
    const long long n = ctx.n, c = ctx.circumference, d = ctx.cabdrive;
    switch (kind) {
        case TcrKind::cbfn:
            return {(l - 1) * (c - 1) + (l + 1) * d, (l - 1) * c + (l + 1) * d + 1};
        case TcrKind::ha:
            return {(n - 1) * c + d + 1, n * c + d + 1};
        case TcrKind::ha_wielandt:
            if (l != n) throw Error("Wielandt table row needs a Hamiltonian cycle");
            return {wielandt(n), n * n - n + 1};
        case TcrKind::arith:
            return {l * (n - 2) + n, l * (n - 1) + n};
    }
    throw Error("unknown tcr table row");
}

long long tcr_table_component(TcrKind kind, long long gamma, long long scc_size,
                              const BoundContext& ctx) {
    switch (kind) {
        case TcrKind::cbfn:
            return (gamma - 1) * (ctx.circumference - 1) + (gamma + 1) * ctx.cabdrive;
        case TcrKind::arith:
            return gamma * (ctx.n - 1) + ctx.n - scc_size;
        default:
            throw Error("component table rows exist for the cbfn and arith methods only");
    }
}

long long t1_from_tcr(const std::vector<long long>& tcr, const std::vector<long long>& gamma,
                      const std::vector<long long>& ep) {
    if (tcr.size() != gamma.size() || tcr.size() != ep.size() || tcr.empty())
        throw Error("t1_from_tcr needs aligned nonempty vectors");
    long long best = std::numeric_limits<long long>::min();
    for (size_t i = 0; i < tcr.size(); ++i)
        best = std::max(best, tcr[i] - gamma[i] + 1 + ep[i]);
    return best;
}

long long t1_from_tcr_ct(const std::vector<long long>& strict_tcr) {
    if (strict_tcr.empty()) throw Error("t1_from_tcr_ct needs at least one cycle");
    return *std::max_element(strict_tcr.begin(), strict_tcr.end());
}

BoundReport ep_bounds(const CriticalGraph& crit, int scc_index) {
    if (scc_index < 0 || scc_index >= crit.scc_count())
        throw Error("ep_bounds: component index out of range");
    const long long size = static_cast<long long>(crit.scc_nodes[scc_index].size());
    const long long g = crit.scc_girth[scc_index];
    const long long gamma = crit.scc_cyclicity[scc_index];
    BoundReport rep;
    {
        // 2(g/gamma)|G| - g/gamma - 2g + gamma; gamma divides g.
        long long q = g / gamma;
        rep.entries.push_back(entry(
            "ep.walk_patching", "ep",
            mpq_class(static_cast<long>(2 * q * size - q - 2 * g + gamma))));
    }
    {
        IndexBounds ib = index_bounds(crit.graph.restricted_to(crit.scc_nodes[scc_index]));
        rep.entries.push_back(
            entry("ep.index_wielandt", "ep", mpq_class(static_cast<long>(ib.wielandt))));
        rep.entries.push_back(
            entry("ep.index_schwarz", "ep", mpq_class(static_cast<long>(ib.schwarz))));
        rep.entries.push_back(entry("ep.index_dm", "ep",
                                    mpq_class(static_cast<long>(ib.dulmage_mendelsohn))));
        rep.entries.push_back(
            entry("ep.index_kim", "ep", mpq_class(static_cast<long>(ib.kim))));
    }
    {
        long long n_c = crit.node_count();
        long long h = crit.scc_count();
        rep.entries.push_back(entry(
            "ep.aggregate", "ep",
            mpq_class(static_cast<long>(n_c + (n_c - 2 * h) * crit.max_girth()))));
    }
    return rep;
}

EpEstimate ep_estimate(const CriticalGraph& crit, int scc_index, int exact_limit) {
    long long bound = *ep_bounds(crit, scc_index).best();
    if (static_cast<int>(crit.scc_nodes[scc_index].size()) <= exact_limit) {
        long long exact = exploration_penalty_exact(crit.graph, crit.scc_nodes[scc_index],
                                                    crit.scc_cyclicity[scc_index]);
        return {std::min(exact, bound), true};
    }
    return {bound, false};
}

namespace {

struct T2Ingredients {
    mpq_class lambda_a;
    mpq_class min_a;  // smallest finite entry of A
    bool a_all_finite;
    long long d_b;  // cab-driver diameter of D(B), exact or n_B - 1
    bool d_b_exact;
    long long n_b;
    mpq_class norm_a;
    // Only meaningful when lambda(B) is finite:
    mpq_class lambda_b;
    mpq_class max_b;
    mpq_class min_b;
    mpq_class gap;  // lambda(A) - lambda(B)
};

T2Ingredients t2_ingredients(const Matrix& a, const SchemeResult& res,
                             const BoundContext& ctx, int node_limit) {
    T2Ingredients ing;
    ing.lambda_a = ctx.lambda.rat();
    ing.a_all_finite = true;
    bool first = true;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            if (a.at(i, j).is_bottom()) {
                ing.a_all_finite = false;
                continue;
            }
            if (first || a.at(i, j).rat() < ing.min_a) ing.min_a = a.at(i, j).rat();
            first = false;
        }
    ing.norm_a = matrix_norm(a).rat();

    Digraph gb = Digraph::from_matrix(res.b);
    ing.n_b = support_size(res.b);
    DigraphParams p = digraph_params(gb, node_limit);
    ing.d_b = p.cabdrive;
    ing.d_b_exact = p.cabdrive_exact;

    if (res.lambda_b.is_finite()) {
        ing.lambda_b = res.lambda_b.rat();
        ing.gap = ing.lambda_a - ing.lambda_b;
        bool bfirst = true;
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                if (res.b.at(i, j).is_bottom()) continue;
                const mpq_class& v = res.b.at(i, j).rat();
                if (bfirst || v > ing.max_b) ing.max_b = v;
                if (bfirst || v < ing.min_b) ing.min_b = v;
                bfirst = false;
            }
        if (ing.gap <= 0)
            throw FalsificationError("scheme produced lambda(B) >= lambda(A)", "");
    }
    return ing;
}

void push_ratio_pair(BoundReport& rep, const std::string& base, long long numerator_factor,
                     const T2Ingredients& ing, const BoundContext& ctx, bool uses_cd) {
    mpq_class nf(static_cast<long>(numerator_factor));
    mpq_class long_form =
        (nf * (ing.lambda_a - ing.min_a) + mpq_class(static_cast<long>(ing.d_b)) *
                                               (ing.max_b - ing.lambda_b)) /
        ing.gap;
    mpq_class short_form = nf * ing.norm_a / ing.gap + mpq_class(static_cast<long>(ing.d_b));
    auto e1 = entry(base + "_long", "t2", long_form);
    auto e2 = entry(base + "_short", "t2", short_form);
    for (auto* e : {&e1, &e2}) {
        stamp_params(*e, ctx, uses_cd, false);
        e->params["d_B"] = fmt(ing.d_b) + (ing.d_b_exact ? "" : " (fallback)");
        e->exact_params = e->exact_params && ing.d_b_exact;
    }
    rep.entries.push_back(e1);
    rep.entries.push_back(e2);
}

}  // namespace

BoundReport t2_bounds(const Matrix& a, const SchemeResult& res, const BoundContext& ctx,
                      int node_limit) {
    BoundReport rep;
    T2Ingredients ing = t2_ingredients(a, res, ctx, node_limit);

    if (res.lambda_b.is_bottom()) {
        auto e = entry("t2.acyclic_path", "t2",
                       mpq_class(static_cast<long>(ing.d_b + 1)));
        e.params["d_B"] = fmt(ing.d_b) + (ing.d_b_exact ? "" : " (fallback)");
        e.exact_params = ing.d_b_exact;
        rep.entries.push_back(e);
        if (ing.n_b >= 1) {
            auto e2 = entry("t2.acyclic_support", "t2",
                            mpq_class(static_cast<long>(ing.n_b)));
            e2.params["n_B"] = fmt(ing.n_b);
            rep.entries.push_back(e2);
        } else {
            rep.entries.push_back(inapplicable("t2.acyclic_support", "t2",
                                               "B has no finite entries"));
        }
        return rep;
    }

    push_ratio_pair(rep, "t2.quadratic", ctx.n * ctx.n - ctx.n + 1, ing, ctx, false);
    push_ratio_pair(rep, "t2.cyclicity", ctx.gamma_hat * (ctx.n - 1) + ctx.n, ing, ctx,
                    false);
    push_ratio_pair(rep, "t2.cycle_cover",
                    (ctx.gamma_hat - 1) * ctx.circumference +
                        (ctx.gamma_hat + 1) * ctx.cabdrive,
                    ing, ctx, true);

    if (ing.a_all_finite) {
        mpq_class two(2), three(3);
        rep.entries.push_back(entry(
            "t2.finite_long", "t2",
            (two * (ing.lambda_a - ing.min_a) + (ing.lambda_b - ing.min_b)) / ing.gap));
        rep.entries.push_back(entry("t2.finite_short", "t2", three * ing.norm_a / ing.gap));
        {
            auto e = entry("t2.finite_syk_long", "t2",
                           two * (ing.lambda_a - ing.min_a) / ing.gap +
                               mpq_class(static_cast<long>(ing.d_b)));
            e.params["d_B"] = fmt(ing.d_b) + (ing.d_b_exact ? "" : " (fallback)");
            e.exact_params = ing.d_b_exact;
            rep.entries.push_back(e);
            auto e2 = entry("t2.finite_syk_short", "t2",
                            two * ing.norm_a / ing.gap +
                                mpq_class(static_cast<long>(ing.d_b)));
            e2.params = e.params;
            e2.exact_params = e.exact_params;
            rep.entries.push_back(e2);
        }
    } else {
        rep.entries.push_back(
            inapplicable("t2.finite_long", "t2", "matrix has -inf entries"));
        rep.entries.push_back(
            inapplicable("t2.finite_short", "t2", "matrix has -inf entries"));
        rep.entries.push_back(
            inapplicable("t2.finite_syk_long", "t2", "matrix has -inf entries"));
        rep.entries.push_back(
            inapplicable("t2.finite_syk_short", "t2", "matrix has -inf entries"));
    }
    return rep;
}

BoundReport t2v_bounds(const Matrix& a, const SchemeResult& res, const Vector& v,
                       const BoundContext& ctx, int node_limit) {
    for (int i = 0; i < v.dim(); ++i)
        if (v.at(i).is_bottom()) throw Error("t2v bounds need an all-finite vector");
    BoundReport rep;
    T2Ingredients ing = t2_ingredients(a, res, ctx, node_limit);
    mpq_class norm_v = vector_norm(v).rat();

    if (res.lambda_b.is_bottom()) {
        auto e = entry("t2v.acyclic_path", "t2v",
                       mpq_class(static_cast<long>(ing.d_b + 1)));
        e.params["d_B"] = fmt(ing.d_b) + (ing.d_b_exact ? "" : " (fallback)");
        e.exact_params = ing.d_b_exact;
        rep.entries.push_back(e);
        if (ing.n_b >= 1)
            rep.entries.push_back(entry("t2v.acyclic_support", "t2v",
                                        mpq_class(static_cast<long>(ing.n_b))));
        return rep;
    }

    rep.entries.push_back(
        entry("t2v.norm_ratio", "t2v",
              (norm_v + mpq_class(static_cast<long>(ctx.n - 1)) * ing.norm_a) / ing.gap));
    if (ing.a_all_finite) {
        rep.entries.push_back(entry("t2v.finite_long", "t2v",
                                    (norm_v + (ing.lambda_a - ing.min_a) +
                                     (ing.lambda_b - ing.min_b)) /
                                        ing.gap));
        rep.entries.push_back(entry(
            "t2v.finite_short", "t2v", (mpq_class(2) * ing.norm_a + norm_v) / ing.gap));
    } else {
        rep.entries.push_back(
            inapplicable("t2v.finite_long", "t2v", "matrix has -inf entries"));
        rep.entries.push_back(
            inapplicable("t2v.finite_short", "t2v", "matrix has -inf entries"));
    }
    return rep;
}

BoundReport literature_bounds(const Matrix& a, const SchemeResult* nacht,
                              const SchemeResult* ha, const Vector* v) {
    BoundReport rep;
    const long long n = a.dim();
    mpq_class two_n2(static_cast<long>(2 * n * n));
    mpq_class norm_a = matrix_norm(a).rat();
    Scalar lambda = max_cycle_mean(a);
    if (lambda.is_bottom()) throw AcyclicError("literature bounds need an eigenvalue");

    bool a_all_finite = true;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j).is_bottom()) a_all_finite = false;

    if (ha && ha->lambda_b.is_finite()) {
        mpq_class gap = lambda.rat() - ha->lambda_b.rat();
        rep.entries.push_back(entry("lit.ha_matrix", "lit",
                                    std::max(two_n2, mpq_class(two_n2 * norm_a / gap))));
        if (v) {
            mpq_class norm_v = vector_norm(*v).rat();
            rep.entries.push_back(
                entry("lit.ha_vector", "lit",
                      std::max(two_n2, mpq_class((norm_v + mpq_class(static_cast<long>(n)) * norm_a) /
                                           gap))));
        }
    } else {
        rep.entries.push_back(
            inapplicable("lit.ha_matrix", "lit", "lambda(B^ha) = -inf, ratio undefined"));
        if (v)
            rep.entries.push_back(inapplicable("lit.ha_vector", "lit",
                                               "lambda(B^ha) = -inf, ratio undefined"));
    }

    if (a_all_finite && nacht && nacht->lambda_b.is_finite()) {
        mpq_class gap = lambda.rat() - nacht->lambda_b.rat();
        rep.entries.push_back(
            entry("lit.syk_finite", "lit",
                  std::max(two_n2, mpq_class(mpq_class(2) * norm_a / gap +
                                       mpq_class(static_cast<long>(n + 1))))));
    } else {
        rep.entries.push_back(inapplicable(
            "lit.syk_finite", "lit",
            a_all_finite ? "lambda(B^nacht) = -inf, ratio undefined"
                         : "matrix has -inf entries"));
    }
    return rep;
}

std::optional<long long> combine_global(const BoundReport& t1, const BoundReport& t2) {
    auto b1 = t1.best(), b2 = t2.best();
    if (!b1 || !b2) return std::nullopt;
    return std::max(*b1, *b2);
}

}  // namespace maxplus
