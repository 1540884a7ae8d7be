#include <doctest.h>

#include "maxplus/harness.hpp"
#include "test_util.hpp"

using namespace maxplus;
using namespace testutil;

namespace {

const SchemeReport* find_scheme(const AnalyzeReport& rep, SchemeKind kind) {
    for (const auto& sr : rep.schemes)
        if (sr.kind == kind) return &sr;
    return nullptr;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("analyze the golden instance with the oracle") {
    InstanceFile inst{golden5(), Vector::zeros(5)};
    AnalyzeReport rep = analyze(inst, AnalyzeOptions{});
    CHECK(rep.lambda == Scalar::unit());
    CHECK(rep.irreducible);
    CHECK(rep.crit_nodes == std::vector<int>{0, 1});

    const SchemeReport* nacht = find_scheme(rep, SchemeKind::nachtigall);
    const SchemeReport* ha = find_scheme(rep, SchemeKind::hartmann_arguelles);
    const SchemeReport* ct = find_scheme(rep, SchemeKind::cycle_threshold);
    REQUIRE(nacht);
    REQUIRE(ha);
    REQUIRE(ct);
    CHECK(nacht->result->lambda_b == Scalar(-1L));
    CHECK(ha->result->lambda_b == Scalar(-2L));
    CHECK(ct->result->lambda_b == Scalar(-3L));
    CHECK(nacht->oracle_t1->value == 2);
    CHECK(ha->oracle_t1->value == 3);
    CHECK(ct->oracle_t1->value == 4);
    CHECK(nacht->oracle_t2->value == 5);
    CHECK(ha->oracle_t2->value == 5);
    CHECK(ct->oracle_t2->value == 5);
    REQUIRE(rep.oracle_t.has_value());
    CHECK(rep.oracle_t->value == 5);

    std::string text = rep.to_text();
    CHECK(text.find("lambda(A) = 0") != std::string::npos);
    CHECK(text.find("exact transient T(A) = 5") != std::string::npos);
    CHECK(rep.to_json().find("\"exact_transient\"") != std::string::npos);
}

TEST_CASE("analyze a one-node loop") {
    Matrix one(1);
    one.at(0, 0) = Scalar(5L);
    AnalyzeReport rep = analyze(InstanceFile{one, std::nullopt}, AnalyzeOptions{});
    REQUIRE(rep.oracle_t.has_value());
    CHECK(rep.oracle_t->value == 0);
    for (const auto& sr : rep.schemes) {
        CHECK(sr.oracle_t1->value == 0);
        CHECK(sr.oracle_t2->value == 0);
    }
}

TEST_CASE("analyze a large instance without the oracle") {
    // n = 50: the exponential searches refuse and the fallbacks kick in.
    Rng rng(99);
    Matrix a(50);
    for (int i = 0; i < 50; ++i) a.at(i, (i + 1) % 50) = Scalar(rng.int_in(-9, 9));
    for (int k = 0; k < 300; ++k)
        a.at(static_cast<int>(rng.below(50)), static_cast<int>(rng.below(50))) =
            Scalar(rng.int_in(-9, 9));
    AnalyzeOptions opts;
    opts.with_oracle = false;
    AnalyzeReport rep = analyze(InstanceFile{a, std::nullopt}, opts);
    CHECK(!rep.oracle_t.has_value());
    bool fallback_note = false;
    for (const auto& note : rep.notes)
        if (note.find("refused") != std::string::npos) fallback_note = true;
    CHECK(fallback_note);
    const SchemeReport* nacht = find_scheme(rep, SchemeKind::nachtigall);
    REQUIRE(nacht);
    CHECK(nacht->t1.best().has_value());
    const SchemeReport* ct = find_scheme(rep, SchemeKind::cycle_threshold);
    REQUIRE(ct);
    CHECK(!ct->result.has_value());  // cycle enumeration refused
    CHECK(ct->error.find("refused") != std::string::npos);
}

TEST_CASE("reducible matrices: per-component analysis") {
    Matrix red(4);
    red.at(0, 1) = Scalar(0L);
    red.at(1, 0) = Scalar(0L);
    red.at(1, 2) = Scalar(-1L);
    red.at(2, 3) = Scalar(2L);
    red.at(3, 2) = Scalar(0L);
    InstanceFile inst{red, std::nullopt};
    AnalyzeReport rep = analyze(inst, AnalyzeOptions{});
    CHECK(!rep.irreducible);
    const SchemeReport* ha = find_scheme(rep, SchemeKind::hartmann_arguelles);
    REQUIRE(ha);
    CHECK(!ha->result.has_value());  // needs irreducibility
    CHECK(!rep.oracle_t.has_value());

    PerSccReport per = analyze_per_scc(inst, AnalyzeOptions{});
    REQUIRE(per.components.size() == 2);
    CHECK(per.components[0].first == std::vector<int>{0, 1});
    CHECK(per.components[1].first == std::vector<int>{2, 3});
    CHECK(per.components[1].second.lambda == Scalar(1L));
    CHECK(per.components[1].second.oracle_t.has_value());
}

TEST_CASE("analyze a nilpotent matrix") {
    Matrix nil(3);
    nil.at(0, 1) = Scalar(2L);
    nil.at(1, 2) = Scalar(2L);
    AnalyzeReport rep = analyze(InstanceFile{nil, std::nullopt}, AnalyzeOptions{});
    CHECK(rep.lambda.is_bottom());
    REQUIRE(!rep.notes.empty());
    CHECK(rep.notes[0] == "no eigenvalue, powers nilpotent");
    CHECK(rep.schemes.empty());
    CHECK(rep.to_text().find("powers nilpotent") != std::string::npos);
}

TEST_CASE("compare on the golden instance") {
    CompareReport rep = compare(InstanceFile{golden5(), std::nullopt}, AnalyzeOptions{});
    REQUIRE(rep.ha_literature.has_value());
    CHECK(*rep.ha_literature == 175);
    REQUIRE(rep.ours_combined.has_value());
    CHECK(*rep.ours_combined < *rep.ha_literature);
    CHECK(rep.verdict == "ours strictly below the literature bound");
}

TEST_CASE("check_instance accepts the golden instance") {
    long long counts[4] = {0, 0, 0, 0};
    auto bad = check_instance(golden5(), Vector::zeros(5), 20, counts);
    for (const auto& b : bad) MESSAGE(b);
    CHECK(bad.empty());
    CHECK(counts[0] > 50);   // plenty of checks ran
    CHECK(counts[1] == 1);   // HA literature bound defined
    CHECK(counts[2] == 1);   // and strictly beaten
    CHECK(counts[3] == 5);   // the exact transient
}

TEST_CASE("fuzz: a short deterministic run is clean") {
    FuzzOptions opts;
    opts.count = 40;
    opts.n_max = 5;
    opts.seed = 7;
    FuzzReport rep = fuzz(opts);
    for (const auto& v : rep.violations) MESSAGE(v.what, "\n", v.instance_text);
    CHECK(rep.ok());
    CHECK(rep.instances == 40);
    CHECK(rep.checks > 1000);
    CHECK(rep.to_text() == fuzz(opts).to_text());  // byte-identical reruns
}

TEST_CASE("fuzz exercises boolean weight ranges") {
    FuzzOptions opts;
    opts.count = 12;
    opts.n_max = 4;
    opts.weight_lo = 0;
    opts.weight_hi = 0;
    opts.seed = 3;
    FuzzReport rep = fuzz(opts);
    CHECK(rep.ok());
}

TEST_CASE("scheme separator generator") {
    SeparatorParams def;
    Matrix a = gen_scheme_separator(def);
    CHECK(a.dim() == 5);
    CHECK(scheme_nachtigall(a).lambda_b == Scalar(-1L));
    CHECK(scheme_hartmann_arguelles(a).lambda_b == Scalar(-2L));
    CHECK(scheme_cycle_threshold(a).lambda_b == Scalar(-3L));

    SeparatorParams big;
    big.sizes = {3, 2, 2, 2};
    Matrix b = gen_scheme_separator(big);
    CHECK(b.dim() == 9);
    CHECK(scheme_nachtigall(b).lambda_b == Scalar(mpq_class(-1)));
    CHECK(scheme_hartmann_arguelles(b).lambda_b == Scalar(mpq_class(-2)));
    CHECK(scheme_cycle_threshold(b).lambda_b == Scalar(mpq_class(-3)));

    SeparatorParams bad;
    bad.lambdas = {mpq_class(0), mpq_class(-2), mpq_class(-1), mpq_class(-3)};
    CHECK_THROWS_AS(gen_scheme_separator(bad), GenerationError);
}

TEST_SUITE_END();
