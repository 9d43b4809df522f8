// Acceptance suite: runs every criterion at its stated tolerance (exact
// arithmetic means tolerance zero) and prints one pass/fail line per
// criterion. argv[1] is the path to the fpcalc CLI binary.

#include "fpcalc/dsl.hpp"
#include "fpcalc/engine.hpp"
#include "fpcalc/render.hpp"
#include "support.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace fpcalc;

namespace {

std::string g_cli;
int g_failures = 0;
std::string g_detail;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
    g_detail.clear();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        g_detail = e.what();
    }
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                g_detail.empty() ? "" : " -- ", g_detail.c_str());
    if (!ok) ++g_failures;
}

bool expect(bool cond, const std::string& detail) {
    if (!cond && g_detail.empty()) g_detail = detail;
    return cond;
}

std::string data_file(const std::string& name) {
    return std::string(FPCALC_TEST_DATA_DIR) + "/" + name;
}

Decomposition classify_file(const std::string& name, ClassifyOptions opts = {}) {
    std::ifstream f(data_file(name));
    std::stringstream ss;
    ss << f.rdbuf();
    auto parsed = parse_problem(ss.str());
    if (!parsed.ok()) throw std::runtime_error(name + ": parse failed");
    return classify(parsed.doc->algebras, opts);
}

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    CliRun r;
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<Rational> rat_weights(const Offspring& o) {
    std::vector<Rational> ws;
    for (const auto& w : o.weights) ws.push_back(*w.rational());
    return ws;
}

RadicalReal rad(std::map<BigInt, Rational> e) { return RadicalReal::from_exponents(std::move(e)); }

bool cyclic_lambda_is(const Decomposition& dec, const RadicalReal& lambda) {
    return dec.continuous.kind == ContinuousPart::Kind::TypeIII && dec.continuous.sd.is_cyclic() &&
           *dec.continuous.sd.lambda == lambda;
}

ExactScalar offspring_total(const Decomposition& dec) {
    ExactScalar total(0);
    for (const auto& o : dec.type_I)
        for (const auto& w : o.weights) total = total + w;
    return total;
}

// ---- criteria 1..9 ----

bool criterion_3a() {
    const auto dec = classify_file("ex3a.fp");
    if (!expect(dec.type_I.size() == 1, "expected one offspring")) return false;
    if (!expect(rat_weights(dec.type_I[0]) == std::vector<Rational>{{1, 15}, {1, 30}},
                "offspring weights"))
        return false;
    if (!expect(dec.dominant == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}},
                "dominant projection"))
        return false;
    if (!expect(cyclic_lambda_is(dec, rad({{2, Rational(-1)}})), "lambda")) return false;
    if (!expect(dec.continuous.mass == ExactScalar(Rational(9, 10)), "mass")) return false;
    const auto cli = run_cli("classify " + data_file("ex3a.fp"));
    return expect(cli.exit_code == 0 && cli.out.find("M2:[1/15,1/30]") != std::string::npos &&
                      cli.out.find("III_lambda lambda=1/2") != std::string::npos,
                  "CLI output");
}

bool criterion_3b() {
    const auto dec = classify_file("ex3b.fp");
    return expect(dec.type_I.empty(), "no offspring expected") &&
           expect(cyclic_lambda_is(dec, rad({{2, Rational(-1)}})), "lambda 1/2");
}

bool criterion_3c() {
    const auto dec = classify_file("ex3c.fp");
    const auto expected =
        MultSubgroup::generate({rad({{3, Rational(-1)}}), rad({{2, Rational(-1)}})});
    return expect(dec.type_I.empty(), "no offspring expected") &&
           expect(dec.continuous.sd.is_dense(), "dense class") &&
           expect(dec.continuous.sd_group.same_subgroup(expected), "<1/3,1/2> lattice");
}

bool criterion_3d() {
    const auto dec = classify_file("ex3d.fp");
    if (!expect(dec.type_I.size() == 2, "two offspring expected")) return false;
    if (!expect(rat_weights(dec.type_I[0]) == std::vector<Rational>{{1, 30}, {1, 60}},
                "matrix offspring"))
        return false;
    if (!expect(rat_weights(dec.type_I[1]) == std::vector<Rational>{{2, 5}}, "scalar offspring"))
        return false;
    return expect(cyclic_lambda_is(dec, rad({{2, Rational(-1, 2)}})), "lambda 2^(-1/2)");
}

bool criterion_3e() {
    const auto dec = classify_file("ex3e.fp");
    if (!expect(dec.type_I.size() == 1 && rat_weights(dec.type_I[0]) == std::vector<Rational>{{1, 4}},
                "offspring C[1/4]"))
        return false;
    if (!expect(cyclic_lambda_is(dec, rad({{2, Rational(-1)}})), "lambda 1/2")) return false;
    const auto cli = run_cli("classify " + data_file("ex3e.fp"));
    return expect(cli.exit_code == 0 && cli.out.find("C:[1/4]") != std::string::npos, "CLI output");
}

bool criterion_3f() {
    const auto dec = classify_file("ex3f.fp");
    if (!expect(dec.type_I.size() == 3, "three offspring expected")) return false;
    if (!expect(rat_weights(dec.type_I[0]) == std::vector<Rational>{{1, 656}, {1, 656}, {1, 328}} &&
                    rat_weights(dec.type_I[1]) == std::vector<Rational>{{25, 328}, {25, 328}} &&
                    rat_weights(dec.type_I[2]) == std::vector<Rational>{{37, 164}},
                "offspring weights"))
        return false;
    const auto expected = MultSubgroup::generate({rad({{2, Rational(1)}}), rad({{3, Rational(2)}})});
    if (!expect(dec.continuous.sd.is_dense() && dec.continuous.sd.rank == 2 &&
                    dec.continuous.sd_group.same_subgroup(expected),
                "Sd = <2,9> of rank 2"))
        return false;
    if (!expect(dec.dominant == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}},
                "dominant C[40/41]"))
        return false;
    const auto cli = run_cli("classify " + data_file("ex3f.fp"));
    return expect(cli.exit_code == 0 && cli.out.find("III_1") != std::string::npos, "CLI III_1");
}

bool criterion_4g() {
    const auto dec = classify_file("ex4g.fp");
    return expect(dec.type_I.empty(), "no offspring expected") &&
           expect(cyclic_lambda_is(dec, rad({{2, Rational(-1)}})), "lambda 1/2");
}

bool criterion_4h() {
    const auto dec = classify_file("ex4h.fp");
    const auto expected = MultSubgroup::generate({rad({{2, Rational(1)}}), rad({{3, Rational(1)}})});
    return expect(dec.type_I.size() == 1 &&
                      rat_weights(dec.type_I[0]) == std::vector<Rational>{{7, 20}, {7, 60}},
                  "offspring M2[7/20,7/60]") &&
           expect(dec.continuous.sd.is_dense(), "dense") &&
           expect(dec.continuous.sd_group.same_subgroup(expected), "Sd = <2,3>");
}

bool criterion_4k_truncation() {
    for (long long n = 2; n <= 6; ++n) {
        std::vector<RadicalReal> gens;
        long long l = 1;
        for (long long k = 1; k <= n; ++k) {
            gens.push_back(RadicalReal::from_power(Rational(2), Rational(1, k)));
            l = std::lcm(l, k);  // independent oracle for the expected order
        }
        const auto cls = MultSubgroup::generate(gens).classify();
        if (!expect(cls.is_cyclic() && *cls.lambda == rad({{2, Rational(-1, l)}}),
                    "lambda 2^(-1/lcm) at N=" + std::to_string(n)))
            return false;
    }
    const auto cli = run_cli("subgroup '2^(1/1)' '2^(1/2)' '2^(1/3)' '2^(1/4)'");
    return expect(cli.exit_code == 0 && cli.out.find("lambda = 2^(-1/12)") != std::string::npos,
                  "CLI lambda at N=4");
}

// ---- criterion 10: property suites ----

bool property_mass_conservation() {
    testing::Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Algebra> algebras;
        const std::size_t k = static_cast<std::size_t>(testing::pick(rng, 2, 3));
        for (std::size_t a = 0; a < k; ++a)
            algebras.push_back(
                testing::random_matrix_algebra(rng, "A" + std::to_string(a + 1)));
        const auto dec = classify(algebras);
        if (!expect(offspring_total(dec) + dec.continuous.mass == ExactScalar(1),
                    "mass leak at instance " + std::to_string(i)))
            return false;
        if (!expect(dec.continuous.mass.sign() > 0, "vanishing continuous mass")) return false;
        if (k == 2 && !expect(dec.dominant.empty() == dec.type_I.empty(),
                              "dominance must accompany offspring"))
            return false;
    }
    return true;
}

bool property_swap_symmetry() {
    testing::Rng rng(2025);
    auto key = [](const Decomposition& dec) {
        std::vector<std::string> heads;
        for (const auto& o : dec.type_I) {
            std::string h = std::to_string(o.size) + ":";
            for (const auto& w : o.weights) h += w.str() + ",";
            heads.push_back(std::move(h));
        }
        std::sort(heads.begin(), heads.end());
        return heads;
    };
    for (int i = 0; i < 1000; ++i) {
        std::vector<Algebra> ab = {testing::random_matrix_algebra(rng, "A1"),
                                   testing::random_matrix_algebra(rng, "A2")};
        std::vector<Algebra> ba = {ab[1], ab[0]};
        ba[0].name = "A1";
        ba[1].name = "A2";
        const auto dab = classify(ab);
        const auto dba = classify(ba);
        if (!expect(key(dab) == key(dba), "offspring multiset at instance " + std::to_string(i)))
            return false;
        if (!expect(dab.continuous == dba.continuous, "continuous part differs")) return false;
        auto swapped = dba.dominant;
        for (auto& [a, t] : swapped) a = 1 - a;
        std::sort(swapped.begin(), swapped.end());
        auto dom = dab.dominant;
        std::sort(dom.begin(), dom.end());
        if (!expect(dom == swapped, "dominant set differs")) return false;
    }
    return true;
}

bool property_family_matches_pair() {
    testing::Rng rng(2026);
    for (int i = 0; i < 1000; ++i) {
        const Algebra a = testing::random_matrix_algebra(rng, "A1", 1, 3);
        const Algebra b = testing::random_matrix_algebra(rng, "A2", 1, 3);
        const auto* s1 = a.matrix_at(0);
        const auto* s2 = b.matrix_at(0);
        const auto pair = mate_pair(*s1, *s2);
        const auto family = mate_family({*s1, *s2});
        if (!expect(pair.has_value() == family.has_value(),
                    "existence differs at instance " + std::to_string(i)))
            return false;
        if (pair && !expect(pair->weights == family->weights, "weights differ")) return false;
    }
    return true;
}

// exact boundary: with alpha* = 1 - 1/sum(1/beta) the mating is barren, and
// any rational bump of alpha produces strictly positive offspring
bool property_strict_boundary() {
    testing::Rng rng(2027);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t m = static_cast<std::size_t>(testing::pick(rng, 2, 4));
        const auto betas = testing::random_unit_weights(rng, m);
        MatrixSummand mm{m, {}, "m"};
        Rational recip(0);
        for (const auto& b : betas) {
            mm.weights.emplace_back(b);
            recip += b.inverse();
        }
        const Rational alpha_star = Rational(1) - recip.inverse();
        if (!expect(mate_pair(MatrixSummand{1, {ExactScalar(alpha_star)}, "c"}, mm) == std::nullopt,
                    "offspring at exact equality, instance " + std::to_string(i)))
            return false;
        const Rational bumped =
            alpha_star + (Rational(1) - alpha_star) / Rational(testing::pick(rng, 2, 9));
        const auto o = mate_pair(MatrixSummand{1, {ExactScalar(bumped)}, "c"}, mm);
        if (!expect(o.has_value(), "no offspring after bump")) return false;
        for (const auto& w : o->weights)
            if (!expect(w.sign() > 0, "vanishing offspring weight")) return false;
    }
    return true;
}

bool property_monotonicity() {
    testing::Rng rng(2028);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t m = static_cast<std::size_t>(testing::pick(rng, 1, 4));
        const auto betas = testing::random_unit_weights(rng, m);
        MatrixSummand mm{m, {}, "m"};
        for (const auto& b : betas) mm.weights.emplace_back(b);

        const Rational a1(testing::pick(rng, 1, 98), 100);
        const Rational a2 = a1 + Rational(testing::pick(rng, 1, 100 - a1.numerator().convert_to<long long>() - 1), 100);
        const auto o1 = mate_pair(MatrixSummand{1, {ExactScalar(a1)}, "c"}, mm);
        const auto o2 = mate_pair(MatrixSummand{1, {ExactScalar(a2)}, "c"}, mm);
        // the existence region is upward closed in alpha
        if (o1 && !expect(o2.has_value(), "existence not upward closed, instance " + std::to_string(i)))
            return false;
        if (o1 && o2)
            for (std::size_t j = 0; j < m; ++j)
                if (!expect(o1->weights[j] < o2->weights[j], "gamma not strictly increasing"))
                    return false;
    }
    return true;
}

bool criterion_properties() {
    return property_mass_conservation() && property_swap_symmetry() &&
           property_family_matches_pair() && property_strict_boundary() &&
           property_monotonicity();
}

// ---- criterion 11: subgroup oracle equivalence ----

bool criterion_subgroup_oracles() {
    testing::Rng rng(2029);
    for (int i = 0; i < 1000; ++i) {
        const auto gens = testing::random_generator_set(rng);
        const auto g = MultSubgroup::generate(gens);
        if (!expect(g.rank() == testing::rank_oracle(gens),
                    "rank disagrees at instance " + std::to_string(i)))
            return false;
        if (!expect(g.classify().is_cyclic() == (testing::rank_oracle(gens) == 1),
                    "cyclicity disagrees"))
            return false;
    }
    // brute-force cross-check of the cyclic intersection up to N = 16
    int agreements = 0;
    for (int i = 0; i < 2500; ++i) {
        const auto g = MultSubgroup::generate(testing::random_generator_set(rng, 3));
        const RadicalReal lambda = testing::random_radical(rng, 2, 4, 2);
        if (lambda.is_one()) continue;
        const auto fast = cyclic_intersection(lambda, g);
        std::optional<int> brute;
        RadicalReal power;
        for (int n = 1; n <= 16 && !brute; ++n) {
            power = power * lambda;
            if (g.contains(power)) brute = n;
        }
        if (fast.is_trivial() || *fast.power_index > 16) {
            if (!expect(!brute.has_value(), "brute force found a power the solver missed"))
                return false;
        } else {
            if (!expect(brute.has_value() && BigInt(*brute) == *fast.power_index,
                        "power index disagrees"))
                return false;
            ++agreements;
        }
    }
    return expect(agreements > 100, "too few nontrivial intersections sampled");
}

// ---- criterion 12: prescribed-Sd round trip ----

bool criterion_construct_roundtrip() {
    testing::Rng rng(2030);
    for (int i = 0; i < 50; ++i) {
        std::vector<Rational> gens;
        const std::size_t count = static_cast<std::size_t>(testing::pick(rng, 1, 4));
        for (std::size_t k = 0; k < count; ++k) {
            const long long q = testing::pick(rng, 2, 12);
            gens.emplace_back(testing::pick(rng, 1, q - 1), q);
        }
        const auto dec = classify_constructed(gens);
        if (!expect(dec.type_I.empty(), "unexpected type I part at instance " + std::to_string(i)))
            return false;
        if (!expect(dec.continuous.kind == ContinuousPart::Kind::TypeIII, "not type III"))
            return false;
        std::vector<RadicalReal> radicals;
        for (const auto& g : gens) radicals.push_back(RadicalReal::from_rational(g));
        if (!expect(dec.continuous.sd_group.same_subgroup(MultSubgroup::generate(radicals)),
                    "Sd lattice differs from <G>"))
            return false;
        if (!expect(dec.continuous.fullness.has_value(), "fullness not established")) return false;
    }
    return true;
}

// ---- criterion 13: parser round trip and determinism ----

bool criterion_roundtrip_determinism() {
    testing::Rng rng(2031);
    for (int i = 0; i < 500; ++i) {
        const ProblemDoc doc = testing::random_problem_doc(rng);
        const std::string rendered = render_problem(doc);
        auto parsed = parse_problem(rendered);
        if (!expect(parsed.ok(), "render produced unparseable text at instance " + std::to_string(i)))
            return false;
        if (!expect(*parsed.doc == doc, "round trip not identity")) return false;
        if (!expect(render_problem(*parsed.doc) == rendered, "render not stable")) return false;
    }
    for (const char* name : {"ex3a.fp", "ex3b.fp", "ex3c.fp", "ex3d.fp", "ex3e.fp", "ex3f.fp",
                             "ex4g.fp", "ex4h.fp"}) {
        for (const char* flags : {"", " --json", " --trace"}) {
            const auto first = run_cli("classify " + data_file(name) + flags);
            const auto second = run_cli("classify " + data_file(name) + flags);
            if (!expect(first.exit_code == 0, std::string(name) + flags + ": nonzero exit"))
                return false;
            if (!expect(!first.out.empty() && first.out == second.out,
                        std::string(name) + flags + ": bytes differ between runs"))
                return false;
        }
    }
    const auto bad = run_cli("classify " + data_file("bad_mass.fp"));
    return expect(bad.exit_code == 2, "invalid input must exit 2");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: fpcalc_acceptance <path-to-fpcalc-cli>\n";
        return 2;
    }
    g_cli = argv[1];

    criterion(1, "free product of C^2 against skew M2 (offspring, dominance, lambda = 1/2)",
              criterion_3a);
    criterion(2, "barren mating keeps the factor intact (lambda = 1/2)", criterion_3b);
    criterion(3, "skew M2 against skew M2 is a III_1 factor with Sd = <1/3,1/2>", criterion_3c);
    criterion(4, "quadratic weights give lambda = 2^(-1/2) with exact offspring", criterion_3d);
    criterion(5, "two-summand factors with scalar offspring C[1/4]", criterion_3e);
    criterion(6, "four-summand mating table, Sd = <2,9>, dominant C[40/41]", criterion_3f);
    criterion(7, "two geometric B(H) densities give lambda = 1/2", criterion_4g);
    criterion(8, "B(H) block plus scalar against skew M2: Sd = <2,3>", criterion_4h);
    criterion(9, "roots-of-2 truncations collapse to lambda = 2^(-1/lcm)", criterion_4k_truncation);
    criterion(10, "property suite: mass, symmetry, family/pair, boundary, monotonicity",
              criterion_properties);
    criterion(11, "subgroup rank/cyclicity vs Gaussian elimination; intersection vs brute force",
              criterion_subgroup_oracles);
    criterion(12, "prescribed-Sd construction round trip (50 random generator sets)",
              criterion_construct_roundtrip);
    criterion(13, "parser round trip on 500 documents; byte-identical CLI runs",
              criterion_roundtrip_determinism);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
