// Acceptance suite: runs every criterion at exact (zero-tolerance)
// arithmetic and prints one pass/fail line per criterion.

#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sofic/k_invariants.hpp"
#include "sofic/labeled_graph.hpp"
#include "sofic/presentations.hpp"
#include "test_util.hpp"

using namespace sofic;
using namespace sofic::testutil;

namespace {

int failures = 0;
int current = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
}

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    current = number;
    notes.clear();
    bool threw = false;
    std::string thrown;
    try {
        body();
    } catch (const std::exception& e) {
        threw = true;
        thrown = e.what();
    }
    bool ok = notes.empty() && !threw;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title
              << '\n';
    if (threw) std::cout << "       exception: " << thrown << '\n';
    for (const auto& n : notes) std::cout << "       " << n << '\n';
    if (!ok) ++failures;
}

bigint abs_big(const bigint& x) { return x < 0 ? bigint(-x) : x; }

std::vector<bigint> big_vec(std::initializer_list<long long> xs) {
    std::vector<bigint> out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

std::multiset<bigint> row_sum_multiset(const int_matrix& m) {
    std::multiset<bigint> sums;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bigint s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
        sums.insert(s);
    }
    return sums;
}

void verify_certificate(const int_matrix& m) {
    auto snf = smith_normal_form(m);
    expect(mat_mul(mat_mul(snf.u, m), snf.v) == snf.d, "U*M*V != D");
    expect(abs_big(oracles::cofactor_determinant(snf.u)) == 1, "|det U| != 1");
    expect(abs_big(oracles::cofactor_determinant(snf.v)) == 1, "|det V| != 1");
    const auto& f = snf.invariant_factors;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        expect(f[i] >= 0, "negative invariant factor");
        if (f[i] == 0)
            expect(f[i + 1] == 0, "zeros not trailing");
        else
            expect(f[i + 1] % f[i] == 0, "divisibility chain broken");
    }
    if (m.is_square()) {
        bigint det = determinant(m);
        if (det != 0) {
            bigint prod = 1;
            for (const auto& x : f) prod *= x;
            expect(prod == abs_big(det), "product of factors != |det|");
        }
    }
}

} // namespace

int main() {
    auto fig1 = fixture_graph("fig1.graph");
    auto fig2 = fixture_graph("fig2.graph");
    auto even = fixture_graph("even.graph");
    auto a = fixture_matrix("A.mat");
    auto b = fixture_matrix("B.mat");
    auto i_minus_a = fixture_matrix("I_minus_A.mat");
    auto i_minus_b = fixture_matrix("I_minus_B.mat");

    criterion(1, "adjacency of the 5-vertex fixture in order (u,w,v,x,y) equals the printed A",
              [&] {
                  expect(adjacency_matrix(fig1, {"u", "w", "v", "x", "y"}) == a,
                         "matrix mismatch");
              });

    criterion(2, "ranks: rank(A)=5, rank(B)=4, heteroclinic ranks 5 vs 4", [&] {
        expect(rank_exact(a) == 5, "rank(A) != 5");
        expect(rank_exact(b) == 4, "rank(B) != 4");
        expect(heteroclinic_rank(fig1, side::stable) == 5, "stable rank != 5");
        expect(heteroclinic_rank(fig1, side::unstable) == 4, "unstable rank != 4");
        expect(heteroclinic_rank(fig1, side::stable) !=
                   heteroclinic_rank(fig1, side::unstable),
               "ranks unexpectedly equal");
    });

    criterion(3, "stable side: SNF(I-A) = (1,1,1,1,5) and K-theory (Z/5Z, 0)", [&] {
        expect(smith_normal_form(i_minus_a).invariant_factors == big_vec({1, 1, 1, 1, 5}),
               "SNF(I-A) factors wrong");
        auto s = stable_ktheory(fig1);
        expect(s.k0 == fg_abelian_group{0, {bigint(5)}}, "stable K0 != Z/5Z");
        expect(s.k1.is_trivial(), "stable K1 != 0");
    });

    criterion(4, "cover reproduction: right cover of fig1 ~ fig2, left cover of fig2 ~ fig1",
              [&] {
                  expect(labeled_isomorphic(right_fischer_cover(fig1), fig2).has_value(),
                         "right cover not isomorphic to fig2");
                  expect(labeled_isomorphic(left_fischer_cover(fig2), fig1).has_value(),
                         "left cover not isomorphic to fig1");
              });

    criterion(5, "mixing: A^3 and B^3 entrywise positive, both fixtures mixing", [&] {
        expect(entrywise_positive(mat_pow(a, 3)), "A^3 not positive");
        expect(entrywise_positive(mat_pow(b, 3)), "B^3 not positive");
        expect(is_mixing(fig1), "fig1 not mixing");
        expect(is_mixing(fig2), "fig2 not mixing");
    });

    criterion(6, "printed-B computations: |det(I-B)|=4 twice over, SNF(I-B) from the oracle, "
                 "discrepancy warned",
              [&] {
                  expect(abs_big(determinant(i_minus_b)) == 4, "Bareiss det != 4");
                  expect(abs_big(oracles::cofactor_determinant(i_minus_b)) == 4,
                         "cofactor det != 4");
                  auto oracle = oracles::minor_gcd_invariant_factors(i_minus_b);
                  expect(oracle == big_vec({1, 1, 1, 4}), "minor-gcd oracle changed");
                  auto factors = smith_normal_form(i_minus_b).invariant_factors;
                  expect(factors == oracle, "SNF(I-B) differs from the oracle");
                  expect(factors != big_vec({1, 1, 1, 2}),
                         "SNF(I-B) must not be the inconsistent diag(1,1,1,2)");
                  // documented as a warning, not silently corrected
                  auto report = make_duality_report(fig1, duality_convention::shifted, b);
                  bool warned = false;
                  for (const auto& w : report.warnings)
                      if (w.find("SNF(I - comparison matrix) invariant factors: 1 1 1 4") !=
                          std::string::npos)
                          warned = true;
                  expect(warned, "missing SNF discrepancy warning");
              });

    criterion(7, "duality obstruction between the printed matrices via torsion condition",
              [&] {
                  auto check = duality_check(ruelle_ktheory(a), ruelle_ktheory(b),
                                             duality_convention::shifted);
                  expect(check.obstruction_found, "no obstruction found");
                  expect(check.conditions.size() == 4, "condition count");
                  expect(check.conditions[0].holds, "rank condition (i) should hold");
                  expect(check.conditions[1].holds, "rank condition (ii) should hold");
                  expect(!check.conditions[2].holds,
                         "torsion condition (iii) should fail (Z/5Z vs Z/4Z)");
                  expect(check.conditions[3].holds, "torsion condition (iv) should hold");
              });

    criterion(8, "figure-derived pipeline: unstable K-groups from the fig2 matrix, "
                 "similarity warning present",
              [&] {
                  auto report = make_duality_report(fig1, duality_convention::shifted, b);
                  auto expected = ruelle_ktheory(transpose(adjacency_matrix(fig2)));
                  expect(report.unstable.k0 == expected.k0, "unstable K0 mismatch");
                  expect(report.unstable.k1 == expected.k1, "unstable K1 mismatch");
                  bool warned = false;
                  for (const auto& w : report.warnings)
                      if (w.find("not permutation-similar") != std::string::npos) warned = true;
                  expect(warned, "missing permutation-similarity warning");
                  expect(row_sum_multiset(adjacency_matrix(fig2)) ==
                             std::multiset<bigint>({bigint(4), bigint(4), bigint(2), bigint(1)}),
                         "fig2 row-sum multiset not {4,4,2,1}");
                  expect(row_sum_multiset(b) ==
                             std::multiset<bigint>({bigint(3), bigint(2), bigint(4), bigint(1)}),
                         "B row-sum multiset not {3,2,4,1}");
                  expect(!permutation_similar(adjacency_matrix(fig2), b),
                         "fig2 matrix unexpectedly similar to B");
              });

    criterion(9, "sft self-consistency: 200 random matrices vs their transposes, 0 failures",
              [&] {
                  std::mt19937 rng(271828);
                  for (int trial = 0; trial < 200; ++trial) {
                      auto m = random_irreducible_nonneg(rng);
                      auto check = duality_check(ruelle_ktheory(m),
                                                 ruelle_ktheory(transpose(m)),
                                                 duality_convention::shifted);
                      if (check.obstruction_found) {
                          expect(false, "obstruction at trial " + std::to_string(trial));
                          return;
                      }
                  }
              });

    criterion(10, "almost finite type: even shift yes, counterexample shift no", [&] {
        expect(is_almost_finite_type(even), "even shift must be AFT");
        expect(!is_almost_finite_type(fig1), "counterexample shift must not be AFT");
    });

    criterion(11, "periodic points: fig1 = fig2 for n<=6, even = its recomputed cover, "
                  "edge shifts match the trace formula",
              [&] {
                  for (unsigned n = 1; n <= 6; ++n)
                      expect(count_periodic_points(fig1, n) == count_periodic_points(fig2, n),
                             "fig1 vs fig2 mismatch at n=" + std::to_string(n));
                  auto even_cover = right_fischer_cover(even);
                  for (unsigned n = 1; n <= 6; ++n)
                      expect(count_periodic_points(even, n) ==
                                 count_periodic_points(even_cover, n),
                             "even vs cover mismatch at n=" + std::to_string(n));
                  // SFT edge-shift fixtures: distinct labels
                  auto sft2 = labeled_graph(
                      {"p", "q"}, {{"p", "q", "e1"}, {"q", "p", "e2"}, {"p", "p", "e3"}});
                  auto sft3 = labeled_graph({"r", "s", "t"},
                                            {{"r", "s", "x1"},
                                             {"s", "t", "x2"},
                                             {"t", "r", "x3"},
                                             {"r", "r", "x4"},
                                             {"s", "r", "x5"}});
                  for (const auto& g : {sft2, sft3}) {
                      auto m = adjacency_matrix(g);
                      for (unsigned n = 1; n <= 6; ++n)
                          expect(bigint(count_periodic_points(g, n)) ==
                                     sft_periodic_count(m, n),
                                 "edge-shift trace mismatch at n=" + std::to_string(n));
                  }
              });

    criterion(12, "certificate suite: every Smith decomposition in the corpus checks out",
              [&] {
                  verify_certificate(i_minus_a);
                  verify_certificate(i_minus_b);
                  verify_certificate(identity_minus(adjacency_matrix(fig2)));
                  verify_certificate(identity_minus(transpose(adjacency_matrix(fig2))));
                  verify_certificate(int_matrix::identity(5));
                  verify_certificate(int_matrix(3, 4));
                  std::mt19937 rng(14142);
                  for (int trial = 0; trial < 100; ++trial)
                      verify_certificate(random_matrix(rng));
              });

    if (failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
