#include "sofic/k_invariants.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "sofic/presentations.hpp"

namespace sofic {

std::string to_string(duality_convention c) {
    return c == duality_convention::shifted ? "shifted" : "preserving";
}

std::optional<duality_convention> parse_convention(const std::string& name) {
    if (name == "shifted") return duality_convention::shifted;
    if (name == "preserving") return duality_convention::preserving;
    return std::nullopt;
}

ktheory_pair ruelle_ktheory(const int_matrix& m) {
    if (!m.is_square())
        throw domain_error("ruelle_ktheory requires a square matrix");
    if (!entrywise_nonnegative(m))
        throw domain_error("ruelle_ktheory requires nonnegative entries");
    auto im = identity_minus(m);
    ktheory_pair pair;
    pair.k0 = cokernel(im);
    pair.k1.free_rank = kernel_rank(im);
    return pair;
}

ktheory_pair stable_ktheory(const labeled_graph& g) {
    return ruelle_ktheory(adjacency_matrix(left_fischer_cover(g)));
}

ktheory_pair unstable_ktheory(const labeled_graph& g) {
    return ruelle_ktheory(transpose(adjacency_matrix(right_fischer_cover(g))));
}

std::size_t heteroclinic_rank(const labeled_graph& g, side s) {
    auto cover = s == side::stable ? left_fischer_cover(g) : right_fischer_cover(g);
    return rank_exact(adjacency_matrix(cover));
}

namespace {

std::string torsion_string(const fg_abelian_group& g) {
    std::string out = "[";
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
        if (i > 0) out += ", ";
        out += g.torsion[i].str();
    }
    return out + "]";
}

std::string factors_string(const std::vector<bigint>& factors) {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += ' ';
        out += factors[i].str();
    }
    return out;
}

std::vector<bigint> row_sums(const int_matrix& m) {
    std::vector<bigint> sums(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) sums[i] += m(i, j);
    return sums;
}

std::string int_list_string(const std::vector<bigint>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += ", ";
        out += xs[i].str();
    }
    return out + "]";
}

} // namespace

duality_report duality_check(const ktheory_pair& s, const ktheory_pair& u,
                             duality_convention convention) {
    duality_report report;
    report.convention = convention;
    report.stable = s;
    report.unstable = u;

    auto rank_cond = [&](const std::string& name, std::size_t a, std::size_t b) {
        report.conditions.push_back({name, a == b});
        report.narrative.push_back("  " + name + ": " + std::to_string(a) + " vs " +
                                   std::to_string(b) + (a == b ? " -- holds" : " -- FAILS"));
    };
    auto torsion_cond = [&](const std::string& name, const fg_abelian_group& a,
                            const fg_abelian_group& b) {
        bool holds = a.torsion == b.torsion;
        report.conditions.push_back({name, holds});
        report.narrative.push_back("  " + name + ": " + torsion_string(a) + " vs " +
                                   torsion_string(b) + (holds ? " -- holds" : " -- FAILS"));
    };

    report.narrative.push_back("stable K0 = " + s.k0.to_string() + ", K1 = " + s.k1.to_string());
    report.narrative.push_back("unstable K0 = " + u.k0.to_string() + ", K1 = " + u.k1.to_string());
    report.narrative.push_back("duality conditions (" + to_string(convention) + " convention):");
    if (convention == duality_convention::shifted) {
        rank_cond("rank(stable K0) = rank(unstable K1)", s.k0.free_rank, u.k1.free_rank);
        rank_cond("rank(stable K1) = rank(unstable K0)", s.k1.free_rank, u.k0.free_rank);
        torsion_cond("torsion(stable K0) = torsion(unstable K0)", s.k0, u.k0);
        torsion_cond("torsion(stable K1) = torsion(unstable K1)", s.k1, u.k1);
    } else {
        rank_cond("rank(stable K0) = rank(unstable K0)", s.k0.free_rank, u.k0.free_rank);
        rank_cond("rank(stable K1) = rank(unstable K1)", s.k1.free_rank, u.k1.free_rank);
        torsion_cond("torsion(stable K0) = torsion(unstable K1)", s.k0, u.k1);
        torsion_cond("torsion(stable K1) = torsion(unstable K0)", s.k1, u.k0);
    }
    report.obstruction_found =
        std::any_of(report.conditions.begin(), report.conditions.end(),
                    [](const duality_condition& c) { return !c.holds; });
    if (report.obstruction_found) {
        report.narrative.push_back(
            "K-theoretic obstruction found: a necessary duality condition fails");
    } else {
        report.narrative.push_back(
            "no K-theoretic obstruction found (necessary conditions only; "
            "a pass does not establish Poincare duality)");
    }
    return report;
}

namespace {

cover_summary summarize_cover(const labeled_graph& cover, bool transpose_for_k) {
    cover_summary summary{cover.vertex_count(), adjacency_matrix(cover), {}, 0};
    auto kmatrix = transpose_for_k ? transpose(summary.matrix) : summary.matrix;
    summary.snf_factors = smith_normal_form(identity_minus(kmatrix)).invariant_factors;
    summary.heteroclinic_rank = rank_exact(summary.matrix);
    return summary;
}

void narrate_side(duality_report& report, const std::string& heading,
                  const cover_summary& summary, const ktheory_pair& pair) {
    report.narrative.push_back(heading + " with " + std::to_string(summary.cover_size) +
                               (summary.cover_size == 1 ? " vertex" : " vertices"));
    report.narrative.push_back("  adjacency matrix:");
    for (std::size_t i = 0; i < summary.matrix.rows(); ++i) {
        std::string row = "    ";
        for (std::size_t j = 0; j < summary.matrix.cols(); ++j) {
            if (j > 0) row += ' ';
            row += summary.matrix(i, j).str();
        }
        report.narrative.push_back(row);
    }
    report.narrative.push_back("  SNF(I - M) invariant factors: " +
                               factors_string(summary.snf_factors));
    report.narrative.push_back("  K0 = " + pair.k0.to_string());
    report.narrative.push_back("  K1 = " + pair.k1.to_string());
    report.narrative.push_back("  heteroclinic rank: " +
                               std::to_string(summary.heteroclinic_rank));
}

} // namespace

bool permutation_similar(const int_matrix& a, const int_matrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) return false;
    const std::size_t n = a.rows();

    // Invariant prescreen: multisets of (row sum, col sum, diagonal).
    auto profile = [](const int_matrix& m) {
        std::vector<std::tuple<bigint, bigint, bigint>> prof;
        auto rs = row_sums(m), cs = row_sums(transpose(m));
        for (std::size_t i = 0; i < m.rows(); ++i) prof.emplace_back(rs[i], cs[i], m(i, i));
        std::sort(prof.begin(), prof.end());
        return prof;
    };
    if (profile(a) != profile(b)) return false;

    std::vector<std::size_t> image(n, n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
        if (i == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w]) continue;
            bool ok = true;
            for (std::size_t j = 0; j <= i && ok; ++j) {
                std::size_t pj = j == i ? w : image[j];
                ok = a(i, j) == b(w, pj) && a(j, i) == b(pj, w);
            }
            if (!ok) continue;
            image[i] = w;
            used[w] = true;
            if (assign(i + 1)) return true;
            used[w] = false;
            image[i] = n;
        }
        return false;
    };
    return assign(0);
}

duality_report make_duality_report(const labeled_graph& g, duality_convention convention,
                                   const std::optional<int_matrix>& compare_unstable) {
    auto left = left_fischer_cover(g);
    auto right = right_fischer_cover(g);

    auto stable_summary = summarize_cover(left, false);
    auto unstable_summary = summarize_cover(right, true);
    auto s = ruelle_ktheory(stable_summary.matrix);
    auto u = ruelle_ktheory(transpose(unstable_summary.matrix));

    auto report = duality_check(s, u, convention);
    std::vector<std::string> check_lines = std::move(report.narrative);
    report.narrative.clear();

    report.narrative.push_back("input graph: " + std::to_string(g.vertex_count()) +
                               " vertices, " + std::to_string(g.edge_count()) + " edges");
    report.narrative.push_back(std::string("almost finite type: ") +
                               (is_left_closing(right) ? "true" : "false"));
    narrate_side(report, "stable side: left Fischer cover", stable_summary, s);
    narrate_side(report, "unstable side: right Fischer cover", unstable_summary, u);
    report.narrative.push_back("stable rank: " +
                               std::to_string(stable_summary.heteroclinic_rank));
    report.narrative.push_back("unstable rank: " +
                               std::to_string(unstable_summary.heteroclinic_rank));
    report.narrative.push_back(
        std::string("heteroclinic rank comparison: ") +
        (stable_summary.heteroclinic_rank == unstable_summary.heteroclinic_rank
             ? "equal"
             : "not equal"));
    report.narrative.insert(report.narrative.end(), check_lines.begin(), check_lines.end());

    if (compare_unstable) {
        const auto& cmp = *compare_unstable;
        if (!cmp.is_square() || cmp.rows() != unstable_summary.matrix.rows()) {
            report.narrative.push_back(
                "comparison matrix skipped: size " + std::to_string(cmp.rows()) + "x" +
                std::to_string(cmp.cols()) + " does not match the right cover");
        } else if (permutation_similar(unstable_summary.matrix, cmp)) {
            report.narrative.push_back(
                "comparison matrix is permutation-similar to the computed right cover matrix");
        } else {
            report.warnings.push_back(
                "comparison matrix is not permutation-similar to the computed right "
                "Fischer cover adjacency matrix (cover row sums " +
                int_list_string(row_sums(unstable_summary.matrix)) +
                ", comparison row sums " + int_list_string(row_sums(cmp)) + ")");
            auto cmp_factors = smith_normal_form(identity_minus(cmp)).invariant_factors;
            report.warnings.push_back("SNF(I - comparison matrix) invariant factors: " +
                                      factors_string(cmp_factors));
            auto cmp_k = ruelle_ktheory(cmp);
            report.warnings.push_back(
                "K-theory from comparison matrix: K0 = " + cmp_k.k0.to_string() +
                ", K1 = " + cmp_k.k1.to_string() + "; cover-derived unstable K0 = " +
                u.k0.to_string() + ", K1 = " + u.k1.to_string());
        }
    }

    report.stable_cover = std::move(stable_summary);
    report.unstable_cover = std::move(unstable_summary);
    return report;
}

std::string report_to_text(const duality_report& report) {
    std::ostringstream out;
    for (const auto& line : report.narrative) out << line << '\n';
    if (!report.warnings.empty()) {
        out << "warnings:\n";
        for (const auto& w : report.warnings) out << "  - " << w << '\n';
    }
    return out.str();
}

namespace {

nlohmann::json json_int(const bigint& x) {
    if (x >= std::numeric_limits<long long>::min() &&
        x <= std::numeric_limits<long long>::max())
        return x.convert_to<long long>();
    return x.str();
}

nlohmann::json group_json(const fg_abelian_group& g) {
    nlohmann::json j;
    j["free_rank"] = g.free_rank;
    auto torsion = nlohmann::json::array();
    for (const auto& t : g.torsion) torsion.push_back(json_int(t));
    j["torsion"] = std::move(torsion);
    return j;
}

nlohmann::json matrix_json(const int_matrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    auto entries = nlohmann::json::array();
    for (const auto& e : m.entries()) entries.push_back(json_int(e));
    j["entries"] = std::move(entries);
    return j;
}

nlohmann::json side_json(const cover_summary& summary, const ktheory_pair& pair) {
    nlohmann::json j;
    j["cover_size"] = summary.cover_size;
    j["matrix"] = matrix_json(summary.matrix);
    auto snf = nlohmann::json::array();
    for (const auto& f : summary.snf_factors) snf.push_back(json_int(f));
    j["snf"] = std::move(snf);
    j["k0"] = group_json(pair.k0);
    j["k1"] = group_json(pair.k1);
    j["rank"] = summary.heteroclinic_rank;
    return j;
}

} // namespace

std::string group_to_json(const fg_abelian_group& g) { return group_json(g).dump(); }

std::string report_to_json(const duality_report& report, const std::string& shift_name) {
    if (!report.stable_cover || !report.unstable_cover)
        throw domain_error("JSON report requires a graph-derived duality report");
    nlohmann::json j;
    j["shift"] = shift_name;
    j["stable"] = side_json(*report.stable_cover, report.stable);
    j["unstable"] = side_json(*report.unstable_cover, report.unstable);
    nlohmann::json duality;
    duality["convention"] = to_string(report.convention);
    auto conditions = nlohmann::json::array();
    for (const auto& c : report.conditions)
        conditions.push_back({{"name", c.name}, {"holds", c.holds}});
    duality["conditions"] = std::move(conditions);
    duality["obstruction_found"] = report.obstruction_found;
    j["duality"] = std::move(duality);
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

} // namespace sofic
