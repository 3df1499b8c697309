#ifndef SOFIC_K_INVARIANTS_HPP
#define SOFIC_K_INVARIANTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sofic/int_linalg.hpp"
#include "sofic/labeled_graph.hpp"

namespace sofic {

// K-theory of a Ruelle algebra computed from a cover matrix M:
// K0 = coker(I - M), K1 = ker(I - M). K1 is always free and its rank
// equals K0's free rank.
struct ktheory_pair {
    fg_abelian_group k0;
    fg_abelian_group k1;

    bool operator==(const ktheory_pair& other) const = default;
};

enum class side { stable, unstable };

// Degree bookkeeping for the duality pairing. The shifted convention
// pairs ranks across degrees and torsion within a degree; it is the one
// under which a shift of finite type checks out against its own
// transpose. The preserving convention swaps those roles.
enum class duality_convention { shifted, preserving };

std::string to_string(duality_convention c);
std::optional<duality_convention> parse_convention(const std::string& name);

struct duality_condition {
    std::string name;
    bool holds = false;
};

// Data behind one side of a report when it was derived from a graph.
struct cover_summary {
    std::size_t cover_size = 0;
    int_matrix matrix;
    std::vector<bigint> snf_factors; // of I - matrix (transposed on the unstable side)
    std::size_t heteroclinic_rank = 0;
};

// Results of the necessary-condition duality check. A pass means "no
// K-theoretic obstruction found", never "the algebras are dual".
struct duality_report {
    duality_convention convention = duality_convention::shifted;
    std::vector<duality_condition> conditions; // always four
    bool obstruction_found = false;
    std::vector<std::string> narrative;
    std::vector<std::string> warnings;

    ktheory_pair stable;
    ktheory_pair unstable;
    std::optional<cover_summary> stable_cover;
    std::optional<cover_summary> unstable_cover;
};

// K0 = coker(I - M), K1 = free of rank ker(I - M); M square, nonnegative.
ktheory_pair ruelle_ktheory(const int_matrix& m);

// Stable side: adjacency matrix of the LEFT Fischer cover.
ktheory_pair stable_ktheory(const labeled_graph& g);

// Unstable side: transpose of the adjacency matrix of the RIGHT Fischer
// cover (every reported invariant is transpose-invariant; the transpose
// is kept for fidelity to the formula).
ktheory_pair unstable_ktheory(const labeled_graph& g);

// Exact rank of the chosen cover's adjacency matrix.
std::size_t heteroclinic_rank(const labeled_graph& g, side s);

// Necessary conditions only; see duality_report::obstruction_found.
duality_report duality_check(const ktheory_pair& s, const ktheory_pair& u,
                             duality_convention convention);

// End-to-end report for a graph: both covers, both matrices, Smith forms,
// K-theory pairs, heteroclinic ranks, and the condition check.
// compare_unstable, when given, is checked against the computed right
// cover's adjacency matrix (same dimensions required); disagreements are
// reported as warnings together with that matrix's own invariants.
duality_report make_duality_report(const labeled_graph& g,
                                   duality_convention convention = duality_convention::shifted,
                                   const std::optional<int_matrix>& compare_unstable = std::nullopt);

// True when some simultaneous row/column permutation carries a onto b.
bool permutation_similar(const int_matrix& a, const int_matrix& b);

std::string report_to_text(const duality_report& report);
// Schema: { shift, stable: {cover_size, matrix, snf, k0, k1, rank},
// unstable: {...}, duality: {convention, conditions, obstruction_found},
// warnings: [...] }. Requires a graph-derived report.
std::string report_to_json(const duality_report& report, const std::string& shift_name);

std::string group_to_json(const fg_abelian_group& g);

} // namespace sofic

#endif
