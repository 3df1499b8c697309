#include "sofic/int_linalg.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sofic {

int_matrix::int_matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0)
        throw domain_error("matrix dimensions must be positive");
}

int_matrix::int_matrix(std::size_t rows, std::size_t cols, std::vector<bigint> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0)
        throw domain_error("matrix dimensions must be positive");
    if (entries_.size() != rows * cols)
        throw domain_error("matrix entry count does not match dimensions");
}

int_matrix::int_matrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0)
        throw domain_error("matrix dimensions must be positive");
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw domain_error("ragged initializer for matrix");
        for (long long x : row) entries_.emplace_back(x);
    }
}

int_matrix int_matrix::identity(std::size_t n) {
    int_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

int_matrix mat_mul(const int_matrix& a, const int_matrix& b) {
    if (a.cols() != b.rows())
        throw domain_error("matrix product dimension mismatch: " +
                           std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    int_matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const bigint& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

int_matrix mat_pow(const int_matrix& m, unsigned k) {
    if (!m.is_square())
        throw domain_error("matrix power requires a square matrix");
    int_matrix result = int_matrix::identity(m.rows());
    int_matrix base = m;
    while (k > 0) {
        if (k & 1u) result = mat_mul(result, base);
        k >>= 1u;
        if (k > 0) base = mat_mul(base, base);
    }
    return result;
}

int_matrix mat_add(const int_matrix& a, const int_matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw domain_error("matrix sum dimension mismatch");
    int_matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) + b(i, j);
    return c;
}

int_matrix mat_sub(const int_matrix& a, const int_matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw domain_error("matrix difference dimension mismatch");
    int_matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) - b(i, j);
    return c;
}

int_matrix transpose(const int_matrix& m) {
    int_matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = m(i, j);
    return t;
}

bool entrywise_positive(const int_matrix& m) {
    return std::all_of(m.entries().begin(), m.entries().end(),
                       [](const bigint& x) { return x > 0; });
}

bool entrywise_nonnegative(const int_matrix& m) {
    return std::all_of(m.entries().begin(), m.entries().end(),
                       [](const bigint& x) { return x >= 0; });
}

int_matrix identity_minus(const int_matrix& m) {
    if (!m.is_square())
        throw domain_error("identity_minus requires a square matrix");
    return mat_sub(int_matrix::identity(m.rows()), m);
}

namespace {

// Bareiss fraction-free elimination with full pivoting. Returns the rank;
// when det is non-null and the matrix is square, stores the determinant.
std::size_t bareiss(const int_matrix& m, bigint* det) {
    int_matrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    const std::size_t dim = std::min(rows, cols);
    bigint prev = 1;
    int sign = 1;
    std::size_t t = 0;
    for (; t < dim; ++t) {
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows && !found; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                    break;
                }
        if (!found) break;
        if (pi != t) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(pi, j));
            sign = -sign;
        }
        if (pj != t) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));
            sign = -sign;
        }
        for (std::size_t i = t + 1; i < rows; ++i) {
            for (std::size_t j = t + 1; j < cols; ++j)
                a(i, j) = (a(t, t) * a(i, j) - a(i, t) * a(t, j)) / prev;
            a(i, t) = 0;
        }
        prev = a(t, t);
    }
    if (det != nullptr) {
        if (t < dim || rows != cols)
            *det = 0;
        else
            *det = sign > 0 ? prev : bigint(-prev);
    }
    return t;
}

} // namespace

std::size_t rank_exact(const int_matrix& m) { return bareiss(m, nullptr); }

bigint determinant(const int_matrix& m) {
    if (!m.is_square())
        throw domain_error("determinant requires a square matrix");
    bigint det;
    bareiss(m, &det);
    return det;
}

namespace {

bigint abs_big(const bigint& x) { return x < 0 ? bigint(-x) : x; }

// Advances idx to the next k-combination of {0, ..., n-1}.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - (k - i)) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// gcd of the absolute values of all k x k minors; 0 when all vanish.
bigint determinantal_divisor(const int_matrix& m, std::size_t k) {
    std::vector<std::size_t> ri(k), ci(k);
    std::iota(ri.begin(), ri.end(), 0);
    bigint g = 0;
    while (true) {
        std::iota(ci.begin(), ci.end(), 0);
        while (true) {
            int_matrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    sub(i, j) = m(ri[i], ci[j]);
            g = boost::multiprecision::gcd(g, abs_big(determinant(sub)));
            if (!next_combination(ci, m.cols())) break;
        }
        if (!next_combination(ri, m.rows())) break;
    }
    return g;
}

class snf_worker {
public:
    explicit snf_worker(const int_matrix& m)
        : d_(m), u_(int_matrix::identity(m.rows())), v_(int_matrix::identity(m.cols())) {}

    smith_decomposition run(const int_matrix& m) {
        const std::size_t dim = std::min(d_.rows(), d_.cols());
        for (std::size_t t = 0; t < dim; ++t) {
            if (!reduce_pivot(t)) break;
            if (d_(t, t) < 0) negate_row(t);
        }
        smith_decomposition result{u_, d_, v_, {}};
        result.invariant_factors.reserve(dim);
        for (std::size_t t = 0; t < dim; ++t)
            result.invariant_factors.push_back(d_(t, t));
        verify(m, result);
        return result;
    }

private:
    int_matrix d_, u_, v_;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < d_.cols(); ++c) std::swap(d_(i, c), d_(j, c));
        for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < d_.rows(); ++r) std::swap(d_(r, i), d_(r, j));
        for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    }
    // row dst += q * row src
    void add_row(std::size_t dst, std::size_t src, const bigint& q) {
        for (std::size_t c = 0; c < d_.cols(); ++c) d_(dst, c) += q * d_(src, c);
        for (std::size_t c = 0; c < u_.cols(); ++c) u_(dst, c) += q * u_(src, c);
    }
    void add_col(std::size_t dst, std::size_t src, const bigint& q) {
        for (std::size_t r = 0; r < d_.rows(); ++r) d_(r, dst) += q * d_(r, src);
        for (std::size_t r = 0; r < v_.rows(); ++r) v_(r, dst) += q * v_(r, src);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < d_.cols(); ++c) d_(i, c) = -d_(i, c);
        for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    }

    // Moves a minimal-|nonzero| entry of the trailing submatrix to (t, t).
    // Returns false when the submatrix is all zero.
    bool select_pivot(std::size_t t) {
        std::size_t pi = 0, pj = 0;
        bigint best = 0;
        for (std::size_t i = t; i < d_.rows(); ++i)
            for (std::size_t j = t; j < d_.cols(); ++j) {
                if (d_(i, j) == 0) continue;
                bigint a = abs_big(d_(i, j));
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) return false;
        swap_rows(t, pi);
        swap_cols(t, pj);
        return true;
    }

    // Repeats pivot selection and row/column clearing until the pivot
    // divides everything it must. The pivot's absolute value strictly
    // decreases across retries, so this terminates.
    bool reduce_pivot(std::size_t t) {
        while (true) {
            if (!select_pivot(t)) return false;
            bool clean = true;
            for (std::size_t i = t + 1; i < d_.rows(); ++i) {
                if (d_(i, t) == 0) continue;
                bigint q = d_(i, t) / d_(t, t);
                if (q != 0) add_row(i, t, -q);
                if (d_(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < d_.cols(); ++j) {
                if (d_(t, j) == 0) continue;
                bigint q = d_(t, j) / d_(t, t);
                if (q != 0) add_col(j, t, -q);
                if (d_(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility fix: pull a violating row into the pivot row.
            bool fixed_up = false;
            for (std::size_t i = t + 1; i < d_.rows() && !fixed_up; ++i)
                for (std::size_t j = t + 1; j < d_.cols(); ++j)
                    if (d_(i, j) % d_(t, t) != 0) {
                        add_row(t, i, 1);
                        fixed_up = true;
                        break;
                    }
            if (!fixed_up) return true;
        }
    }

    void verify(const int_matrix& m, const smith_decomposition& s) const {
        if (mat_mul(mat_mul(s.u, m), s.v) != s.d)
            throw std::logic_error("smith_normal_form: U*M*V != D");
        if (abs_big(determinant(s.u)) != 1 || abs_big(determinant(s.v)) != 1)
            throw std::logic_error("smith_normal_form: transform not unimodular");
        const auto& f = s.invariant_factors;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0)
                throw std::logic_error("smith_normal_form: negative invariant factor");
            if (i + 1 < f.size()) {
                if (f[i] == 0 && f[i + 1] != 0)
                    throw std::logic_error("smith_normal_form: zeros not trailing");
                if (f[i] != 0 && f[i + 1] % f[i] != 0)
                    throw std::logic_error("smith_normal_form: divisibility chain broken");
            }
        }
        for (std::size_t i = 0; i < s.d.rows(); ++i)
            for (std::size_t j = 0; j < s.d.cols(); ++j)
                if (i != j && s.d(i, j) != 0)
                    throw std::logic_error("smith_normal_form: D not diagonal");
        // Determinantal-divisor cross-check: d1...dk = gcd of k x k minors.
        std::size_t kmax = std::min<std::size_t>(4, f.size());
        bigint prod = 1;
        for (std::size_t k = 1; k <= kmax; ++k) {
            prod *= f[k - 1];
            if (determinantal_divisor(m, k) != prod)
                throw std::logic_error("smith_normal_form: determinantal divisor mismatch");
        }
    }
};

} // namespace

smith_decomposition smith_normal_form(const int_matrix& m) {
    snf_worker worker(m);
    return worker.run(m);
}

std::string fg_abelian_group::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    auto sep = [&]() {
        if (!first) out << " + ";
        first = false;
    };
    if (free_rank == 1) {
        sep();
        out << "Z";
    } else if (free_rank > 1) {
        sep();
        out << "Z^" << free_rank;
    }
    for (const auto& t : torsion) {
        sep();
        out << "Z/" << t << "Z";
    }
    return out.str();
}

fg_abelian_group cokernel(const int_matrix& m) {
    if (!m.is_square())
        throw domain_error("cokernel requires a square matrix");
    auto snf = smith_normal_form(m);
    fg_abelian_group g;
    for (const auto& f : snf.invariant_factors) {
        if (f == 0)
            ++g.free_rank;
        else if (f > 1)
            g.torsion.push_back(f);
    }
    return g;
}

std::size_t kernel_rank(const int_matrix& m) {
    if (!m.is_square())
        throw domain_error("kernel_rank requires a square matrix");
    return m.rows() - rank_exact(m);
}

namespace {

bool is_integer_token(const std::string& tok) {
    std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (start == tok.size()) return false;
    return std::all_of(tok.begin() + start, tok.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

int_matrix matrix_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw parse_error("matrix JSON must have fields rows, cols, entries");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw parse_error("matrix JSON: rows and cols must be nonnegative integers");
    std::size_t rows = j["rows"].get<std::size_t>();
    std::size_t cols = j["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0)
        throw parse_error("matrix JSON: dimensions must be positive");
    if (!j["entries"].is_array() || j["entries"].size() != rows * cols)
        throw parse_error("matrix JSON: entries must be an array of rows*cols integers");
    std::vector<bigint> entries;
    entries.reserve(rows * cols);
    for (const auto& e : j["entries"]) {
        if (e.is_number_integer()) {
            entries.emplace_back(e.get<long long>());
        } else if (e.is_string() && is_integer_token(e.get<std::string>())) {
            entries.emplace_back(bigint(e.get<std::string>()));
        } else {
            throw parse_error("matrix JSON: entries must be integers");
        }
    }
    return int_matrix(rows, cols, std::move(entries));
}

} // namespace

int_matrix parse_matrix(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw parse_error("empty matrix input");
    if (text[first] == '{') return matrix_from_json_text(text);

    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.size() < 2)
        throw parse_error("matrix input must start with \"rows cols\"");
    for (std::size_t i = 0; i < 2; ++i)
        if (!is_integer_token(tokens[i]) || tokens[i][0] == '-')
            throw parse_error("matrix dimensions must be nonnegative integers, got \"" +
                              tokens[i] + "\"");
    std::size_t rows = 0, cols = 0;
    try {
        rows = std::stoull(tokens[0]);
        cols = std::stoull(tokens[1]);
    } catch (const std::exception&) {
        throw parse_error("matrix dimensions out of range");
    }
    if (rows == 0 || cols == 0)
        throw parse_error("matrix dimensions must be positive");
    if (tokens.size() != 2 + rows * cols)
        throw parse_error("expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(tokens.size() - 2));
    std::vector<bigint> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (!is_integer_token(tokens[i]))
            throw parse_error("bad matrix entry \"" + tokens[i] + "\"");
        entries.emplace_back(bigint(tokens[i]));
    }
    return int_matrix(rows, cols, std::move(entries));
}

std::string serialize_matrix(const int_matrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ' ';
            out << m(i, j);
        }
        out << '\n';
    }
    return out.str();
}

std::string matrix_to_json(const int_matrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    auto entries = nlohmann::json::array();
    for (const auto& e : m.entries()) {
        if (e >= std::numeric_limits<long long>::min() &&
            e <= std::numeric_limits<long long>::max())
            entries.push_back(e.convert_to<long long>());
        else
            entries.push_back(e.str());
    }
    j["entries"] = std::move(entries);
    return j.dump();
}

} // namespace sofic
