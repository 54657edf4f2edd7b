#ifndef CONGAMES_LP_HPP
#define CONGAMES_LP_HPP

#include <sstream>
#include <string>
#include <vector>

#include "congames/numeric.hpp"

namespace congames {

// Dense LP over nonnegative variables:
//   maximize c.x  subject to  a.x <= b  /  a.x == b,  x >= 0.
template <class Num>
struct LinearProgram {
    struct Row {
        std::vector<Num> coeffs;
        Num rhs{};
        bool equality = false;
        std::string name;
    };

    std::vector<std::string> var_names;
    std::vector<Num> objective;
    std::vector<Row> rows;

    int num_vars() const { return static_cast<int>(objective.size()); }

    void add_row(std::vector<Num> coeffs, Num rhs, bool equality, std::string name = "") {
        rows.push_back({std::move(coeffs), std::move(rhs), equality, std::move(name)});
    }

    // Plain-text export: objective, then one row per constraint.
    std::string export_text() const {
        std::ostringstream out;
        auto render = [&](const std::vector<Num>& coeffs) {
            for (int j = 0; j < num_vars(); ++j) {
                if (j) out << " ";
                out << to_string_any(coeffs[static_cast<std::size_t>(j)]) << "*"
                    << var_names[static_cast<std::size_t>(j)];
            }
        };
        out << "maximize ";
        render(objective);
        out << "\n";
        for (const auto& row : rows) {
            if (!row.name.empty()) out << row.name << ": ";
            render(row.coeffs);
            out << (row.equality ? " == " : " <= ") << to_string_any(row.rhs) << "\n";
        }
        for (int j = 0; j < num_vars(); ++j)
            out << var_names[static_cast<std::size_t>(j)] << " >= 0\n";
        return out.str();
    }

  private:
    static std::string to_string_any(const Rational& r) { return congames::to_string(r); }
    static std::string to_string_any(double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class Num>
struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    Num value{};
    std::vector<Num> x;
};

namespace detail {

template <class Num>
bool lp_is_zero(const Num& x) {
    if constexpr (NumTraits<Num>::is_exact)
        return NumTraits<Num>::is_zero(x);
    else
        return std::fabs(x) <= 1e-9;
}

template <class Num>
bool lp_neg(const Num& x) {
    if constexpr (NumTraits<Num>::is_exact)
        return x < 0;
    else
        return x < -1e-9;
}

}  // namespace detail

// Two-phase primal simplex on a dense tableau with Bland's anti-cycling rule.
// Exact arithmetic when Num is Rational; 1e-9 pivot tolerances for double.
template <class Num>
LpSolution<Num> solve_lp(const LinearProgram<Num>& lp) {
    using detail::lp_is_zero;
    using detail::lp_neg;

    const int n = lp.num_vars();
    const int m = static_cast<int>(lp.rows.size());

    // Tableau columns: structural vars, slacks (<= rows), artificials.
    int num_slacks = 0;
    for (const auto& row : lp.rows)
        if (!row.equality) ++num_slacks;

    std::vector<std::vector<Num>> a(static_cast<std::size_t>(m));
    std::vector<Num> rhs(static_cast<std::size_t>(m));
    std::vector<int> basis(static_cast<std::size_t>(m), -1);

    int total = n + num_slacks + m;  // artificials allocated lazily: at most one per row
    for (auto& r : a) r.assign(static_cast<std::size_t>(total), NumTraits<Num>::zero());

    int slack_at = n;
    int art_at = n + num_slacks;
    std::vector<int> artificials;
    for (int i = 0; i < m; ++i) {
        const auto& row = lp.rows[static_cast<std::size_t>(i)];
        auto ui = static_cast<std::size_t>(i);
        for (int j = 0; j < n; ++j) a[ui][static_cast<std::size_t>(j)] = row.coeffs[static_cast<std::size_t>(j)];
        rhs[ui] = row.rhs;
        if (lp_neg(rhs[ui])) {  // normalize to rhs >= 0
            for (auto& v : a[ui]) v = -v;
            rhs[ui] = -rhs[ui];
        }
        if (!row.equality) {
            bool flipped = lp_neg(row.rhs);
            a[ui][static_cast<std::size_t>(slack_at)] = flipped ? Num(-1) : Num(1);
            if (!flipped) basis[ui] = slack_at;  // slack basic only if coefficient +1
            ++slack_at;
        }
        if (basis[ui] == -1) {
            a[ui][static_cast<std::size_t>(art_at)] = Num(1);
            basis[ui] = art_at;
            artificials.push_back(art_at);
            ++art_at;
        }
    }
    total = art_at;
    for (auto& r : a) r.resize(static_cast<std::size_t>(total));

    auto pivot = [&](int row, int col) {
        auto ur = static_cast<std::size_t>(row);
        Num p = a[ur][static_cast<std::size_t>(col)];
        for (auto& v : a[ur]) v = v / p;
        rhs[ur] = rhs[ur] / p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            auto ui = static_cast<std::size_t>(i);
            Num f = a[ui][static_cast<std::size_t>(col)];
            if (lp_is_zero(f)) continue;
            for (int j = 0; j < total; ++j)
                a[ui][static_cast<std::size_t>(j)] -= f * a[ur][static_cast<std::size_t>(j)];
            rhs[ui] -= f * rhs[ur];
        }
        basis[ur] = col;
    };

    // Maximizes obj over the current tableau. Returns false when unbounded.
    auto run_simplex = [&](const std::vector<Num>& obj, int allowed_cols) -> bool {
        while (true) {
            // reduced costs: r_j = obj_j - sum_i obj_{basis_i} a_{i,j}
            std::vector<Num> dual(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                dual[static_cast<std::size_t>(i)] = obj[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
            int entering = -1;
            for (int j = 0; j < allowed_cols; ++j) {
                Num r = obj[static_cast<std::size_t>(j)];
                for (int i = 0; i < m; ++i)
                    r -= dual[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if constexpr (NumTraits<Num>::is_exact) {
                    if (r > 0) { entering = j; break; }  // Bland: lowest index
                } else {
                    if (r > 1e-9) { entering = j; break; }
                }
            }
            if (entering == -1) return true;
            int leaving = -1;
            Num best_ratio{};
            for (int i = 0; i < m; ++i) {
                auto ui = static_cast<std::size_t>(i);
                const Num& coef = a[ui][static_cast<std::size_t>(entering)];
                bool positive = NumTraits<Num>::is_exact ? (coef > 0) : (to_double(coef) > 1e-9);
                if (!positive) continue;
                Num ratio = rhs[ui] / coef;
                if (leaving == -1 || ratio < best_ratio ||
                    (!(best_ratio < ratio) && basis[ui] < basis[static_cast<std::size_t>(leaving)])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == -1) return false;  // unbounded
            pivot(leaving, entering);
        }
    };

    LpSolution<Num> solution;

    if (!artificials.empty()) {
        std::vector<Num> phase1(static_cast<std::size_t>(total), NumTraits<Num>::zero());
        for (int c : artificials) phase1[static_cast<std::size_t>(c)] = Num(-1);
        run_simplex(phase1, total);
        Num infeas = NumTraits<Num>::zero();
        for (int i = 0; i < m; ++i)
            if (basis[static_cast<std::size_t>(i)] >= n + num_slacks)
                infeas += rhs[static_cast<std::size_t>(i)];
        if (!lp_is_zero(infeas)) {
            solution.status = LpStatus::Infeasible;
            return solution;
        }
        // Drive any degenerate artificial out of the basis.
        for (int i = 0; i < m; ++i) {
            if (basis[static_cast<std::size_t>(i)] < n + num_slacks) continue;
            for (int j = 0; j < n + num_slacks; ++j) {
                if (!lp_is_zero(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<Num> phase2(static_cast<std::size_t>(total), NumTraits<Num>::zero());
    for (int j = 0; j < n; ++j) phase2[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
    for (int c : artificials) phase2[static_cast<std::size_t>(c)] = Num(-1000000);  // keep artificials out
    if (!run_simplex(phase2, n + num_slacks)) {
        solution.status = LpStatus::Unbounded;
        return solution;
    }

    solution.x.assign(static_cast<std::size_t>(n), NumTraits<Num>::zero());
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < n)
            solution.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = rhs[static_cast<std::size_t>(i)];
    solution.value = NumTraits<Num>::zero();
    for (int j = 0; j < n; ++j)
        solution.value += lp.objective[static_cast<std::size_t>(j)] * solution.x[static_cast<std::size_t>(j)];
    return solution;
}

}  // namespace congames

#endif  // CONGAMES_LP_HPP
