#include "kneadlab/kneading.hpp"

#include <stdexcept>

namespace kneadlab {

namespace {

int side_int(Side s) { return s == Side::plus ? 1 : (s == Side::minus ? -1 : 0); }

bool sided_member(const Interval& iv, const Rational& v, int side) {
    if (!iv.contains(v)) return false;
    if (side > 0) return v != iv.hi;
    if (side < 0) return v != iv.lo;
    return true;
}

/// Add the address vector of (v, side) to degree k of `out`, scaled by sig.
/// Exact side at a turning point contributes the half-sum of the two
/// neighboring cells.
void add_address(const System& sys, VectorSeries& out, int k, const Rational& v, int side, int sig) {
    int i = sys.turning_index(v);
    Rational s(sig);
    if (i == 0) {
        out.at(k, sys.cell_of(v)) += s;
    } else if (side > 0) {
        out.at(k, i) += s;
    } else if (side < 0) {
        out.at(k, i - 1) += s;
    } else {
        Rational half = s / Rational(2);
        out.at(k, i - 1) += half;
        out.at(k, i) += half;
    }
}

}  // namespace

VectorSeries theta(const System& sys, const SignedPoint& p, int M, long long node_budget) {
    if (M < 0) throw std::invalid_argument("theta: negative degree cap");
    VectorSeries out(sys.cell_count(), M);

    struct Node {
        Rational v;
        int side;
        int sig;
        OptInterval img;  // image interval of the word's domain; nullopt = whole line (root)
    };

    std::vector<Node> frontier{Node{p.value, side_int(p.side), 1, std::nullopt}};
    add_address(sys, out, 0, p.value, side_int(p.side), 1);

    long long used = 1;
    for (int k = 1; k <= M && !frontier.empty(); ++k) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (int a = 0; a < sys.branch_count(); ++a) {
                const Branch& b = sys.branch(a);
                if (node.side != 0) {
                    if (!sided_member(b.domain(), node.v, node.side)) continue;
                    Node child{b.eval(node.v), node.side * b.orientation(), node.sig * b.orientation(),
                               std::nullopt};
                    add_address(sys, out, k, child.v, child.side, child.sig);
                    next.push_back(std::move(child));
                } else {
                    if (!b.domain().contains(node.v)) continue;
                    OptInterval clip = node.img ? intersect(*node.img, b.domain()) : OptInterval(b.domain());
                    OptInterval img = b.image_of(*clip);
                    if (!img->has_interior()) continue;  // word domain degenerate: not counted, cannot recover
                    Node child{b.eval(node.v), 0, node.sig * b.orientation(), img};
                    add_address(sys, out, k, child.v, 0, child.sig);
                    next.push_back(std::move(child));
                }
            }
        }
        used += static_cast<long long>(next.size());
        if (used > node_budget) throw BudgetExceeded(static_cast<size_t>(k) - 1, node_budget);
        frontier = std::move(next);
    }
    return out;
}

std::vector<Series> cell_polys(const System& sys, int M) {
    std::vector<Series> out;
    out.reserve(static_cast<size_t>(sys.cell_count()));
    for (int j = 0; j < sys.cell_count(); ++j) {
        Series e = Series::constant(Rational(1), M);
        if (M >= 1)
            for (int a = 0; a < sys.branch_count(); ++a)
                if (sys.cell_in_domain(j, a)) e.coeff(1) -= Rational(sys.branch(a).orientation());
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<VectorSeries> kneading_increments(const System& sys, int M, long long node_budget) {
    std::vector<VectorSeries> out;
    out.reserve(static_cast<size_t>(sys.turning_count()));
    for (int i = 1; i <= sys.turning_count(); ++i) {
        VectorSeries plus = theta(sys, SignedPoint{sys.turning(i), Side::plus}, M, node_budget);
        VectorSeries minus = theta(sys, SignedPoint{sys.turning(i), Side::minus}, M, node_budget);
        out.push_back(plus - minus);
    }
    return out;
}

KneadingMatrix kneading_matrix(const System& sys, int M, long long node_budget) {
    KneadingMatrix km;
    km.M = M;
    auto incs = kneading_increments(sys, M, node_budget);
    km.n.reserve(incs.size());
    for (const VectorSeries& inc : incs) {
        std::vector<Series> row;
        row.reserve(static_cast<size_t>(sys.cell_count()));
        for (int j = 0; j < sys.cell_count(); ++j) row.push_back(inc.component(j));
        km.n.push_back(std::move(row));
    }
    km.e = cell_polys(sys, M);
    return km;
}

Series kneading_determinant(const KneadingMatrix& km, std::optional<int> delete_column) {
    int rows = static_cast<int>(km.n.size());
    int cols = rows + 1;
    if (rows == 0) throw std::invalid_argument("kneading_determinant: empty matrix");
    if (static_cast<int>(km.n[0].size()) != cols)
        throw std::invalid_argument("kneading_determinant: matrix must have one more column than rows");

    auto one_column = [&](int j) -> Series {
        std::vector<std::vector<Series>> minor;
        minor.reserve(static_cast<size_t>(rows));
        for (int r = 0; r < rows; ++r) {
            std::vector<Series> row;
            row.reserve(static_cast<size_t>(rows));
            for (int c = 0; c < cols; ++c)
                if (c != j) row.push_back(km.n[static_cast<size_t>(r)][static_cast<size_t>(c)]);
            minor.push_back(std::move(row));
        }
        Series d = series_det(minor) * km.e[static_cast<size_t>(j)].inverse();
        return (j % 2 == 0) ? d : -d;
    };

    if (delete_column) {
        int j = *delete_column;
        if (j < 0 || j >= cols) throw std::invalid_argument("kneading_determinant: column out of range");
        if (km.e[static_cast<size_t>(j)].coeff(0).is_zero())
            throw std::domain_error("kneading_determinant: cell polynomial not invertible for this column");
        return one_column(j);
    }

    std::optional<Series> result;
    for (int j = 0; j < cols; ++j) {
        if (km.e[static_cast<size_t>(j)].coeff(0).is_zero()) continue;
        Series d = one_column(j);
        if (!result)
            result = std::move(d);
        else if (*result != d)
            throw std::logic_error("kneading_determinant: column choice changed the result (column " +
                                   std::to_string(j) + ")");
    }
    if (!result) throw std::domain_error("kneading_determinant: no normalizable column");
    return *result;
}

Series kneading_determinant(const System& sys, int M, std::optional<int> delete_column,
                            long long node_budget) {
    return kneading_determinant(kneading_matrix(sys, M, node_budget), delete_column);
}

std::optional<PreTurningWitness> find_preturning(const System& sys, const Rational& x, int depth,
                                                 long long node_budget) {
    if (int i = sys.turning_index(x); i != 0) return PreTurningWitness{{}, i};

    struct Node {
        Rational v;
        Word w;
        OptInterval img;
    };
    std::vector<Node> frontier{Node{x, {}, std::nullopt}};
    long long used = 1;
    for (int k = 1; k <= depth && !frontier.empty(); ++k) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (int a = 0; a < sys.branch_count(); ++a) {
                const Branch& b = sys.branch(a);
                if (!b.domain().contains(node.v)) continue;
                OptInterval clip = node.img ? intersect(*node.img, b.domain()) : OptInterval(b.domain());
                OptInterval img = b.image_of(*clip);
                if (!img->has_interior()) continue;  // outside the interior-admissible semigroup
                Node child{b.eval(node.v), node.w, img};
                child.w.push_back(Letter{a + 1, false});
                if (int i = sys.turning_index(child.v); i != 0) return PreTurningWitness{child.w, i};
                next.push_back(std::move(child));
            }
        }
        used += static_cast<long long>(next.size());
        if (used > node_budget) throw BudgetExceeded(static_cast<size_t>(k) - 1, node_budget);
        frontier = std::move(next);
    }
    return std::nullopt;
}

Series unity_identity_residual(const System& sys, const Rational& x, int M, long long node_budget) {
    if (auto w = find_preturning(sys, x, M, node_budget))
        throw std::invalid_argument("unity_identity_residual: point " + x.str() +
                                    " is pre-turning (word " + word_str(w->word) + " hits turning point " +
                                    std::to_string(w->turning) + "); the identity does not apply");
    VectorSeries th = theta(sys, SignedPoint{x, Side::exact}, M, node_budget);
    std::vector<Series> e = cell_polys(sys, M);
    Series acc(M);
    for (int j = 0; j < sys.cell_count(); ++j) acc += th.component(j) * e[static_cast<size_t>(j)];
    acc -= Series::constant(Rational(1), M);
    return acc;
}

std::vector<Series> column_relation_residual(const KneadingMatrix& km) {
    std::vector<Series> out;
    size_t rows = km.n.size();
    out.reserve(rows);
    for (size_t r = 0; r < rows; ++r) {
        Series acc(km.M);
        for (size_t j = 0; j < km.n[r].size(); ++j) acc += km.n[r][j] * km.e[j];
        out.push_back(std::move(acc));
    }
    return out;
}

GammaCounts pre_turning_pairs(const System& sys, const OptInterval& J, int depth, bool collect,
                              long long node_budget) {
    if (depth < 0) throw std::invalid_argument("pre_turning_pairs: negative depth");
    GammaCounts out;
    out.depth = depth;
    out.pairs.resize(static_cast<size_t>(sys.turning_count()));

    long long used = 0;
    for (int i = 1; i <= sys.turning_count(); ++i) {
        Series gamma(depth);
        const Rational& c = sys.turning(i);
        bool root_in = !J || J->contains(c);
        if (root_in) {
            gamma.coeff(0) = Rational(1);
            if (collect) out.pairs[static_cast<size_t>(i) - 1].push_back(PreTurningPair{{}, c});
        }

        struct Node {
            Rational v;
            OptInterval dom;  // domain of the forward word; nullopt = whole line (root)
            Word w;           // forward word, grown by prepending
        };
        std::vector<Node> frontier{Node{c, std::nullopt, {}}};
        ++used;

        for (int k = 1; k <= depth && !frontier.empty(); ++k) {
            std::vector<Node> next;
            for (const Node& node : frontier) {
                for (int a = 0; a < sys.branch_count(); ++a) {
                    const Branch& b = sys.branch(a);
                    if (!b.image().contains(node.v)) continue;
                    Rational x = b.invert(node.v);
                    if (sys.turning_index(x) != 0) continue;  // a shorter prefix would hit this turning point
                    OptInterval dom = node.dom ? b.preimage_of(*node.dom) : OptInterval(b.domain());
                    if (!dom || !dom->has_interior()) continue;  // word domain degenerate
                    Word w;
                    w.reserve(node.w.size() + 1);
                    w.push_back(Letter{a + 1, false});
                    w.insert(w.end(), node.w.begin(), node.w.end());
                    if (!J || J->contains(x)) {
                        gamma.coeff(k) += Rational(1);
                        if (collect) out.pairs[static_cast<size_t>(i) - 1].push_back(PreTurningPair{w, x});
                    }
                    next.push_back(Node{std::move(x), dom, std::move(w)});
                }
            }
            used += static_cast<long long>(next.size());
            if (used > node_budget) throw BudgetExceeded(static_cast<size_t>(k) - 1, node_budget);
            frontier = std::move(next);
        }
        out.gamma.push_back(std::move(gamma));
    }
    return out;
}

VectorSeries jump_identity_residual(const System& sys, const Interval& J, int M, long long node_budget) {
    VectorSeries lhs = theta(sys, SignedPoint{J.hi, Side::plus}, M, node_budget) -
                       theta(sys, SignedPoint{J.lo, Side::minus}, M, node_budget);
    auto incs = kneading_increments(sys, M, node_budget);
    GammaCounts gc = pre_turning_pairs(sys, OptInterval(J), M, false, node_budget);
    VectorSeries rhs(sys.cell_count(), M);
    for (int i = 0; i < sys.turning_count(); ++i)
        rhs += incs[static_cast<size_t>(i)].times(gc.gamma[static_cast<size_t>(i)]);
    return lhs - rhs;
}

}  // namespace kneadlab
