#include "kneadlab/system.hpp"

#include <algorithm>
#include <stdexcept>

namespace kneadlab {

System::System(std::vector<Branch> branches, bool degenerate, std::string name)
    : branches_(std::move(branches)), degenerate_(degenerate), name_(std::move(name)) {
    if (branches_.empty()) throw std::invalid_argument("System: need at least one branch");

    for (size_t i = 0; i < branches_.size(); ++i) {
        const Interval& d = branches_[i].domain();
        if (!d.has_interior() && !degenerate_)
            throw std::invalid_argument("System: branch " + std::to_string(i + 1) +
                                        " has a degenerate domain (set the degenerate flag to allow)");
        turning_.push_back(d.lo);
        turning_.push_back(d.hi);
    }
    std::sort(turning_.begin(), turning_.end());
    turning_.erase(std::unique(turning_.begin(), turning_.end()), turning_.end());

    for (size_t i = 0; i < branches_.size(); ++i)
        for (size_t j = i + 1; j < branches_.size(); ++j) {
            OptInterval common = intersect(branches_[i].domain(), branches_[j].domain());
            if (common && common->has_interior())
                warnings_.push_back("branch domains " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " have overlapping interiors");
        }
}

int System::turning_index(const Rational& x) const {
    auto it = std::lower_bound(turning_.begin(), turning_.end(), x);
    if (it != turning_.end() && *it == x) return static_cast<int>(it - turning_.begin()) + 1;
    return 0;
}

int System::cell_of(const Rational& x) const {
    if (turning_index(x) != 0)
        throw std::logic_error("System::cell_of: " + x.str() + " is a turning point, not interior to a cell");
    // Number of turning points strictly below x equals the cell index.
    auto it = std::upper_bound(turning_.begin(), turning_.end(), x);
    return static_cast<int>(it - turning_.begin());
}

Address System::address(const SignedPoint& p) const {
    int i = turning_index(p.value);
    if (i == 0) return Address{Address::Kind::cell, cell_of(p.value)};
    switch (p.side) {
        case Side::exact: return Address{Address::Kind::turning, i};
        case Side::plus: return Address{Address::Kind::cell, i};      // right neighbor P_i
        case Side::minus: return Address{Address::Kind::cell, i - 1};  // left neighbor P_{i-1}
    }
    throw std::logic_error("System::address: invalid side");
}

bool System::cell_in_domain(int cell, int branch) const {
    if (cell <= 0 || cell >= cell_count() - 1) return false;  // unbounded outer cells
    const Interval& d = branches_.at(static_cast<size_t>(branch)).domain();
    return d.lo <= turning(cell) && turning(cell + 1) <= d.hi;
}

}  // namespace kneadlab
