#include "kneadlab/words.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace kneadlab {

std::string word_str(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += (w[i].inverse ? 'A' : 'a');
        out += std::to_string(w[i].index);
    }
    return out;
}

Word parse_word(const std::string& text, int branch_count) {
    if (text == "e") return {};
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, '.')) {
        if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'A'))
            throw std::invalid_argument("parse_word: bad letter \"" + tok + "\" in \"" + text + "\"");
        int idx;
        try {
            size_t pos = 0;
            idx = std::stoi(tok.substr(1), &pos);
            if (pos != tok.size() - 1) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_word: bad letter \"" + tok + "\" in \"" + text + "\"");
        }
        if (idx < 1 || idx > branch_count)
            throw std::invalid_argument("parse_word: letter index out of range in \"" + text + "\"");
        out.push_back(Letter{idx, tok[0] == 'A'});
    }
    if (out.empty()) throw std::invalid_argument("parse_word: empty word must be written \"e\"");
    return out;
}

bool is_reduced(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].index == w[i + 1].index && w[i].inverse != w[i + 1].inverse) return false;
    return true;
}

Word reduced(Word w) {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) {
        if (!out.empty() && out.back().index == l.index && out.back().inverse != l.inverse)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

bool in_semigroup(const Word& w) {
    return std::none_of(w.begin(), w.end(), [](const Letter& l) { return l.inverse; });
}

bool in_inverse_semigroup(const Word& w) {
    return std::all_of(w.begin(), w.end(), [](const Letter& l) { return l.inverse; });
}

int sigma(const System& sys, const Word& w) {
    int s = 1;
    for (const Letter& l : w) s *= sys.branch(l.index - 1).orientation();
    return s;
}

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

/// Natural domain of a single letter: the branch domain for a forward
/// letter, the branch image for an inverse letter.
Interval letter_domain(const System& sys, const Letter& l) {
    const Branch& b = sys.branch(l.index - 1);
    return l.inverse ? b.image() : b.domain();
}

/// Pullback of a target interval through one letter:
/// Dom(f_{l.w}) = Dom(f_l) ∩ f_l^{-1}(target) for the composite word l.w.
OptInterval letter_pullback(const System& sys, const Letter& l, const Interval& target) {
    const Branch& b = sys.branch(l.index - 1);
    return l.inverse ? b.image_of(target) : b.preimage_of(target);
}

}  // namespace

DomainResult word_domain(const System& sys, const Word& w) {
    DomainResult out;
    if (w.empty()) {
        out.full_line = true;
        return out;
    }
    Interval d = letter_domain(sys, w.back());
    for (size_t i = w.size() - 1; i-- > 0;) {
        OptInterval next = letter_pullback(sys, w[i], d);
        if (!next) return out;  // nowhere defined
        d = *next;
    }
    out.domain = d;
    return out;
}

namespace {

/// One-sided membership of a signed value in a closed interval: the point
/// needs room on its own side, so a right-sided point may not sit on the
/// right endpoint (and symmetrically). side == 0 is plain closed membership.
bool sided_member(const Interval& iv, const Rational& v, int side) {
    if (!iv.contains(v)) return false;
    if (side > 0) return v != iv.hi;
    if (side < 0) return v != iv.lo;
    return true;
}

int side_int(Side s) { return s == Side::plus ? 1 : (s == Side::minus ? -1 : 0); }
Side int_side(int s) { return s > 0 ? Side::plus : (s < 0 ? Side::minus : Side::exact); }

}  // namespace

PointStep apply_word(const System& sys, const Word& w, SignedPoint start) {
    Rational v = start.value;
    int side = side_int(start.side);
    for (size_t i = 0; i < w.size(); ++i) {
        const Branch& b = sys.branch(w[i].index - 1);
        const Interval& home = w[i].inverse ? b.image() : b.domain();
        if (!sided_member(home, v, side)) return PointStep{false, i, SignedPoint{v, int_side(side)}};
        v = w[i].inverse ? b.invert(v) : b.eval(v);
        side *= b.orientation();
    }
    return PointStep{true, w.size(), SignedPoint{v, int_side(side)}};
}

namespace {

struct EnumNode {
    Word word;
    Interval domain;
    Interval img;
};

/// Inverse of the composite map along `word`, applied to a point of its
/// image (walk the letters backwards, undoing each).
Rational pull_point(const System& sys, const Word& word, Rational y) {
    for (size_t i = word.size(); i-- > 0;) {
        const Branch& b = sys.branch(word[i].index - 1);
        y = word[i].inverse ? b.eval(y) : b.invert(y);
    }
    return y;
}

std::vector<EnumNode> expand_range(const System& sys, const std::vector<EnumNode>& frontier, size_t begin,
                                   size_t end) {
    std::vector<EnumNode> out;
    for (size_t idx = begin; idx < end; ++idx) {
        const EnumNode& node = frontier[idx];
        for (int a = 1; a <= sys.branch_count(); ++a) {
            const Branch& b = sys.branch(a - 1);
            OptInterval clip = intersect(node.img, b.domain());
            if (!clip || !clip->has_interior()) continue;
            OptInterval img = b.image_of(*clip);
            // Domain of the extended word: pull the clipped window back
            // through the parent word.
            Rational u = pull_point(sys, node.word, clip->lo);
            Rational v = pull_point(sys, node.word, clip->hi);
            Word w = node.word;
            w.push_back(Letter{a, false});
            out.push_back(EnumNode{std::move(w), Interval(min(u, v), max(u, v)), *img});
        }
    }
    return out;
}

std::vector<EnumNode> expand_level(const System& sys, const std::vector<EnumNode>& frontier, int threads) {
    if (threads <= 1 || frontier.size() < 256) return expand_range(sys, frontier, 0, frontier.size());
    size_t chunk = (frontier.size() + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
    std::vector<std::future<std::vector<EnumNode>>> parts;
    for (size_t b = 0; b < frontier.size(); b += chunk) {
        size_t e = std::min(frontier.size(), b + chunk);
        parts.push_back(std::async(std::launch::async,
                                   [&sys, &frontier, b, e]() { return expand_range(sys, frontier, b, e); }));
    }
    std::vector<EnumNode> out;
    for (auto& f : parts) {
        auto part = f.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

}  // namespace

LevelEnumeration enumerate_admissible(const System& sys, int m, long long node_budget, int threads) {
    if (m < 0) throw std::invalid_argument("enumerate_admissible: negative depth");
    LevelEnumeration out;
    if (m == 0) return out;

    std::vector<EnumNode> frontier;
    for (int a = 1; a <= sys.branch_count(); ++a) {
        const Branch& b = sys.branch(a - 1);
        if (!b.domain().has_interior()) continue;
        frontier.push_back(EnumNode{Word{Letter{a, false}}, b.domain(), b.image()});
    }

    long long used = 0;
    for (int level = 1; level <= m; ++level) {
        if (level > 1) frontier = expand_level(sys, frontier, threads);
        used += static_cast<long long>(frontier.size());
        if (used > node_budget) throw BudgetExceeded(out.levels.size(), node_budget);
        std::vector<WordDomain> stored;
        stored.reserve(frontier.size());
        for (const EnumNode& n : frontier) stored.push_back(WordDomain{n.word, n.domain});
        out.counts.push_back(static_cast<long long>(frontier.size()));
        out.levels.push_back(std::move(stored));
        if (frontier.empty()) {
            // Nothing can extend an empty level; pad with empty levels.
            while (static_cast<int>(out.levels.size()) < m) {
                out.levels.emplace_back();
                out.counts.push_back(0);
            }
            break;
        }
    }
    return out;
}

std::vector<std::vector<PointWord>> admissible_for_point(const System& sys, const SignedPoint& p, int m,
                                                         long long node_budget) {
    if (m < 0) throw std::invalid_argument("admissible_for_point: negative depth");

    struct Node {
        Word word;
        Rational value;
        int side;
        OptInterval img;  // image interval of the word's domain; nullopt at the root (whole line)
        bool interior;
    };

    std::vector<std::vector<PointWord>> out;
    std::vector<Node> frontier{Node{{}, p.value, side_int(p.side), std::nullopt, true}};
    out.push_back({PointWord{{}, p, true}});

    long long used = 1;
    for (int level = 1; level <= m && !frontier.empty(); ++level) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (int a = 1; a <= sys.branch_count(); ++a) {
                const Branch& b = sys.branch(a - 1);
                if (!sided_member(b.domain(), node.value, node.side)) continue;
                Node child;
                child.word = node.word;
                child.word.push_back(Letter{a, false});
                child.value = b.eval(node.value);
                child.side = node.side * b.orientation();
                if (node.side == 0) {
                    OptInterval clip =
                        node.img ? intersect(*node.img, b.domain()) : OptInterval(b.domain());
                    child.img = b.image_of(*clip);
                    child.interior = child.img->interior_contains(child.value);
                } else {
                    child.interior = true;  // one-sided admissibility implies one-sided interior room
                }
                next.push_back(std::move(child));
            }
        }
        used += static_cast<long long>(next.size());
        if (used > node_budget) throw BudgetExceeded(out.size(), node_budget);
        std::vector<PointWord> stored;
        stored.reserve(next.size());
        for (const Node& n : next)
            stored.push_back(PointWord{n.word, SignedPoint{n.value, int_side(n.side)}, n.interior});
        out.push_back(std::move(stored));
        frontier = std::move(next);
    }
    while (static_cast<int>(out.size()) <= m) out.emplace_back();
    return out;
}

}  // namespace kneadlab
