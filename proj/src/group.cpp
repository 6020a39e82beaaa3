#include "icosa/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace icosa {

const char* to_string(InvolutionClass c) {
    switch (c) {
        case InvolutionClass::A: return "a";
        case InvolutionClass::D: return "d";
        case InvolutionClass::AD: return "ad";
    }
    return "?";
}

AutGroup::AutGroup() {
    a_ = Perm::parse_cycle_string("(1,2)(3,4)(5,7)(6,8)(9,11)(10,12)");
    b_ = Perm::parse_cycle_string("(1,10)(3,9)(2,12)(4,11)(5,6)(7,8)");
    c_ = Perm::parse_cycle_string("(1,7)(2,3)(4,11)(5,12)(6,8)(9,10)");
    d_ = Perm::parse_cycle_string("(1,12)(3,9)(2,10)(4,11)(5,7)(6,8)");

    elements_ = generate({a_, b_, c_, d_});
    if (elements_.size() != 120)
        throw std::logic_error("AutGroup: closure of {a,b,c,d} has size " +
                               std::to_string(elements_.size()) + ", expected 120");

    // A5 factor = unique index-2 subgroup = closure of {a*b, a*c, ...agenerated
    // by products of pairs of generators of the A5 part}. The three involutions
    // a, b, c generate A5 directly.
    std::vector<Perm> a5 = generate({a_, b_, c_});
    if (a5.size() != 60) throw std::logic_error("AutGroup: A5 part has wrong order");
    std::set<Perm> a5set(a5.begin(), a5.end());
    a5_flag_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
        a5_flag_[i] = a5set.count(elements_[i]) > 0;

    if (!d_.is_involution()) throw std::logic_error("AutGroup: d is not an involution");
    for (const Perm& g : elements_)
        if (!(g * d_ == d_ * g)) throw std::logic_error("AutGroup: d is not central");
}

std::vector<Perm> AutGroup::generate(const std::vector<Perm>& gens) const {
    std::set<Perm> closed;
    std::vector<Perm> frontier;
    closed.insert(Perm());
    frontier.push_back(Perm());
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& p : frontier) {
            for (const Perm& g : gens) {
                Perm q = p * g;
                if (closed.insert(q).second) next.push_back(q);
            }
        }
        frontier = std::move(next);
        if (closed.size() > 121) throw std::logic_error("AutGroup::generate: runaway closure");
    }
    return std::vector<Perm>(closed.begin(), closed.end());
}

bool AutGroup::contains(const Perm& p) const { return index_of(p) >= 0; }

int AutGroup::index_of(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it != elements_.end() && *it == p) return static_cast<int>(it - elements_.begin());
    return -1;
}

std::vector<Perm> AutGroup::center() const {
    std::vector<Perm> z;
    for (const Perm& g : elements_) {
        bool central = true;
        for (const Perm& h : elements_)
            if (!(g * h == h * g)) { central = false; break; }
        if (central) z.push_back(g);
    }
    return z;
}

bool AutGroup::in_a5(const Perm& p) const {
    int i = index_of(p);
    if (i < 0) throw std::invalid_argument("AutGroup::in_a5: not an element");
    return a5_flag_[static_cast<std::size_t>(i)];
}

std::vector<Perm> AutGroup::involutions() const {
    std::vector<Perm> out;
    for (const Perm& g : elements_)
        if (g.is_involution()) out.push_back(g);
    return out;
}

InvolutionClass AutGroup::involution_class(const Perm& x) const {
    if (!x.is_involution()) throw std::invalid_argument("involution_class: not an involution");
    if (x == d_) return InvolutionClass::D;
    return in_a5(x) ? InvolutionClass::A : InvolutionClass::AD;
}

std::vector<Perm> AutGroup::centralizer(const Perm& x) const {
    std::vector<Perm> out;
    for (const Perm& g : elements_)
        if (g * x == x * g) out.push_back(g);
    return out;
}

std::vector<Perm> AutGroup::normalizer(const std::vector<Perm>& subgroup) const {
    std::set<Perm> sub(subgroup.begin(), subgroup.end());
    std::vector<Perm> out;
    for (const Perm& g : elements_) {
        Perm gi = g.inverse();
        bool ok = true;
        for (const Perm& u : subgroup)
            if (!sub.count(g * u * gi)) { ok = false; break; }
        if (ok) out.push_back(g);
    }
    return out;
}

std::vector<Perm> AutGroup::conjugacy_class(const Perm& x) const {
    std::set<Perm> cls;
    for (const Perm& g : elements_) cls.insert(g * x * g.inverse());
    return std::vector<Perm>(cls.begin(), cls.end());
}

std::vector<Perm> AutGroup::generating_set(const std::vector<Perm>& subgroup) const {
    std::vector<Perm> sorted = subgroup;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Perm> gens;
    std::set<Perm> span;
    span.insert(Perm());
    for (const Perm& g : sorted) {
        if (span.count(g)) continue;
        gens.push_back(g);
        auto closure = generate(gens);
        span = std::set<Perm>(closure.begin(), closure.end());
        if (span.size() == sorted.size()) break;
    }
    return gens;
}

std::string AutGroup::subgroup_name(const std::vector<Perm>& subgroup) const {
    std::size_t n = subgroup.size();
    bool abelian = true;
    for (const Perm& g : subgroup) {
        for (const Perm& h : subgroup)
            if (!(g * h == h * g)) { abelian = false; break; }
        if (!abelian) break;
    }
    std::map<int, int> orders;
    for (const Perm& g : subgroup) orders[g.order()]++;

    switch (n) {
        case 1: return "1";
        case 2: return "C2";
        case 3: return "C3";
        case 4: return orders.count(4) ? "C4" : "C2^2";
        case 5: return "C5";
        case 6: return abelian ? "C6" : "D6";
        case 8: return abelian ? "C2^3" : "G8";
        case 10: return abelian ? "C10" : "D10";
        case 12:
            if (orders[3] == 8) return "A4";
            if (orders[6] == 2 && orders[2] == 7) return "C2xD6";
            return abelian ? "C12?" : "G12";
        case 20: return "C2xD10";
        case 60: return "A5";
        case 120: return "C2xA5";
        default: return "G" + std::to_string(n);
    }
}

bool AutGroup::contains_d(const std::vector<Perm>& subgroup) const {
    for (const Perm& g : subgroup)
        if (g == d_) return true;
    return false;
}

bool AutGroup::subset_of_a5(const std::vector<Perm>& subgroup) const {
    for (const Perm& g : subgroup)
        if (!in_a5(g)) return false;
    return true;
}

std::string AutGroup::dump_table() const {
    std::string s;
    for (const Perm& g : elements_) {
        s += g.cycle_string();
        s += '\n';
    }
    return s;
}

std::vector<InvolutionInfo> classify_involutions(const AutGroup& A) {
    std::vector<InvolutionInfo> out;
    for (const Perm& x : A.involutions())
        out.push_back({x, A.involution_class(x), A.centralizer(x)});

    // The label must be a conjugacy invariant.
    for (const auto& info : out) {
        for (const Perm& y : A.conjugacy_class(info.x)) {
            if (A.involution_class(y) != info.cls)
                throw std::logic_error("classify_involutions: label not constant on class");
        }
    }
    return out;
}

}  // namespace icosa
