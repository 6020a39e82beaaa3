#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icosa/perm.hpp"

namespace icosa {

// Conjugacy type of an involution inside A = C2 x A5.
enum class InvolutionClass { A,   // lies in the A5 factor (conjugate to generator a)
                             D,   // the central element d
                             AD };  // product of d with an A5 involution

const char* to_string(InvolutionClass c);

// The combinatorial automorphism group of the icosahedron, materialized as
// a sorted table of all 120 permutations. Immutable after construction.
class AutGroup {
  public:
    AutGroup();

    const std::vector<Perm>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    const Perm& a() const { return a_; }
    const Perm& b() const { return b_; }
    const Perm& c() const { return c_; }
    const Perm& d() const { return d_; }
    Perm identity() const { return Perm(); }

    bool contains(const Perm& p) const;
    int index_of(const Perm& p) const;  // -1 if absent

    // {id, d}
    std::vector<Perm> center() const;

    // Membership in the unique index-2 subgroup (the A5 factor).
    bool in_a5(const Perm& p) const;

    std::vector<Perm> involutions() const;
    InvolutionClass involution_class(const Perm& x) const;

    std::vector<Perm> centralizer(const Perm& x) const;
    std::vector<Perm> normalizer(const std::vector<Perm>& subgroup) const;
    std::vector<Perm> conjugacy_class(const Perm& x) const;

    // Closure of the given elements under multiplication.
    std::vector<Perm> generate(const std::vector<Perm>& gens) const;

    // Greedy minimal-ish generating set for a subgroup given as element list.
    std::vector<Perm> generating_set(const std::vector<Perm>& subgroup) const;

    // Structure name of a subgroup ("C2", "C2^2", "D10", "C2xD10", ...),
    // decided from order, abelianness and the element-order multiset.
    std::string subgroup_name(const std::vector<Perm>& subgroup) const;

    bool contains_d(const std::vector<Perm>& subgroup) const;
    bool subset_of_a5(const std::vector<Perm>& subgroup) const;

    // One line of cycle notation per element, in table order.
    std::string dump_table() const;

  private:
    std::vector<Perm> elements_;
    std::vector<bool> a5_flag_;  // aligned with elements_
    Perm a_, b_, c_, d_;
};

// Classification record for one involution (see AutGroup::involution_class).
struct InvolutionInfo {
    Perm x;
    InvolutionClass cls;
    std::vector<Perm> centralizer;
};

// Labels every involution of A and validates that the labels are constant on
// conjugacy classes. Expected split: 15 of class A, 15 of class AD, 1 central.
std::vector<InvolutionInfo> classify_involutions(const AutGroup& A);

}  // namespace icosa
