#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "torslat/lattice.hpp"

namespace torslat {

struct NotExactlyRealizableError : Error {
    NotExactlyRealizableError(const std::string& msg, std::vector<int> spilled_covers)
        : Error(msg), spilled(std::move(spilled_covers)) {}
    std::vector<int> spilled;  // contracted covers whose label was supposed to survive
};

struct CrossValidationError : Error {
    CrossValidationError(const std::string& msg, std::string diff_json)
        : Error(msg), diff(std::move(diff_json)) {}
    std::string diff;  // machine-readable description of the mismatch
};

/// A lattice congruence, stored as the class map plus the set of contracted
/// Hasse arrows (which determines the congruence on a finite lattice).
/// Class representatives are the class minima.
class Congruence {
public:
    Congruence(const FiniteLattice& L, std::vector<int> class_min, std::vector<int> class_max,
               Bitset contracted, int num_classes)
        : L_(&L),
          pi_down_(std::move(class_min)),
          pi_up_(std::move(class_max)),
          contracted_(std::move(contracted)),
          num_classes_(num_classes) {}

    const FiniteLattice& lattice() const { return *L_; }
    bool same(Element x, Element y) const { return pi_down_[x] == pi_down_[y]; }
    Element pi_down(Element x) const { return pi_down_[x]; }
    Element pi_up(Element x) const { return pi_up_[x]; }
    const Bitset& contracted() const { return contracted_; }
    int num_classes() const { return num_classes_; }
    bool is_trivial() const { return num_classes_ == L_->size(); }
    bool is_full() const { return num_classes_ == 1; }

    /// Refinement comparison: finite congruences are ordered by containment
    /// of their contracted cover sets.
    bool refines(const Congruence& o) const { return contracted_.subset_of(o.contracted()); }

    std::vector<std::vector<Element>> classes() const;

private:
    const FiniteLattice* L_;
    std::vector<int> pi_down_, pi_up_;
    Bitset contracted_;
    int num_classes_;
};

/// con(S): the smallest congruence identifying every seed pair. Seeds are
/// usually cover pairs but arbitrary pairs are allowed.
Congruence congruence_closure(const FiniteLattice& L, std::span<const std::pair<Element, Element>> seeds);
Congruence congruence_closure(const FiniteLattice& L,
                              std::initializer_list<std::pair<Element, Element>> seeds);

/// Reconstitute the congruence generated by a forcing-closed cover set.
Congruence congruence_from_contracted(const FiniteLattice& L, const Bitset& contracted_covers);

/// Congruence from an explicit partition (class id per element); validates.
Congruence congruence_from_partition(const FiniteLattice& L, const std::vector<int>& class_id);

struct CompatibilityWitness {
    Element x, y, z;
    bool join_side;
};
/// Meet/join compatibility validator for an arbitrary partition.
std::optional<CompatibilityWitness> congruence_witness(const FiniteLattice& L,
                                                       const std::vector<int>& class_id);
inline bool is_congruence(const FiniteLattice& L, const std::vector<int>& class_id) {
    return !congruence_witness(L, class_id).has_value();
}

/// The forcing preorder on Hasse arrows: q forces q' when every congruence
/// contracting q contracts q'. Computed from principal congruences.
struct ForcingPreorder {
    std::vector<Bitset> forced;      // forced[q] = contracted(con(q)), a cover set
    std::vector<int> class_of;       // forcing-equivalence class per cover
    int num_classes = 0;

    bool forces(int q, int q2) const { return forced[q].test(q2); }
    bool equivalent(int q, int q2) const { return class_of[q] == class_of[q2]; }
    /// Strict order on forcing classes: a > b when class a forces class b.
    bool class_forces(int ca, int cb, const std::vector<int>& rep_cover) const {
        return forced[rep_cover[ca]].test(rep_cover[cb]);
    }
    std::vector<int> class_reps() const;
};

ForcingPreorder forcing(const FiniteLattice& L);
/// Same preorder computed locally from polygons (valid on polygonal lattices).
ForcingPreorder polygon_forcing(const FiniteLattice& L);

struct QuotientLattice {
    FiniteLattice lattice;          // on class minima, in a deterministic order
    std::vector<int> class_index;   // element -> quotient element index
    std::vector<Element> section;   // quotient index -> class minimum in L
    std::vector<Element> pi_down;   // element -> class minimum
    std::vector<Element> pi_up;     // element -> class maximum
};
QuotientLattice quotient(const FiniteLattice& L, const Congruence& theta);

/// All congruences of L. Uses forcing-ideal enumeration when the lattice is
/// congruence uniform and the join-closure of principal congruences
/// otherwise; both paths return each congruence exactly once.
std::vector<Congruence> enumerate_congruences(const FiniteLattice& L, std::size_t limit = 1u << 20);

struct UniformityReport {
    bool uniform;
    bool semidistributive;
    bool ji_injective, mi_injective;
    std::vector<std::pair<Element, Element>> ji_collisions, mi_collisions;
};
UniformityReport is_congruence_uniform(const FiniteLattice& L);

struct AlgebraicQuotientResult {
    Congruence congruence;
    QuotientLattice quot;
    LabelledHasse labelled_quotient;  // labels transported onto surviving arrows
};
/// Contract exactly the arrows whose label is not in the surviving set.
/// Throws NotExactlyRealizableError when forcing spills onto a surviving
/// label (the surviving set is not closed for this labelling).
AlgebraicQuotientResult algebraic_quotient(const LabelledHasse& lh,
                                           const std::set<std::string>& surviving_labels);

struct LabelConsistencyReport {
    bool consistent;
    int witness_q = -1, witness_q2 = -1;  // covers separating the two partitions
};
/// Checks that forcing classes of arrows coincide with the label partition.
LabelConsistencyReport label_forcing_consistency(const LabelledHasse& lh);

struct BoundaryLabelReport {
    std::vector<int> bottom_labels, top_labels;  // label ids, with multiplicity
    bool equal_as_sets;
    bool all_maximal;  // maximal in the forcing order on labels
};
BoundaryLabelReport boundary_labels(const LabelledHasse& lh);

/// Forcing order pushed onto labels; entry (a,b) true when label a forces b.
std::vector<Bitset> label_forcing_order(const LabelledHasse& lh, const ForcingPreorder& fp);

}  // namespace torslat
